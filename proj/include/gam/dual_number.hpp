#pragma once

namespace gam {

// a + eps b with eps^2 = 0.
struct DualNumber {
    double real = 0.0;
    double dual = 0.0;

    constexpr DualNumber operator+(const DualNumber& o) const { return {real + o.real, dual + o.dual}; }
    constexpr DualNumber operator-(const DualNumber& o) const { return {real - o.real, dual - o.dual}; }
    constexpr DualNumber operator*(const DualNumber& o) const {
        return {real * o.real, real * o.dual + o.real * dual};
    }
    constexpr DualNumber conjugate() const { return {real, -dual}; }
    constexpr bool operator==(const DualNumber&) const = default;
};

// a^-1 (1 - eps b a^-1). Throws std::domain_error when real == 0
// (eps b has no inverse).
DualNumber inverse(const DualNumber& d);

// First-order Taylor rule f(a + eps b) = f(a) + eps b f'(a) with f = sqrt.
// Throws std::domain_error when real <= 0.
DualNumber sqrt(const DualNumber& d);

}  // namespace gam
