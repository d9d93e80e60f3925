#pragma once

#include <array>
#include <bit>
#include <cstddef>

// Basis blades as bitmasks over the algebra's generators (bit i = generator i),
// always stored in ascending generator order.
namespace gam::ga {

struct BladeProduct {
    int sign = 0;  // 0 when a degenerate generator squares away
    unsigned mask = 0;
};

// Sign picked up by sorting the concatenated generator word a b.
constexpr int reorder_sign(unsigned a, unsigned b) {
    unsigned swaps = 0;
    for (a >>= 1; a != 0; a >>= 1) {
        swaps += static_cast<unsigned>(std::popcount(a & b));
    }
    return (swaps & 1U) != 0 ? -1 : 1;
}

template <std::size_t N>
constexpr BladeProduct blade_mul(unsigned a, unsigned b, const std::array<int, N>& metric) {
    int sign = reorder_sign(a, b);
    const unsigned common = a & b;
    for (std::size_t i = 0; i < N; ++i) {
        if ((common >> i) & 1U) {
            sign *= metric[i];
        }
    }
    return {sign, a ^ b};
}

constexpr int grade(unsigned mask) { return std::popcount(mask); }

// Sign of the reverse of a grade-k blade: (-1)^(k(k-1)/2).
constexpr int reverse_sign(unsigned mask) {
    const int k = grade(mask);
    return ((k * (k - 1) / 2) % 2) != 0 ? -1 : 1;
}

}  // namespace gam::ga
