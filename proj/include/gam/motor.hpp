#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "gam/blade.hpp"
#include "gam/pose.hpp"

namespace gam {

// 3D PGA. Generators e0 (bit 0, e0^2 = 0), e1, e2, e3.
struct PgaAlgebra {
    static constexpr std::size_t kGenerators = 4;
    static constexpr std::array<int, kGenerators> metric{0, 1, 1, 1};
    static constexpr unsigned e0 = 0b0001, e1 = 0b0010, e2 = 0b0100, e3 = 0b1000;
    // {1, e01, e02, e03, e12, e13, e23, e0123}
    static constexpr std::array<unsigned, 8> blades{0b0000, e0 | e1, e0 | e2, e0 | e3,
                                                    e1 | e2, e1 | e3, e2 | e3, 0b1111};
};

// 3D CGA over e1..e5 with e1^2 = .. = e4^2 = +1 and e5^2 = -1.
// The slot set is exactly what T R spans for T = 1 - 1/2 t (e4 + e5).
struct CgaAlgebra {
    static constexpr std::size_t kGenerators = 5;
    static constexpr std::array<int, kGenerators> metric{1, 1, 1, 1, -1};
    static constexpr unsigned e1 = 0b00001, e2 = 0b00010, e3 = 0b00100, e4 = 0b01000, e5 = 0b10000;
    // {1, e12, e13, e23, e14, e24, e34, e15, e25, e35, e1234, e1235}
    static constexpr std::array<unsigned, 12> blades{0,       e1 | e2, e1 | e3, e2 | e3,
                                                     e1 | e4, e2 | e4, e3 | e4, e1 | e5,
                                                     e2 | e5, e3 | e5, e1 | e2 | e3 | e4, e1 | e2 | e3 | e5};
};

template <class Algebra>
struct Motor {
    static constexpr std::size_t kSlots = Algebra::blades.size();
    std::array<double, kSlots> c{};

    static constexpr int slot_of(unsigned mask) {
        for (std::size_t i = 0; i < kSlots; ++i) {
            if (Algebra::blades[i] == mask) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }

    static constexpr Motor scalar(double s) {
        Motor m;
        m.c[0] = s;
        return m;
    }

    constexpr double operator[](unsigned mask) const {
        const int i = slot_of(mask);
        return i < 0 ? 0.0 : c[static_cast<std::size_t>(i)];
    }
    constexpr double& at(unsigned mask) {
        const int i = slot_of(mask);
        if (i < 0) {
            throw std::out_of_range("blade is not a motor slot");
        }
        return c[static_cast<std::size_t>(i)];
    }

    constexpr Motor operator+(const Motor& o) const {
        Motor r;
        for (std::size_t i = 0; i < kSlots; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    constexpr Motor operator*(double k) const {
        Motor r;
        for (std::size_t i = 0; i < kSlots; ++i) r.c[i] = c[i] * k;
        return r;
    }
    constexpr Motor operator-() const { return *this * -1.0; }
    constexpr bool operator==(const Motor&) const = default;

    double coefficient_norm() const {
        double s = 0.0;
        for (double v : c) s += v * v;
        return std::sqrt(s);
    }
};

using PgaMotor = Motor<PgaAlgebra>;
using CgaMotor = Motor<CgaAlgebra>;

namespace detail {

template <class Algebra>
struct ProductTable {
    static constexpr std::size_t kSlots = Algebra::blades.size();
    struct Entry {
        int sign = 0;
        int slot = -1;  // -1: the product blade lies outside the motor slots
        unsigned mask = 0;
    };
    std::array<std::array<Entry, kSlots>, kSlots> entries{};
};

template <class Algebra>
constexpr ProductTable<Algebra> make_product_table() {
    ProductTable<Algebra> t;
    for (std::size_t i = 0; i < t.kSlots; ++i) {
        for (std::size_t j = 0; j < t.kSlots; ++j) {
            const auto p = ga::blade_mul(Algebra::blades[i], Algebra::blades[j], Algebra::metric);
            t.entries[i][j] = {p.sign, Motor<Algebra>::slot_of(p.mask), p.mask};
        }
    }
    return t;
}

template <class Algebra>
inline constexpr ProductTable<Algebra> kProductTable = make_product_table<Algebra>();

}  // namespace detail

// Absolute residue (scaled by the operand norms) tolerated on blades outside the slot set.
inline constexpr double kMotorResidueTolerance = 1e-12;

// Geometric product restricted to the motor slots. Throws std::domain_error if
// a blade outside the slot set receives a coefficient above tolerance, which
// means an operand was not a motor.
template <class Algebra>
Motor<Algebra> motor_mul(const Motor<Algebra>& a, const Motor<Algebra>& b) {
    constexpr std::size_t kSlots = Motor<Algebra>::kSlots;
    constexpr std::size_t kDense = std::size_t{1} << Algebra::kGenerators;
    const auto& table = detail::kProductTable<Algebra>.entries;
    Motor<Algebra> r;
    std::array<double, kDense> residue{};
    for (std::size_t i = 0; i < kSlots; ++i) {
        if (a.c[i] == 0.0) continue;
        for (std::size_t j = 0; j < kSlots; ++j) {
            const auto& e = table[i][j];
            if (e.sign == 0 || b.c[j] == 0.0) continue;
            const double v = e.sign * a.c[i] * b.c[j];
            if (e.slot >= 0) {
                r.c[static_cast<std::size_t>(e.slot)] += v;
            } else {
                residue[e.mask] += v;
            }
        }
    }
    const double limit = kMotorResidueTolerance * std::max(1.0, a.coefficient_norm() * b.coefficient_norm());
    for (double v : residue) {
        if (std::abs(v) > limit) {
            throw std::domain_error("motor product left the motor blade set");
        }
    }
    return r;
}

template <class Algebra>
Motor<Algebra> reverse(const Motor<Algebra>& m) {
    Motor<Algebra> r;
    for (std::size_t i = 0; i < m.kSlots; ++i) {
        r.c[i] = ga::reverse_sign(Algebra::blades[i]) * m.c[i];
    }
    return r;
}

// Rotor slots {1, e12, e13, e23} of either algebra, as (a, b, c, d).
struct RotorCoefficients {
    double a = 1.0, b = 0.0, c = 0.0, d = 0.0;
};

// q = a - d i + c j - b k and back.
Quaternion rotor_to_quat(const RotorCoefficients& r);
RotorCoefficients quat_to_rotor(const Quaternion& q);

template <class Algebra>
constexpr unsigned bivector_mask(unsigned i, unsigned j) {
    // i, j are 1-based Euclidean generator indices.
    if constexpr (Algebra::kGenerators == 4) {
        return (1U << i) | (1U << j);
    } else {
        return (1U << (i - 1)) | (1U << (j - 1));
    }
}

template <class Algebra>
RotorCoefficients rotor_part(const Motor<Algebra>& m) {
    return {m[0], m[bivector_mask<Algebra>(1, 2)], m[bivector_mask<Algebra>(1, 3)], m[bivector_mask<Algebra>(2, 3)]};
}

template <class Algebra>
Motor<Algebra> rotor_motor(const RotorCoefficients& r) {
    Motor<Algebra> m;
    m.at(0) = r.a;
    m.at(bivector_mask<Algebra>(1, 2)) = r.b;
    m.at(bivector_mask<Algebra>(1, 3)) = r.c;
    m.at(bivector_mask<Algebra>(2, 3)) = r.d;
    return m;
}

// Scales the rotor part to unit and removes the grade-4 defect that a linear
// blend introduces, so that M ~M = 1. Idempotent. Throws std::domain_error on a
// zero rotor part.
template <class Algebra>
Motor<Algebra> motor_normalize(const Motor<Algebra>& m) {
    const RotorCoefficients r = rotor_part(m);
    if (r.a * r.a + r.b * r.b + r.c * r.c + r.d * r.d == 0.0) {
        throw std::domain_error("motor has a zero rotor part");
    }
    // M ~M = s + Q with Q of grade 4 and Q^2 = 0, so (s + Q)^(-1/2) = s^(-1/2) (1 - Q / 2s).
    const Motor<Algebra> n = motor_mul(m, reverse(m));
    const double s = n.c[0];
    Motor<Algebra> k;
    k.c[0] = 1.0;
    for (std::size_t i = 0; i < n.kSlots; ++i) {
        if (ga::grade(Algebra::blades[i]) == 4) {
            k.c[i] = -n.c[i] / (2.0 * s);
        }
    }
    return motor_mul(k, m) * (1.0 / std::sqrt(s));
}

// Sign that aligns m2 with m1: rotor parts with a non-negative dot product.
template <class Algebra>
double alignment_sign(const Motor<Algebra>& m1, const Motor<Algebra>& m2) {
    const RotorCoefficients a = rotor_part(m1), b = rotor_part(m2);
    return a.a * b.a + a.b * b.b + a.c * b.c + a.d * b.d < 0.0 ? -1.0 : 1.0;
}

// (1 - a) M1 + a M2 followed by motor_normalize.
template <class Algebra>
Motor<Algebra> motor_lerp(const Motor<Algebra>& m1, const Motor<Algebra>& m2, double a) {
    const Motor<Algebra> target = m2 * alignment_sign(m1, m2);
    return motor_normalize(m1 * (1.0 - a) + target * a);
}

PgaMotor pga_from_pose(const Pose& pose);
Pose pga_to_pose(const PgaMotor& m);
CgaMotor cga_from_pose(const Pose& pose);
Pose cga_to_pose(const CgaMotor& m);

// Pure translator of either algebra.
PgaMotor pga_translator(const Vec3& t);
CgaMotor cga_translator(const Vec3& t);

inline Pose to_pose(const PgaMotor& m) { return pga_to_pose(m); }
inline Pose to_pose(const CgaMotor& m) { return cga_to_pose(m); }
template <class Algebra>
Motor<Algebra> motor_from_pose(const Pose& pose);
template <>
inline PgaMotor motor_from_pose<PgaAlgebra>(const Pose& pose) { return pga_from_pose(pose); }
template <>
inline CgaMotor motor_from_pose<CgaAlgebra>(const Pose& pose) { return cga_from_pose(pose); }

// Geodesic blend M1 (M1^-1 M2)^a, evaluated through the motor / dual quaternion
// isomorphism and screw interpolation.
template <class Algebra>
Motor<Algebra> motor_slerp(const Motor<Algebra>& m1, const Motor<Algebra>& m2, double a);

extern template PgaMotor motor_slerp<PgaAlgebra>(const PgaMotor&, const PgaMotor&, double);
extern template CgaMotor motor_slerp<CgaAlgebra>(const CgaMotor&, const CgaMotor&, double);

}  // namespace gam
