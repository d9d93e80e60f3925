#include "gam/motor.hpp"

#include <cmath>
#include <stdexcept>

#include "gam/dual_quaternion.hpp"

namespace gam {

namespace {

// Coefficient of `target` in blade * M.
template <class Algebra>
double left_product_coefficient(unsigned blade, const Motor<Algebra>& m, unsigned target) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.kSlots; ++i) {
        const auto p = ga::blade_mul(blade, Algebra::blades[i], Algebra::metric);
        if (p.sign != 0 && p.mask == target) {
            sum += p.sign * m.c[i];
        }
    }
    return sum;
}

// Coefficient of `target` in M * blade.
template <class Algebra>
double right_product_coefficient(const Motor<Algebra>& m, unsigned blade, unsigned target) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.kSlots; ++i) {
        const auto p = ga::blade_mul(Algebra::blades[i], blade, Algebra::metric);
        if (p.sign != 0 && p.mask == target) {
            sum += p.sign * m.c[i];
        }
    }
    return sum;
}

RotorCoefficients unit_rotor(RotorCoefficients r) {
    const double n = std::sqrt(r.a * r.a + r.b * r.b + r.c * r.c + r.d * r.d);
    if (n == 0.0) {
        throw std::domain_error("motor has a zero rotor part");
    }
    return {r.a / n, r.b / n, r.c / n, r.d / n};
}

RotorCoefficients rotor_inverse(const RotorCoefficients& r) { return {r.a, -r.b, -r.c, -r.d}; }

constexpr double kDecodeTolerance = 1e-9;

}  // namespace

Quaternion rotor_to_quat(const RotorCoefficients& r) { return {r.a, -r.d, r.c, -r.b}; }

RotorCoefficients quat_to_rotor(const Quaternion& q) { return {q.w, -q.z, q.y, -q.x}; }

PgaMotor pga_translator(const Vec3& t) {
    using A = PgaAlgebra;
    PgaMotor m = PgaMotor::scalar(1.0);
    m.at(A::e0 | A::e1) = -0.5 * t.x;
    m.at(A::e0 | A::e2) = -0.5 * t.y;
    m.at(A::e0 | A::e3) = -0.5 * t.z;
    return m;
}

PgaMotor pga_from_pose(const Pose& pose) {
    return motor_mul(pga_translator(pose.translation), rotor_motor<PgaAlgebra>(quat_to_rotor(pose.rotation)));
}

Pose pga_to_pose(const PgaMotor& motor) {
    using A = PgaAlgebra;
    const PgaMotor m = motor_normalize(motor);

    // e0 M = e0 R = a e0 + b e012 + c e013 + d e023, since e0 e0 = 0.
    const RotorCoefficients r = unit_rotor({
        left_product_coefficient(A::e0, m, A::e0),
        left_product_coefficient(A::e0, m, A::e0 | A::e1 | A::e2),
        left_product_coefficient(A::e0, m, A::e0 | A::e1 | A::e3),
        left_product_coefficient(A::e0, m, A::e0 | A::e2 | A::e3),
    });

    // T = M R^-1 = 1 + x e01 + y e02 + z e03, a translation by (-2x, -2y, -2z).
    const PgaMotor t = motor_mul(m, rotor_motor<A>(rotor_inverse(r)));
    if (std::abs(t[0] - 1.0) > kDecodeTolerance || std::abs(t[A::blades[7]]) > kDecodeTolerance) {
        throw std::domain_error("PGA motor does not factor as translator times rotor");
    }
    return {{-2.0 * t[A::e0 | A::e1], -2.0 * t[A::e0 | A::e2], -2.0 * t[A::e0 | A::e3]}, rotor_to_quat(r)};
}

CgaMotor cga_translator(const Vec3& t) {
    using A = CgaAlgebra;
    // 1 - 1/2 (t1 e1 + t2 e2 + t3 e3)(e4 + e5)
    CgaMotor m = CgaMotor::scalar(1.0);
    const double ts[3] = {t.x, t.y, t.z};
    const unsigned es[3] = {A::e1, A::e2, A::e3};
    for (int i = 0; i < 3; ++i) {
        m.at(es[i] | A::e4) = -0.5 * ts[i];
        m.at(es[i] | A::e5) = -0.5 * ts[i];
    }
    return m;
}

CgaMotor cga_from_pose(const Pose& pose) {
    return motor_mul(cga_translator(pose.translation), rotor_motor<CgaAlgebra>(quat_to_rotor(pose.rotation)));
}

Pose cga_to_pose(const CgaMotor& motor) {
    using A = CgaAlgebra;
    const CgaMotor m = motor_normalize(motor);

    // M = R + m where every blade of m carries e4 or e5: keep the rotor blades.
    // Grade-1 blades have no slot in the motor type, so the filter needs no
    // separate check for them.
    const RotorCoefficients r = unit_rotor(rotor_part(m));

    CgaMotor t = motor_mul(m, rotor_motor<A>(rotor_inverse(r)));
    const double tt = motor_mul(t, reverse(t)).c[0];
    if (!(tt > 0.0)) {
        throw std::domain_error("CGA translator has a non-positive norm");
    }
    t = t * (1.0 / std::sqrt(tt));
    if (std::abs(t[0] - 1.0) > kDecodeTolerance) {
        throw std::domain_error("CGA motor does not factor as translator times rotor");
    }

    // T (e5 - e4) = t1 e1 + t2 e2 + t3 e3 + (terms carrying e4 or e5).
    const auto component = [&](unsigned ei) {
        return right_product_coefficient(t, A::e5, ei) - right_product_coefficient(t, A::e4, ei);
    };
    return {{component(A::e1), component(A::e2), component(A::e3)}, rotor_to_quat(r)};
}

template <class Algebra>
Motor<Algebra> motor_slerp(const Motor<Algebra>& m1, const Motor<Algebra>& m2, double a) {
    const DualQuaternion d1 = dq_from_pose(to_pose(m1));
    const DualQuaternion d2 = dq_from_pose(to_pose(m2));
    Motor<Algebra> out = motor_from_pose<Algebra>(dq_to_pose(sclerp(d1, d2, a)));
    // Keep the sign continuous with m1 so blends of blends stay on one sheet.
    return out * alignment_sign(m1, out);
}

template PgaMotor motor_slerp<PgaAlgebra>(const PgaMotor&, const PgaMotor&, double);
template CgaMotor motor_slerp<CgaAlgebra>(const CgaMotor&, const CgaMotor&, double);

}  // namespace gam
