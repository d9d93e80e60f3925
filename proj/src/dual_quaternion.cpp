#include "gam/dual_quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace gam {

DualNumber inverse(const DualNumber& d) {
    if (d.real == 0.0) {
        throw std::domain_error("dual number with zero real part has no inverse");
    }
    const double ai = 1.0 / d.real;
    return {ai, -d.dual * ai * ai};
}

DualNumber sqrt(const DualNumber& d) {
    if (!(d.real > 0.0)) {
        throw std::domain_error("dual square root needs a positive real part");
    }
    const double r = std::sqrt(d.real);
    return {r, d.dual / (2.0 * r)};
}

DualQuaternion conjugate(const DualQuaternion& d, DqConjugate kind) {
    switch (kind) {
        case DqConjugate::Star:
            return {d.real.conjugate(), d.dual.conjugate()};
        case DqConjugate::Bar:
            return {d.real, -d.dual};
        case DqConjugate::BarStar:
            return {d.real.conjugate(), -d.dual.conjugate()};
    }
    return d;
}

double inner(const Quaternion& a, const Quaternion& b) {
    return (a * b.conjugate() + a.conjugate() * b).w * 0.5;
}

DualNumber norm(const DualQuaternion& d) {
    if (d.real.squared_norm() == 0.0) {
        throw std::domain_error("dual quaternion norm needs a nonzero real part");
    }
    // D D* = |p|^2 + 2 eps <p,q>.
    return sqrt(DualNumber{d.real.squared_norm(), 2.0 * inner(d.real, d.dual)});
}

bool is_unit(const DualQuaternion& d, double tol) {
    return std::abs(d.real.norm() - 1.0) <= tol && std::abs(inner(d.real, d.dual)) <= tol;
}

DualQuaternion normalized(const DualQuaternion& d) {
    return d * inverse(norm(d));
}

DualQuaternion dq_from_pose(const Pose& pose) {
    const Quaternion r = pose.rotation;
    return {r, Quaternion::pure(pose.translation) * r * 0.5};
}

Vec3 translation_dual_times_conj_real(const DualQuaternion& d) {
    return (d.dual * d.real.conjugate() * 2.0).vec();
}

Vec3 translation_real_times_conj_dual(const DualQuaternion& d) {
    return (d.real * d.dual.conjugate() * 2.0).vec();
}

Pose dq_to_pose(const DualQuaternion& d) {
    if (!is_unit(d, kInputTolerance)) {
        throw std::domain_error("dq_to_pose needs a unit dual quaternion");
    }
    const DualQuaternion u = normalized(d);
    return {translation_dual_times_conj_real(u), u.real};
}

DualQuaternion sandwich_point(const DualQuaternion& d, const Vec3& point) {
    const DualQuaternion v{Quaternion::identity(), Quaternion::pure(point)};
    return d * v * conjugate(d, DqConjugate::BarStar);
}

Vec3 dq_apply_point(const DualQuaternion& d, const Vec3& point) {
    if (!is_unit(d)) {
        throw std::domain_error("dq_apply_point needs a unit dual quaternion");
    }
    const DualQuaternion out = sandwich_point(d, point);
    const Quaternion& r = out.real;
    if (std::abs(r.w - 1.0) > kUnitTolerance || std::abs(r.x) > kUnitTolerance || std::abs(r.y) > kUnitTolerance ||
        std::abs(r.z) > kUnitTolerance || std::abs(out.dual.w) > kUnitTolerance) {
        throw std::domain_error("sandwich product left the point form");
    }
    return out.dual.vec();
}

DualQuaternion unit_power(const DualQuaternion& d, double a) {
    const Quaternion r = d.real;
    const Vec3 t = translation_dual_times_conj_real(d);

    const double s = r.vec().norm();
    const double half = std::atan2(s, r.w);
    const Quaternion ra = gam::unit_power(r, a);

    // Split t along the screw axis. The part along the axis is the pitch
    // displacement and scales linearly. The perpendicular part equals (I - R) p
    // for a point p on the axis; for R^a it becomes
    //   sin(a half)/sin(half) * rot_axis((a - 1) half) * t_perp,
    // which tends to a * t_perp as the angle vanishes.
    Vec3 ta = t * a;
    if (s > 1e-12) {
        const Vec3 axis = r.vec() / s;
        const Vec3 t_par = axis * axis.dot(t);
        const Vec3 t_perp = t - t_par;
        const double k = std::sin(a * half) / std::sin(half);
        const double phi = (a - 1.0) * half;
        const Vec3 turned = t_perp * std::cos(phi) + axis.cross(t_perp) * std::sin(phi);
        ta = t_par * a + turned * k;
    }
    return {ra, Quaternion::pure(ta) * ra * 0.5};
}

DualQuaternion sclerp(const DualQuaternion& d1, const DualQuaternion& d2, double a) {
    const DualQuaternion target = d1.real.dot(d2.real) < 0.0 ? -d2 : d2;
    const DualQuaternion rel = conjugate(d1, DqConjugate::Star) * target;
    return d1 * unit_power(rel, a);
}

}  // namespace gam
