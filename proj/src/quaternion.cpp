#include "gam/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gam {

Quaternion Quaternion::from_axis_angle(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (n == 0.0) {
        return identity();
    }
    const double s = std::sin(0.5 * angle) / n;
    return {std::cos(0.5 * angle), axis.x * s, axis.y * s, axis.z * s};
}

double Quaternion::norm() const { return std::sqrt(squared_norm()); }

std::optional<Quaternion> Quaternion::inverse() const {
    const double n2 = squared_norm();
    if (n2 == 0.0) {
        return std::nullopt;
    }
    return conjugate() * (1.0 / n2);
}

Quaternion Quaternion::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw std::domain_error("cannot normalize a zero quaternion");
    }
    return *this * (1.0 / n);
}

bool Quaternion::is_unit(double tol) const { return std::abs(squared_norm() - 1.0) <= tol; }

ConjugateNormInverse conjugate_norm_inverse(const Quaternion& q) {
    return {q.conjugate(), q.norm(), q.inverse()};
}

Vec3 rotate_point(const Quaternion& q, const Vec3& point) {
    if (!q.is_unit()) {
        throw std::domain_error("rotate_point requires a unit quaternion");
    }
    return (q * Quaternion::pure(point) * q.conjugate()).vec();
}

Quaternion unit_power(const Quaternion& q, double a) {
    const double s = q.vec().norm();
    const double half = std::atan2(s, q.w);
    // sin(a*half)/s -> a/w as the vector part vanishes (w -> 1 on the short arc).
    const double k = s > 1e-12 ? std::sin(a * half) / s : a / q.w;
    return {std::cos(a * half), k * q.x, k * q.y, k * q.z};
}

Quaternion slerp(const Quaternion& q1, const Quaternion& q2, double a) {
    const Quaternion target = q1.dot(q2) < 0.0 ? -q2 : q2;
    const Quaternion rel = q1.conjugate() * target;
    return q1 * unit_power(rel, a);
}

double rotation_angle_between(const Quaternion& a, const Quaternion& b) {
    // Chord form: exact zero for equal inputs and well conditioned for small angles.
    const Quaternion c = a.dot(b) < 0.0 ? -b : b;
    return 4.0 * std::atan2((a - c).norm(), (a + c).norm());
}

void to_axis_angle(const Quaternion& q, Vec3& axis, double& angle) {
    const double s = q.vec().norm();
    angle = 2.0 * std::atan2(s, q.w);
    axis = s > 0.0 ? q.vec() / s : Vec3{1.0, 0.0, 0.0};
}

}  // namespace gam
