#pragma once

#include <optional>

#include "gam/vec3.hpp"

namespace gam {

// |q|^2 must lie within this distance of 1 for q to count as a unit quaternion.
inline constexpr double kUnitTolerance = 1e-9;
// External input (files, wire data) is accepted and renormalized within this band.
inline constexpr double kInputTolerance = 1e-6;

// q = w + x i + y j + z k
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion pure(const Vec3& v) { return {0.0, v.x, v.y, v.z}; }
    // Rotation by `angle` radians about `axis` (normalized internally).
    static Quaternion from_axis_angle(const Vec3& axis, double angle);

    constexpr Vec3 vec() const { return {x, y, z}; }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double k) const { return {w * k, x * k, y * k, z * k}; }
    constexpr bool operator==(const Quaternion&) const = default;

    // Hamilton product.
    constexpr Quaternion operator*(const Quaternion& p) const {
        return {w * p.w - x * p.x - y * p.y - z * p.z,
                w * p.x + x * p.w + y * p.z - z * p.y,
                w * p.y - x * p.z + y * p.w + z * p.x,
                w * p.z + x * p.y - y * p.x + z * p.w};
    }

    constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
    constexpr double dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
    constexpr double squared_norm() const { return dot(*this); }
    double norm() const;

    // Empty when the quaternion has zero norm.
    std::optional<Quaternion> inverse() const;
    // Throws std::domain_error on a zero quaternion.
    Quaternion normalized() const;

    bool is_unit(double tol = kUnitTolerance) const;
    constexpr bool is_pure() const { return w == 0.0; }
};

constexpr Quaternion operator*(double k, const Quaternion& q) { return q * k; }

struct ConjugateNormInverse {
    Quaternion conjugate;
    double norm = 0.0;
    std::optional<Quaternion> inverse;
};

ConjugateNormInverse conjugate_norm_inverse(const Quaternion& q);

// Vector part of q (0,p) q*. Throws std::domain_error if q is not unit.
Vec3 rotate_point(const Quaternion& q, const Vec3& point);

// q^a for a unit quaternion: rotation by a times the angle of q about the same axis.
Quaternion unit_power(const Quaternion& q, double a);

// Shortest-path geodesic blend q1 (q1^-1 q2)^a; q2 is negated first when q1.q2 < 0.
Quaternion slerp(const Quaternion& q1, const Quaternion& q2, double a);

// Geodesic angle in [0, pi] between the rotations encoded by two unit quaternions.
double rotation_angle_between(const Quaternion& a, const Quaternion& b);

// Rotation angle in [0, 2pi] and unit axis (x axis when the angle is zero).
void to_axis_angle(const Quaternion& q, Vec3& axis, double& angle);

}  // namespace gam
