#pragma once

#include "gam/quaternion.hpp"
#include "gam/vec3.hpp"

namespace gam {

// Rotation followed by translation: p -> rotation * p + translation.
struct Pose {
    Vec3 translation;
    Quaternion rotation = Quaternion::identity();

    static Pose identity() { return {}; }

    Vec3 apply(const Vec3& p) const;
    // (*this) after `inner`: p -> this(inner(p)).
    Pose compose(const Pose& inner) const;
    Pose inverse() const;
};

// Checks rotation against the input tolerance and renormalizes it.
// Throws std::invalid_argument when the rotation is too far from unit.
Pose validated(const Pose& pose);

// Degrees. Intrinsic Z, then X, then Y: R = Rz(z) * Rx(x) * Ry(y).
struct EulerAngles {
    double theta_x = 0.0;
    double theta_y = 0.0;
    double theta_z = 0.0;

    // Each component wrapped into [-180, 180).
    EulerAngles canonical() const;
    Vec3 as_vec() const { return {theta_x, theta_y, theta_z}; }
};

double wrap_degrees(double deg);

Quaternion euler_to_quat(const EulerAngles& e);

// theta_x is returned in [-90, 90]. At gimbal lock (|theta_x| >= 89.999 deg)
// theta_y is pinned to 0 and the whole remaining yaw goes to theta_z.
EulerAngles quat_to_euler(const Quaternion& q);

inline constexpr double kPi = 3.14159265358979323846;
constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace gam
