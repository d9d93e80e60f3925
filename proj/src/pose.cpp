#include "gam/pose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gam {

Vec3 Pose::apply(const Vec3& p) const { return rotate_point(rotation, p) + translation; }

Pose Pose::compose(const Pose& inner) const {
    return {rotate_point(rotation, inner.translation) + translation, rotation * inner.rotation};
}

Pose Pose::inverse() const {
    const Quaternion inv = rotation.conjugate();
    return {-rotate_point(inv, translation), inv};
}

Pose validated(const Pose& pose) {
    if (!pose.rotation.is_unit(kInputTolerance)) {
        throw std::invalid_argument("pose rotation is not a unit quaternion");
    }
    return {pose.translation, pose.rotation.normalized()};
}

double wrap_degrees(double deg) {
    double r = std::fmod(deg + 180.0, 360.0);
    if (r < 0.0) {
        r += 360.0;
    }
    r -= 180.0;
    // fmod can land exactly on +180 after rounding.
    return r >= 180.0 ? r - 360.0 : r;
}

EulerAngles EulerAngles::canonical() const {
    return {wrap_degrees(theta_x), wrap_degrees(theta_y), wrap_degrees(theta_z)};
}

Quaternion euler_to_quat(const EulerAngles& e) {
    const Quaternion qz = Quaternion::from_axis_angle({0, 0, 1}, deg2rad(e.theta_z));
    const Quaternion qx = Quaternion::from_axis_angle({1, 0, 0}, deg2rad(e.theta_x));
    const Quaternion qy = Quaternion::from_axis_angle({0, 1, 0}, deg2rad(e.theta_y));
    return qz * qx * qy;
}

EulerAngles quat_to_euler(const Quaternion& q_in) {
    const Quaternion q = q_in.normalized();
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    // Entries of the rotation matrix that the Z-X-Y decomposition needs.
    const double r00 = 1 - 2 * (y * y + z * z);
    const double r01 = 2 * (x * y - w * z);
    const double r10 = 2 * (x * y + w * z);
    const double r11 = 1 - 2 * (x * x + z * z);
    const double r20 = 2 * (x * z - w * y);
    const double r21 = 2 * (y * z + w * x);
    const double r22 = 1 - 2 * (x * x + y * y);

    const double sx = std::clamp(r21, -1.0, 1.0);
    const double theta_x = std::asin(sx);
    EulerAngles e;
    e.theta_x = rad2deg(theta_x);
    if (std::abs(e.theta_x) >= 89.999) {
        e.theta_y = 0.0;
        e.theta_z = rad2deg(std::atan2(r10, r00));
    } else {
        e.theta_y = rad2deg(std::atan2(-r20, r22));
        e.theta_z = rad2deg(std::atan2(-r01, r11));
    }
    return e.canonical();
}

}  // namespace gam
