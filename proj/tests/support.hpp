#pragma once

// Test-only helpers: seeded generators and oracles that do not go through the
// library's quaternion or multivector code.

#include <array>
#include <cmath>
#include <random>

#include "gam/pose.hpp"

namespace gam::test {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Rodrigues formula.
inline Mat3 rotation_matrix(Vec3 axis, double angle) {
    axis = axis / axis.norm();
    const double c = std::cos(angle), s = std::sin(angle), C = 1 - c;
    const double x = axis.x, y = axis.y, z = axis.z;
    return {{{c + x * x * C, x * y * C - z * s, x * z * C + y * s},
             {y * x * C + z * s, c + y * y * C, y * z * C - x * s},
             {z * x * C - y * s, z * y * C + x * s, c + z * z * C}}};
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Vec3 apply(const Mat3& m, const Vec3& v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

// Standard unit-quaternion to matrix formula.
inline Mat3 quat_matrix(const Quaternion& q) {
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
    double m = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    Vec3 unit_vector() {
        std::normal_distribution<double> n(0.0, 1.0);
        Vec3 v{n(gen_), n(gen_), n(gen_)};
        return v / v.norm();
    }
    Vec3 vector(double scale) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }

    // Uniformly distributed random rotation (Shoemake).
    Quaternion rotation() {
        const double u1 = uniform(0, 1), u2 = uniform(0, 2 * kPi), u3 = uniform(0, 2 * kPi);
        const double a = std::sqrt(1 - u1), b = std::sqrt(u1);
        return Quaternion{a * std::sin(u2), a * std::cos(u2), b * std::sin(u3), b * std::cos(u3)}.normalized();
    }
    Quaternion quaternion(double scale) {
        return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
    }
    Pose pose(double translation_scale = 2.0) { return {vector(translation_scale), rotation()}; }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline double quat_diff(const Quaternion& a, const Quaternion& b) {
    return std::max({std::abs(a.w - b.w), std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

// Difference between two quaternions as rotations (q and -q are equal).
inline double rotation_diff(const Quaternion& a, const Quaternion& b) {
    return std::min(quat_diff(a, b), quat_diff(a, -b));
}

inline double pose_diff(const Pose& a, const Pose& b) {
    return std::max(distance(a.translation, b.translation), rotation_diff(a.rotation, b.rotation));
}

}  // namespace gam::test
