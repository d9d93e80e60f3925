#include "gam/motion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gam {

SyntheticMotion::SyntheticMotion(std::uint64_t seed, double duration, const MotionModel& model) : model_(model) {
    std::mt19937_64 gen(seed);
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };

    for (auto& axis : waves_) {
        for (auto& w : axis) {
            w.amplitude = uniform(0.2, 1.0) * model.max_amplitude / 3.0;
            w.frequency = uniform(0.1, model.max_frequency);
            w.phase = uniform(0.0, 2.0 * kPi);
        }
    }

    const double max_step = model.max_angular_velocity * model.waypoint_interval / 1.5;
    const auto count = static_cast<std::size_t>(std::ceil(std::max(duration, 0.0) / model.waypoint_interval)) + 2;
    auto draw = [&] {
        const EulerAngles& s = model.waypoint_spread;
        const double k = model.motion_scale;
        return euler_to_quat({model.base_orientation.theta_x + k * uniform(-s.theta_x, s.theta_x),
                              model.base_orientation.theta_y + k * uniform(-s.theta_y, s.theta_y),
                              model.base_orientation.theta_z + k * uniform(-s.theta_z, s.theta_z)});
    };
    waypoints_.push_back(draw());
    while (waypoints_.size() < count) {
        Quaternion next = draw();
        for (int attempt = 0; attempt < 64 && rad2deg(rotation_angle_between(waypoints_.back(), next)) > max_step;
             ++attempt) {
            next = draw();
        }
        const double angle = rad2deg(rotation_angle_between(waypoints_.back(), next));
        if (angle > max_step) {
            next = slerp(waypoints_.back(), next, max_step / angle);
        }
        waypoints_.push_back(next);
    }
}

Pose SyntheticMotion::at(double t) const {
    Vec3 p = model_.base_position;
    double* axes[3] = {&p.x, &p.y, &p.z};
    for (std::size_t i = 0; i < 3; ++i) {
        for (const Wave& w : waves_[i]) {
            *axes[i] += model_.motion_scale * w.amplitude * std::sin(2.0 * kPi * w.frequency * t + w.phase);
        }
    }

    const double s = std::max(t, 0.0) / model_.waypoint_interval;
    const auto seg = std::min(static_cast<std::size_t>(s), waypoints_.size() - 2);
    const double u = std::min(s - static_cast<double>(seg), 1.0);
    const double eased = u * u * (3.0 - 2.0 * u);
    return {p, slerp(waypoints_[seg], waypoints_[seg + 1], eased)};
}

double SyntheticMotion::peak_angular_velocity() const {
    double worst = 0.0;
    for (std::size_t i = 1; i < waypoints_.size(); ++i) {
        worst = std::max(worst, rad2deg(rotation_angle_between(waypoints_[i - 1], waypoints_[i])));
    }
    return 1.5 * worst / model_.waypoint_interval;
}

}  // namespace gam
