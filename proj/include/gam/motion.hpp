#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gam/pose.hpp"

namespace gam {

// Parameters of the synthetic hand/head motion used as ground truth.
struct MotionModel {
    Vec3 base_position{0.25, 1.2, 0.35};
    EulerAngles base_orientation{10.0, 0.0, 60.0};  // degrees
    double max_amplitude = 0.3;                      // metres, summed over the sinusoids of one axis
    double max_frequency = 1.5;                      // Hz
    double max_angular_velocity = 120.0;             // degrees per second
    double waypoint_interval = 1.0;                  // seconds between rotation waypoints
    EulerAngles waypoint_spread{25.0, 25.0, 30.0};   // max waypoint offset from the base, degrees
    double motion_scale = 1.0;                       // scales amplitudes and waypoint offsets
};

// Band-limited translation (three sinusoids per axis) and a rotation spline
// through seeded waypoints. Consecutive waypoints are slerped with smoothstep
// easing, so the peak angular speed of a segment is 1.5 * angle / interval.
class SyntheticMotion {
public:
    SyntheticMotion(std::uint64_t seed, double duration, const MotionModel& model = {});

    Pose at(double t) const;
    double peak_angular_velocity() const;  // degrees per second, from the waypoints

    struct Wave {
        double amplitude, frequency, phase;
    };

private:
    MotionModel model_;
    std::array<std::array<Wave, 3>, 3> waves_{};
    std::vector<Quaternion> waypoints_;
};

}  // namespace gam
