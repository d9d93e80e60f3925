#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gam/pose.hpp"

namespace gam {

struct Keyframe {
    double timestamp = 0.0;  // seconds
    std::string entity;
    Pose pose;
};

enum class PipelineKind { SoA, DualQuaternion, MotorPga, MotorCga };

inline constexpr PipelineKind kAllPipelines[] = {PipelineKind::SoA, PipelineKind::DualQuaternion,
                                                 PipelineKind::MotorPga, PipelineKind::MotorCga};

// Blend used by the motor pipelines. LERP is the default.
enum class MotorBlend { Lerp, Slerp };

// Short machine names: soa, dq, pga, cga.
std::string_view pipeline_name(PipelineKind kind);
// Row labels used in reports: "Linear Algebra", "Dual Quaternions", "3D PGA", "3D CGA".
std::string_view pipeline_label(PipelineKind kind);
std::optional<PipelineKind> parse_pipeline(std::string_view name);

// Blend two poses with the chosen pipeline. a = 0 and a = 1 return the inputs.
// Throws std::invalid_argument when a is outside [0, 1].
Pose interpolate_poses(const Pose& p1, const Pose& p2, double a, PipelineKind kind,
                       MotorBlend blend = MotorBlend::Lerp);

// Throws std::invalid_argument for a outside [0, 1], mismatched entities or
// non-increasing timestamps.
Pose interpolate_pair(const Keyframe& k1, const Keyframe& k2, double a, PipelineKind kind,
                      MotorBlend blend = MotorBlend::Lerp);

// n keyframes at a = i / (n + 1), i = 1..n, with linearly interpolated timestamps.
std::vector<Keyframe> generate_inbetweens(const Keyframe& k1, const Keyframe& k2, int n, PipelineKind kind,
                                          MotorBlend blend = MotorBlend::Lerp);

}  // namespace gam
