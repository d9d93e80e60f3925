#include "gam/interp.hpp"

#include <stdexcept>

#include "gam/dual_quaternion.hpp"
#include "gam/motor.hpp"

namespace gam {

std::string_view pipeline_name(PipelineKind kind) {
    switch (kind) {
        case PipelineKind::SoA: return "soa";
        case PipelineKind::DualQuaternion: return "dq";
        case PipelineKind::MotorPga: return "pga";
        case PipelineKind::MotorCga: return "cga";
    }
    return "?";
}

std::string_view pipeline_label(PipelineKind kind) {
    switch (kind) {
        case PipelineKind::SoA: return "Linear Algebra";
        case PipelineKind::DualQuaternion: return "Dual Quaternions";
        case PipelineKind::MotorPga: return "3D PGA";
        case PipelineKind::MotorCga: return "3D CGA";
    }
    return "?";
}

std::optional<PipelineKind> parse_pipeline(std::string_view name) {
    for (PipelineKind k : kAllPipelines) {
        if (name == pipeline_name(k)) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

template <class Algebra>
Pose blend_motors(const Pose& p1, const Pose& p2, double a, MotorBlend blend) {
    const Motor<Algebra> m1 = motor_from_pose<Algebra>(p1);
    const Motor<Algebra> m2 = motor_from_pose<Algebra>(p2);
    const Motor<Algebra> m = blend == MotorBlend::Lerp ? motor_lerp(m1, m2, a) : motor_slerp(m1, m2, a);
    return to_pose(m);
}

}  // namespace

Pose interpolate_poses(const Pose& p1, const Pose& p2, double a, PipelineKind kind, MotorBlend blend) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw std::invalid_argument("interpolation parameter outside [0, 1]");
    }
    if (a == 0.0) return p1;
    if (a == 1.0) return p2;

    switch (kind) {
        case PipelineKind::SoA:
            return {lerp(p1.translation, p2.translation, a), slerp(p1.rotation, p2.rotation, a)};
        case PipelineKind::DualQuaternion:
            return dq_to_pose(sclerp(dq_from_pose(p1), dq_from_pose(p2), a));
        case PipelineKind::MotorPga:
            return blend_motors<PgaAlgebra>(p1, p2, a, blend);
        case PipelineKind::MotorCga:
            return blend_motors<CgaAlgebra>(p1, p2, a, blend);
    }
    throw std::invalid_argument("unknown pipeline");
}

Pose interpolate_pair(const Keyframe& k1, const Keyframe& k2, double a, PipelineKind kind, MotorBlend blend) {
    if (k1.entity != k2.entity) {
        throw std::invalid_argument("keyframes belong to different entities");
    }
    if (!(k1.timestamp < k2.timestamp)) {
        throw std::invalid_argument("keyframe timestamps must increase");
    }
    return interpolate_poses(k1.pose, k2.pose, a, kind, blend);
}

std::vector<Keyframe> generate_inbetweens(const Keyframe& k1, const Keyframe& k2, int n, PipelineKind kind,
                                          MotorBlend blend) {
    std::vector<Keyframe> out;
    if (n <= 0) {
        return out;
    }
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double a = static_cast<double>(i) / (n + 1);
        out.push_back({k1.timestamp + a * (k2.timestamp - k1.timestamp), k1.entity,
                       interpolate_pair(k1, k2, a, kind, blend)});
    }
    return out;
}

}  // namespace gam
