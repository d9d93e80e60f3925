// Measures how far motor LERP strays from motor SLERP and prints the worst
// ratio against lerp_slerp_reference. The result is stored in calibration.hpp.

#include <cstdio>
#include <random>

#include <CLI11.hpp>

#include "gam/calibration.hpp"
#include "gam/interp.hpp"

using namespace gam;

namespace {

Vec3 unit_vector(std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v{n(gen), n(gen), n(gen)};
    return v / v.norm();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calibrate the motor LERP/SLERP proximity bound"};
    std::uint64_t seed = 7;
    int cases = 20000;
    app.add_option("--seed", seed);
    app.add_option("--cases", cases);
    CLI11_PARSE(app, argc, argv);

    std::mt19937_64 gen(seed);
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };

    double worst = 0.0, worst_abs = 0.0;
    for (int c = 0; c < cases; ++c) {
        const Pose p1{{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)},
                      Quaternion::from_axis_angle(unit_vector(gen), uniform(0, 2 * kPi))};
        const double theta = uniform(0, deg2rad(kLerpSlerpMaxAngle));
        const Vec3 dt = unit_vector(gen) * uniform(0, 1);
        const Pose p2{p1.translation + dt, p1.rotation * Quaternion::from_axis_angle(unit_vector(gen), theta)};
        const double reference = lerp_slerp_reference(theta, dt.norm());
        for (PipelineKind kind : {PipelineKind::MotorPga, PipelineKind::MotorCga}) {
            for (int i = 1; i <= 20; ++i) {
                const double a = i / 21.0;
                const Pose l = interpolate_poses(p1, p2, a, kind, MotorBlend::Lerp);
                const Pose s = interpolate_poses(p1, p2, a, kind, MotorBlend::Slerp);
                for (int j = 0; j < 9; ++j) {
                    const Vec3 q = j == 0 ? Vec3{} : unit_vector(gen) * uniform(0, 1);
                    const double e = distance(l.apply(q), s.apply(q));
                    worst_abs = std::max(worst_abs, e);
                    if (reference > 0) worst = std::max(worst, e / reference);
                }
            }
        }
    }
    std::printf("worst ratio %.6f (stored scale %.3f)\nworst deviation %.6e m\n", worst, kLerpSlerpScale, worst_abs);
    return worst <= kLerpSlerpScale ? 0 : 1;
}
