#include <doctest.h>

#include <stdexcept>

#include "gam/calibration.hpp"
#include "gam/interp.hpp"
#include "support.hpp"

using namespace gam;
using gam::test::pose_diff;
using gam::test::Rng;

namespace {

Keyframe key(double t, const Pose& p, const char* entity = "hand") { return {t, entity, p}; }

// Points spread around the entity origin for rigidity checks.
const Vec3 kProbe[] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.3, -0.7, 0.2}, {-0.5, 0.5, 0.5}};

}  // namespace

TEST_CASE("pipeline names round-trip") {
    for (PipelineKind k : kAllPipelines) CHECK(parse_pipeline(pipeline_name(k)) == k);
    CHECK_FALSE(parse_pipeline("nope").has_value());
    CHECK(pipeline_label(PipelineKind::MotorCga) == "3D CGA");
}

TEST_CASE("endpoints are reproduced exactly by every pipeline") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const Pose p1 = rng.pose(), p2 = rng.pose();
        for (PipelineKind k : kAllPipelines) {
            for (MotorBlend b : {MotorBlend::Lerp, MotorBlend::Slerp}) {
                const Pose s = interpolate_pair(key(0, p1), key(1, p2), 0.0, k, b);
                const Pose e = interpolate_pair(key(0, p1), key(1, p2), 1.0, k, b);
                CHECK(s.translation == p1.translation);
                CHECK(s.rotation == p1.rotation);
                CHECK(e.translation == p2.translation);
                CHECK(e.rotation == p2.rotation);
            }
        }
    }
}

TEST_CASE("pure translation gives the same pose in all pipelines") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const Quaternion r = rng.rotation();
        const Pose p1{rng.vector(2), r}, p2{rng.vector(2), r};
        for (int s = 1; s < 10; ++s) {
            const double a = s / 10.0;
            const Vec3 expected = lerp(p1.translation, p2.translation, a);
            for (PipelineKind k : kAllPipelines) {
                const Pose p = interpolate_poses(p1, p2, a, k);
                CHECK(distance(p.translation, expected) < 1e-9);
                CHECK(test::rotation_diff(p.rotation, r) < 1e-9);
            }
        }
    }
}

TEST_CASE("rotation only: SoA, DQ and motor SLERP agree, motor LERP stays within the calibrated bound") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const Vec3 t = rng.vector(2);
        const Quaternion r1 = rng.rotation();
        const double theta = rng.uniform(0, deg2rad(kLerpSlerpMaxAngle));
        const Pose p1{t, r1}, p2{t, r1 * Quaternion::from_axis_angle(rng.unit_vector(), theta)};
        for (int s = 1; s <= 20; ++s) {
            const double a = s / 21.0;
            const Pose ref = interpolate_poses(p1, p2, a, PipelineKind::SoA);
            CHECK(pose_diff(interpolate_poses(p1, p2, a, PipelineKind::DualQuaternion), ref) < 1e-9);
            for (PipelineKind k : {PipelineKind::MotorPga, PipelineKind::MotorCga}) {
                CHECK(pose_diff(interpolate_poses(p1, p2, a, k, MotorBlend::Slerp), ref) < 1e-9);
                const Pose l = interpolate_poses(p1, p2, a, k, MotorBlend::Lerp);
                for (const Vec3& q : kProbe) {
                    const Vec3 qq = q / std::max(1.0, q.norm());
                    CHECK(distance(l.apply(qq), ref.apply(qq)) <= lerp_slerp_bound(theta, 0.0) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("interpolated poses keep rigid bodies rigid") {
    Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        const Pose p1 = rng.pose(), p2 = rng.pose();
        const double a = rng.uniform(0, 1);
        for (PipelineKind k : kAllPipelines) {
            for (MotorBlend b : {MotorBlend::Lerp, MotorBlend::Slerp}) {
                const Pose p = interpolate_poses(p1, p2, a, k, b);
                CHECK(std::abs(p.rotation.norm() - 1.0) < 1e-12);
                for (const Vec3& u : kProbe)
                    for (const Vec3& v : kProbe)
                        CHECK(std::abs(distance(p.apply(u), p.apply(v)) - distance(u, v)) < 1e-9);
            }
        }
    }
}

TEST_CASE("time reversal: (p1, p2, a) equals (p2, p1, 1 - a)") {
    Rng rng(15);
    for (int i = 0; i < 200; ++i) {
        const Pose p1 = rng.pose(), p2 = rng.pose();
        const double a = rng.uniform(0, 1);
        for (PipelineKind k : kAllPipelines) {
            for (MotorBlend b : {MotorBlend::Lerp, MotorBlend::Slerp}) {
                CHECK(pose_diff(interpolate_poses(p1, p2, a, k, b), interpolate_poses(p2, p1, 1 - a, k, b)) < 1e-9);
            }
        }
    }
}

TEST_CASE("inbetweens") {
    Rng rng(16);
    const Keyframe k1 = key(2.0, rng.pose()), k2 = key(2.5, rng.pose());

    SUBCASE("n = 1 is the midpoint") {
        for (PipelineKind k : kAllPipelines) {
            const auto mid = generate_inbetweens(k1, k2, 1, k);
            REQUIRE(mid.size() == 1);
            CHECK(mid[0].timestamp == doctest::Approx(2.25).epsilon(1e-15));
            CHECK(pose_diff(mid[0].pose, interpolate_pair(k1, k2, 0.5, k)) == 0.0);
        }
    }
    SUBCASE("n = 20 with motors, uniform spacing, increasing timestamps") {
        for (PipelineKind k : kAllPipelines) {
            auto frames = generate_inbetweens(k1, k2, 20, k);
            REQUIRE(frames.size() == 20);
            frames.insert(frames.begin(), k1);
            frames.push_back(k2);
            for (std::size_t i = 1; i < frames.size(); ++i) {
                CHECK(frames[i].timestamp > frames[i - 1].timestamp);
                CHECK(frames[i].timestamp - frames[i - 1].timestamp == doctest::Approx(0.5 / 21).epsilon(1e-12));
                CHECK(frames[i].entity == "hand");
            }
            for (int i = 1; i <= 20; ++i)
                CHECK(pose_diff(frames[static_cast<std::size_t>(i)].pose, interpolate_pair(k1, k2, i / 21.0, k)) == 0.0);
        }
    }
    SUBCASE("n <= 0 is empty") {
        CHECK(generate_inbetweens(k1, k2, 0, PipelineKind::SoA).empty());
        CHECK(generate_inbetweens(k1, k2, -3, PipelineKind::SoA).empty());
    }
}

TEST_CASE("error paths") {
    const Pose p;
    CHECK_THROWS_AS(interpolate_pair(key(0, p), key(1, p), -0.01, PipelineKind::SoA), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_pair(key(0, p), key(1, p), 1.01, PipelineKind::DualQuaternion), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_poses(p, p, std::nan(""), PipelineKind::MotorPga), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_pair(key(0, p, "a"), key(1, p, "b"), 0.5, PipelineKind::SoA), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_pair(key(1, p), key(1, p), 0.5, PipelineKind::SoA), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_pair(key(2, p), key(1, p), 0.5, PipelineKind::SoA), std::invalid_argument);
}
