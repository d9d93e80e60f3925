#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gam/dual_quaternion.hpp"
#include "gam/pose.hpp"
#include "gam/quaternion.hpp"
#include "support.hpp"

using namespace gam;
using gam::test::Rng;

namespace {

void check_quat(const Quaternion& a, const Quaternion& b, double tol = 1e-12) {
    CHECK(test::quat_diff(a, b) <= tol);
}

void check_vec(const Vec3& a, const Vec3& b, double tol = 1e-12) { CHECK(distance(a, b) <= tol); }

}  // namespace

TEST_CASE("hamilton product basics") {
    const Quaternion q{0.3, -1.2, 0.5, 2.0};
    check_quat(Quaternion::identity() * q, q, 0.0);
    check_quat(q * Quaternion::identity(), q, 0.0);

    const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    check_quat(i * j, k, 0.0);
    check_quat(j * k, i, 0.0);
    check_quat(k * i, j, 0.0);
    check_quat(i * i, {-1, 0, 0, 0}, 0.0);
    check_quat(i * j * k, {-1, 0, 0, 0}, 0.0);
    check_quat(j * i, -k, 0.0);
}

TEST_CASE("hamilton product matches rotation-matrix composition") {
    Rng rng(11);
    for (int n = 0; n < 100; ++n) {
        const Vec3 a1 = rng.unit_vector(), a2 = rng.unit_vector();
        const double t1 = rng.uniform(-kPi, kPi), t2 = rng.uniform(-kPi, kPi);
        const Quaternion q = Quaternion::from_axis_angle(a1, t1);
        const Quaternion p = Quaternion::from_axis_angle(a2, t2);
        const test::Mat3 expected = test::matmul(test::rotation_matrix(a1, t1), test::rotation_matrix(a2, t2));
        CHECK(test::max_abs_diff(test::quat_matrix(q * p), expected) < 1e-12);
    }
}

TEST_CASE("quaternion algebra properties") {
    Rng rng(12);
    for (int n = 0; n < 1000; ++n) {
        const Quaternion a = rng.quaternion(2), b = rng.quaternion(2), c = rng.quaternion(2);
        check_quat((a * b) * c, a * (b * c), 1e-12);
        CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) < 1e-12);
        check_quat((a * b).conjugate(), b.conjugate() * a.conjugate(), 1e-12);
    }
}

TEST_CASE("conjugate, norm and inverse") {
    {
        const auto r = conjugate_norm_inverse(Quaternion::identity());
        check_quat(r.conjugate, Quaternion::identity(), 0.0);
        CHECK(r.norm == 1.0);
        REQUIRE(r.inverse.has_value());
        check_quat(*r.inverse, Quaternion::identity(), 0.0);
    }
    {
        const auto r = conjugate_norm_inverse({0, 1, 0, 0});
        check_quat(r.conjugate, {0, -1, 0, 0}, 0.0);
        CHECK(r.norm == 1.0);
        check_quat(*r.inverse, {0, -1, 0, 0}, 0.0);
    }
    {
        const Quaternion q{1, 2, 3, 4};
        const auto r = conjugate_norm_inverse(q);
        CHECK(r.norm == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
        check_quat(*r.inverse, Quaternion{1, -2, -3, -4} * (1.0 / 30.0), 1e-15);
        check_quat(q * *r.inverse, Quaternion::identity(), 1e-12);
        check_quat(*r.inverse * q, Quaternion::identity(), 1e-12);
    }
    {
        const auto r = conjugate_norm_inverse({0, 0, 0, 0});
        CHECK(r.norm == 0.0);
        CHECK_FALSE(r.inverse.has_value());
        CHECK(r.conjugate == Quaternion{0, 0, 0, 0});
    }
}

TEST_CASE("rotate_point") {
    check_vec(rotate_point(Quaternion::identity(), {1.5, -2, 3}), {1.5, -2, 3}, 0.0);
    check_vec(rotate_point(Quaternion::from_axis_angle({0, 0, 1}, kPi / 2), {1, 0, 0}), {0, 1, 0}, 1e-15);
    CHECK_THROWS_AS(rotate_point({2, 0, 0, 0}, {1, 0, 0}), std::domain_error);

    Rng rng(13);
    double worst = 0;
    for (int n = 0; n < 10000; ++n) {
        const Vec3 axis = rng.unit_vector();
        const double angle = rng.uniform(-kPi, kPi);
        const Vec3 p = rng.vector(3);
        const Vec3 got = rotate_point(Quaternion::from_axis_angle(axis, angle), p);
        worst = std::max(worst, distance(got, test::apply(test::rotation_matrix(axis, angle), p)));
        CHECK(std::abs(got.norm() - p.norm()) < 1e-12);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("quaternion slerp") {
    Rng rng(14);
    const Quaternion q1 = rng.rotation(), q2 = rng.rotation();
    const Quaternion q2c = q1.dot(q2) < 0 ? -q2 : q2;
    check_quat(slerp(q1, q2, 0.0), q1, 1e-15);
    check_quat(slerp(q1, q2, 1.0), q2c, 1e-12);
    for (double a : {0.0, 0.3, 0.77, 1.0}) check_quat(slerp(q1, q1, a), q1, 1e-15);

    const Quaternion z90 = Quaternion::from_axis_angle({0, 0, 1}, kPi / 2);
    check_quat(slerp(Quaternion::identity(), z90, 0.5),
               {std::cos(deg2rad(22.5)), 0, 0, std::sin(deg2rad(22.5))}, 1e-15);

    SUBCASE("unit result, constant angular speed, antipodal invariance") {
        for (int n = 0; n < 200; ++n) {
            const Quaternion a = rng.rotation(), b = rng.rotation();
            const double total = rotation_angle_between(a, b);
            for (int i = 0; i <= 10; ++i) {
                const double t = i / 10.0;
                const Quaternion s = slerp(a, b, t);
                CHECK(s.is_unit());
                CHECK(rotation_angle_between(a, s) == doctest::Approx(t * total).epsilon(1e-9));
                CHECK(test::rotation_diff(s, slerp(a, -b, t)) < 1e-12);
            }
        }
    }

    SUBCASE("orthogonal endpoints (dot = 0)") {
        const Quaternion a = Quaternion::identity();
        const Quaternion b{0, 1, 0, 0};
        const Quaternion m = slerp(a, b, 0.5);
        CHECK(m.is_unit());
        CHECK(rotation_angle_between(a, m) == doctest::Approx(kPi / 2));
    }
}

TEST_CASE("euler conversion") {
    check_quat(euler_to_quat({0, 0, 0}), Quaternion::identity(), 0.0);
    check_quat(euler_to_quat({0, 0, 90}), {std::cos(kPi / 4), 0, 0, std::sin(kPi / 4)}, 1e-15);

    // Intrinsic Z, X', Y'': the matrix is Rz Rx Ry.
    const EulerAngles e{20, -35, 110};
    const test::Mat3 expected = test::matmul(test::matmul(test::rotation_matrix({0, 0, 1}, deg2rad(e.theta_z)),
                                                          test::rotation_matrix({1, 0, 0}, deg2rad(e.theta_x))),
                                             test::rotation_matrix({0, 1, 0}, deg2rad(e.theta_y)));
    CHECK(test::max_abs_diff(test::quat_matrix(euler_to_quat(e)), expected) < 1e-14);

    Rng rng(15);
    double worst = 0;
    for (int n = 0; n < 10000; ++n) {
        const EulerAngles in{rng.uniform(-88.99, 88.99), rng.uniform(-180, 180), rng.uniform(-180, 180)};
        const EulerAngles out = quat_to_euler(euler_to_quat(in));
        const EulerAngles c = in.canonical();
        worst = std::max({worst, std::abs(wrap_degrees(out.theta_x - c.theta_x)),
                          std::abs(wrap_degrees(out.theta_y - c.theta_y)),
                          std::abs(wrap_degrees(out.theta_z - c.theta_z))});
        CHECK(out.theta_x >= -180.0);
        CHECK(out.theta_z < 180.0);
    }
    CHECK(worst < 1e-6);

    SUBCASE("gimbal lock picks theta_y = 0 and preserves the rotation") {
        const Quaternion q = euler_to_quat({90, 30, 40});
        const EulerAngles out = quat_to_euler(q);
        CHECK(out.theta_y == 0.0);
        CHECK(out.theta_x == doctest::Approx(90.0));
        CHECK(test::rotation_diff(euler_to_quat(out), q) < 1e-7);
    }
    CHECK(wrap_degrees(180.0) == -180.0);
    CHECK(wrap_degrees(-180.0) == -180.0);
    CHECK(wrap_degrees(540.0) == -180.0);
    CHECK(wrap_degrees(-190.0) == doctest::Approx(170.0));
}

TEST_CASE("dual numbers") {
    const DualNumber one{1, 0};
    const DualNumber d{3.5, -2};
    CHECK(one * d == d);
    CHECK(DualNumber{0, 4} * DualNumber{0, 9} == DualNumber{0, 0});
    CHECK(DualNumber{2, 3} * DualNumber{5, 7} == DualNumber{10, 29});
    CHECK(DualNumber{2, 3} + DualNumber{5, 7} == DualNumber{7, 10});

    CHECK(inverse(one) == one);
    CHECK(inverse(DualNumber{2, 6}) == DualNumber{0.5, -1.5});
    const DualNumber back = DualNumber{2, 6} * inverse(DualNumber{2, 6});
    CHECK(std::abs(back.real - 1) < 1e-12);
    CHECK(std::abs(back.dual) < 1e-12);
    CHECK_THROWS_AS(inverse(DualNumber{0, 5}), std::domain_error);

    CHECK(gam::sqrt(one) == one);
    CHECK(gam::sqrt(DualNumber{4, 4}) == DualNumber{2, 1});
    CHECK(gam::sqrt(DualNumber{9, 6}) == DualNumber{3, 1});
    const DualNumber s = gam::sqrt(DualNumber{7.3, -1.1});
    const DualNumber sq = s * s;
    CHECK(std::abs(sq.real - 7.3) < 1e-12);
    CHECK(std::abs(sq.dual + 1.1) < 1e-12);
    CHECK_THROWS_AS(gam::sqrt(DualNumber{0, 1}), std::domain_error);
    CHECK_THROWS_AS(gam::sqrt(DualNumber{-1, 1}), std::domain_error);
}

TEST_CASE("dual quaternion product and conjugates") {
    Rng rng(21);
    const DualQuaternion id = DualQuaternion::identity();
    const DualQuaternion d{rng.quaternion(1), rng.quaternion(1)};
    CHECK(id * d == d);

    for (auto kind : {DqConjugate::Star, DqConjugate::Bar, DqConjugate::BarStar}) {
        CHECK(conjugate(id, kind) == id);
    }
    for (int n = 0; n < 100; ++n) {
        const DualQuaternion x{rng.quaternion(2), rng.quaternion(2)};
        const auto bar_of_star = conjugate(conjugate(x, DqConjugate::Star), DqConjugate::Bar);
        const auto star_of_bar = conjugate(conjugate(x, DqConjugate::Bar), DqConjugate::Star);
        CHECK(bar_of_star == star_of_bar);
        CHECK(conjugate(x, DqConjugate::BarStar) == bar_of_star);
    }

    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const DualQuaternion a = dq_from_pose(rng.pose()), b = dq_from_pose(rng.pose());
        const DualQuaternion ab = a * b;
        CHECK(is_unit(ab));
        const DualNumber nab = norm(ab);
        worst = std::max({worst, std::abs(nab.real - 1), std::abs(nab.dual)});
    }
    CHECK(worst < 1e-9);

    // |D1 D2| = |D1||D2| for general (non-unit) operands.
    for (int n = 0; n < 100; ++n) {
        const DualQuaternion a{rng.quaternion(2), rng.quaternion(2)}, b{rng.quaternion(2), rng.quaternion(2)};
        const DualNumber lhs = norm(a * b), rhs = norm(a) * norm(b);
        CHECK(std::abs(lhs.real - rhs.real) < 1e-12);
        CHECK(std::abs(lhs.dual - rhs.dual) < 1e-11);
    }

    SUBCASE("translation times rotation equals the composed pose") {
        const Vec3 t{0.4, -1.0, 2.5};
        const Quaternion r = Quaternion::from_axis_angle({1, 1, 0}, 0.8);
        const DualQuaternion prod = dq_from_pose({t, Quaternion::identity()}) * dq_from_pose({{}, r});
        const DualQuaternion direct = dq_from_pose({t, r});
        CHECK(test::quat_diff(prod.real, direct.real) < 1e-15);
        CHECK(test::quat_diff(prod.dual, direct.dual) < 1e-15);
    }
}

TEST_CASE("dual quaternion norm") {
    const DualNumber n = norm(DualQuaternion::identity());
    CHECK(n == DualNumber{1, 0});
    CHECK_THROWS_AS(norm(DualQuaternion{{0, 0, 0, 0}, {1, 0, 0, 0}}), std::domain_error);

    Rng rng(22);
    for (int i = 0; i < 1000; ++i) {
        const DualNumber u = norm(dq_from_pose(rng.pose(5)));
        CHECK(std::abs(u.real - 1) < 1e-9);
        CHECK(std::abs(u.dual) < 1e-9);
    }
    const DualQuaternion d{rng.quaternion(1), rng.quaternion(1)};
    const DualNumber n1 = norm(d), n3 = norm(d * 3.0);
    CHECK(n3.real == doctest::Approx(3 * n1.real).epsilon(1e-14));
    CHECK(n3.dual == doctest::Approx(3 * n1.dual).epsilon(1e-12));

    const DualQuaternion u = normalized(d);
    CHECK(is_unit(u));
}

TEST_CASE("pose to dual quaternion and back") {
    const DualQuaternion id = dq_from_pose(Pose::identity());
    CHECK(id == DualQuaternion::identity());

    const DualQuaternion tr = dq_from_pose({{2, 4, 6}, Quaternion::identity()});
    CHECK(tr.dual == Quaternion{0, 1, 2, 3});

    const Pose p{{1, 0, 0}, Quaternion::from_axis_angle({0, 0, 1}, kPi / 2)};
    check_vec(dq_apply_point(dq_from_pose(p), {1, 0, 0}), {1, 1, 0}, 1e-15);

    Rng rng(23);
    double worst = 0;
    for (int n = 0; n < 1000; ++n) {
        const Pose q = rng.pose(3);
        const DualQuaternion d = dq_from_pose(q);
        // Both unit-manifold constraints.
        CHECK(std::abs(d.real.norm() - 1) < 1e-9);
        CHECK(std::abs(inner(d.real, d.dual)) < 1e-9);
        worst = std::max(worst, test::pose_diff(dq_to_pose(d), q));
    }
    CHECK(worst < 1e-9);

    CHECK_THROWS_AS(dq_to_pose({{0, 0, 0, 0}, {0, 1, 0, 0}}), std::domain_error);
    // Slightly off the manifold is renormalized, far off is rejected.
    CHECK_NOTHROW(dq_to_pose(dq_from_pose(p) * (1 + 1e-8)));
    CHECK_THROWS_AS(dq_to_pose(dq_from_pose(p) * 1.5), std::domain_error);
}

TEST_CASE("translation read-out: 2 B A* reproduces the sandwich, 2 A B* does not") {
    Rng rng(24);
    double worst_standard = 0, best_alternative = 1e300;
    for (int n = 0; n < 1000; ++n) {
        const Pose p = rng.pose(3);
        const DualQuaternion d = dq_from_pose(p);
        // Oracle: sandwich image of the origin is the translation.
        const Vec3 oracle = sandwich_point(d, {0, 0, 0}).dual.vec();
        worst_standard = std::max(worst_standard, distance(translation_dual_times_conj_real(d), oracle));
        best_alternative = std::min(best_alternative, distance(translation_real_times_conj_dual(d), oracle) /
                                                          std::max(1e-12, oracle.norm()));
    }
    CHECK(worst_standard < 1e-12);
    // 2 A B* lands on a rotated and negated vector, never the translation.
    CHECK(best_alternative > 1e-3);
    // Even with identity rotation it is off by sign.
    const DualQuaternion pure = dq_from_pose({{2, 4, 6}, Quaternion::identity()});
    check_vec(translation_real_times_conj_dual(pure), {-2, -4, -6}, 0.0);
}

TEST_CASE("dq_apply_point") {
    check_vec(dq_apply_point(DualQuaternion::identity(), {3, -1, 2}), {3, -1, 2}, 0.0);
    check_vec(dq_apply_point(dq_from_pose({{2, 4, 6}, Quaternion::identity()}), {0, 0, 0}), {2, 4, 6}, 0.0);
    CHECK_THROWS_AS(dq_apply_point(DualQuaternion::identity() * 2.0, {1, 0, 0}), std::domain_error);

    Rng rng(25);
    double worst = 0;
    for (int n = 0; n < 10000; ++n) {
        const Pose p = rng.pose(3);
        const Vec3 v = rng.vector(2);
        const DualQuaternion out = sandwich_point(dq_from_pose(p), v);
        CHECK(std::abs(out.real.w - 1) < 1e-9);
        CHECK(std::abs(out.dual.w) < 1e-9);
        const Vec3 oracle = test::apply(test::quat_matrix(p.rotation), v) + p.translation;
        worst = std::max(worst, distance(dq_apply_point(dq_from_pose(p), v), oracle));
    }
    CHECK(worst < 1e-9);

    SUBCASE("product composes poses: A B applies B then A") {
        const Vec3 cube[8] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
        for (int n = 0; n < 200; ++n) {
            const Pose a = rng.pose(), b = rng.pose();
            const Pose ab = dq_to_pose(dq_from_pose(a) * dq_from_pose(b));
            for (const Vec3& v : cube) {
                CHECK(distance(ab.apply(v), a.apply(b.apply(v))) < 1e-9);
            }
        }
    }
}

TEST_CASE("screw interpolation") {
    Rng rng(26);
    const DualQuaternion d1 = dq_from_pose(rng.pose()), d2 = dq_from_pose(rng.pose());
    const DualQuaternion d2c = d1.real.dot(d2.real) < 0 ? -d2 : d2;

    SUBCASE("endpoints") {
        const DualQuaternion s0 = sclerp(d1, d2, 0.0), s1 = sclerp(d1, d2, 1.0);
        CHECK(test::quat_diff(s0.real, d1.real) < 1e-15);
        CHECK(test::quat_diff(s0.dual, d1.dual) < 1e-15);
        CHECK(test::quat_diff(s1.real, d2c.real) < 1e-12);
        CHECK(test::quat_diff(s1.dual, d2c.dual) < 1e-12);
    }

    SUBCASE("pure translations blend linearly") {
        const Vec3 t1{1, -2, 0.5}, t2{-3, 0.25, 4};
        const Pose m = dq_to_pose(sclerp(dq_from_pose({t1, {}}), dq_from_pose({t2, {}}), 0.5));
        check_vec(m.translation, (t1 + t2) * 0.5, 1e-15);
        check_quat(m.rotation, Quaternion::identity(), 1e-15);
    }

    SUBCASE("axis-aligned screw") {
        const Pose target{{0, 0, 2}, Quaternion::from_axis_angle({0, 0, 1}, kPi / 2)};
        const Pose m = dq_to_pose(sclerp(DualQuaternion::identity(), dq_from_pose(target), 0.5));
        check_vec(m.translation, {0, 0, 1}, 1e-15);
        check_quat(m.rotation, Quaternion::from_axis_angle({0, 0, 1}, kPi / 4), 1e-15);
    }

    SUBCASE("off-axis screw: rotation about a displaced vertical axis") {
        // Quarter turn about the line x = 1, y = 0: the origin travels along the
        // circle of radius 1 around (1, 0), so the midpoint sits on that circle.
        const Pose target{{1, -1, 0}, Quaternion::from_axis_angle({0, 0, 1}, kPi / 2)};
        const Pose m = dq_to_pose(sclerp(DualQuaternion::identity(), dq_from_pose(target), 0.5));
        const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
        check_vec(m.translation, {1 - c, -s, 0}, 1e-14);
    }

    SUBCASE("constant screw velocity and unit results") {
        for (int n = 0; n < 100; ++n) {
            const DualQuaternion a = dq_from_pose(rng.pose()), b = dq_from_pose(rng.pose());
            constexpr int kSteps = 8;
            DualQuaternion prev = sclerp(a, b, 0.0);
            DualQuaternion step0;
            for (int i = 1; i <= kSteps; ++i) {
                const DualQuaternion cur = sclerp(a, b, static_cast<double>(i) / kSteps);
                CHECK(is_unit(cur));
                DualQuaternion step = conjugate(prev, DqConjugate::Star) * cur;
                if (step.real.w < 0) step = -step;
                if (i == 1) {
                    step0 = step;
                } else {
                    CHECK(test::quat_diff(step.real, step0.real) < 1e-9);
                    CHECK(test::quat_diff(step.dual, step0.dual) < 1e-9);
                }
                prev = cur;
            }
        }
    }

    SUBCASE("half-way point squares to the full relative motion") {
        for (int n = 0; n < 200; ++n) {
            const DualQuaternion a = dq_from_pose(rng.pose()), b0 = dq_from_pose(rng.pose());
            const DualQuaternion b = a.real.dot(b0.real) < 0 ? -b0 : b0;
            const DualQuaternion s = sclerp(a, b, 0.5);
            const DualQuaternion h = conjugate(a, DqConjugate::Star) * s;
            const DualQuaternion full = conjugate(a, DqConjugate::Star) * b;
            const DualQuaternion sq = h * h;
            CHECK(test::quat_diff(sq.real, full.real) < 1e-9);
            CHECK(test::quat_diff(sq.dual, full.dual) < 1e-9);
        }
    }

    SUBCASE("tiny rotation angles stay continuous") {
        const Pose p{{0.3, 0.2, -0.1}, Quaternion::from_axis_angle({0, 1, 0}, 1e-9)};
        const Pose m = dq_to_pose(sclerp(DualQuaternion::identity(), dq_from_pose(p), 0.5));
        check_vec(m.translation, p.translation * 0.5, 1e-9);
        CHECK(rotation_angle_between(m.rotation, Quaternion::identity()) == doctest::Approx(0.5e-9).epsilon(1e-6));
    }
}
