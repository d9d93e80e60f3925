#pragma once

#include "gam/dual_number.hpp"
#include "gam/pose.hpp"
#include "gam/quaternion.hpp"

namespace gam {

// D = real + eps dual, with quaternion parts and eps commuting with i, j, k.
struct DualQuaternion {
    Quaternion real = Quaternion::identity();
    Quaternion dual = {0.0, 0.0, 0.0, 0.0};

    static constexpr DualQuaternion identity() { return {Quaternion::identity(), {0.0, 0.0, 0.0, 0.0}}; }

    constexpr DualQuaternion operator+(const DualQuaternion& o) const { return {real + o.real, dual + o.dual}; }
    constexpr DualQuaternion operator-() const { return {-real, -dual}; }
    constexpr DualQuaternion operator*(double k) const { return {real * k, dual * k}; }
    constexpr DualQuaternion operator*(const DualQuaternion& o) const {
        return {real * o.real, real * o.dual + dual * o.real};
    }
    constexpr bool operator==(const DualQuaternion&) const = default;

    // Scaling by a dual number (eps commutes with everything).
    constexpr DualQuaternion operator*(const DualNumber& d) const {
        return {real * d.real, real * d.dual + dual * d.real};
    }
};

enum class DqConjugate { Star, Bar, BarStar };

// Star: p* + eps q*.  Bar: p - eps q.  BarStar: both, in either order.
DualQuaternion conjugate(const DualQuaternion& d, DqConjugate kind);

// <a,b> = (a b* + a* b)/2 reduced to its scalar, i.e. the 4-vector dot product.
double inner(const Quaternion& a, const Quaternion& b);

// |D| = sqrt(D D*) = |p| + eps <p,q>/|p|. Throws std::domain_error on a zero real part.
DualNumber norm(const DualQuaternion& d);

bool is_unit(const DualQuaternion& d, double tol = kUnitTolerance);

// D / |D|. Throws std::domain_error on a zero real part.
DualQuaternion normalized(const DualQuaternion& d);

// real = rotation, dual = 1/2 t rotation.
DualQuaternion dq_from_pose(const Pose& pose);

// Accepts D within kInputTolerance of the unit manifold (renormalizing first).
// Throws std::domain_error when D cannot be normalized or is too far off.
Pose dq_to_pose(const DualQuaternion& d);

// Two candidate translation read-outs for a unit DQ. Only the first reproduces
// rotate-then-translate for the encoding above; the second is kept so the
// discrepancy stays under test.
Vec3 translation_dual_times_conj_real(const DualQuaternion& d);  // 2 B A*
Vec3 translation_real_times_conj_dual(const DualQuaternion& d);  // 2 A B*

// Sandwich D v conj(D*) with v = 1 + eps (0, point), as the full 8-vector.
DualQuaternion sandwich_point(const DualQuaternion& d, const Vec3& point);

// Throws std::domain_error if D is not unit or the sandwich leaves the point form.
Vec3 dq_apply_point(const DualQuaternion& d, const Vec3& point);

// D^a for a unit DQ via its screw parameters: angle and pitch scale by a,
// axis and moment stay fixed. Assumes the real part has w >= 0.
DualQuaternion unit_power(const DualQuaternion& d, double a);

// D1 (D1* D2)^a with D2 sign-flipped when the real parts point apart.
DualQuaternion sclerp(const DualQuaternion& d1, const DualQuaternion& d2, double a);

}  // namespace gam
