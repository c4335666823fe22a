#include <algorithm>
#include <cmath>

#include "kernelwalk/curve.hpp"
#include "kernelwalk/errors.hpp"

namespace kw {

ProjC ProjC::normalized() const
{
    const Real m = std::max(std::abs(n), std::abs(d));
    if (m == 0 || !std::isfinite(m)) return *this;
    return {n / m, d / m};
}

bool ProjC::is_infinite(Real tol) const
{
    return std::abs(d) <= tol * std::abs(n);
}

Real chordal(const ProjC& p, const ProjC& q)
{
    const Real np = std::hypot(std::abs(p.n), std::abs(p.d));
    const Real nq = std::hypot(std::abs(q.n), std::abs(q.d));
    if (np == 0 || nq == 0) return 0;
    return std::abs(p.n * q.d - p.d * q.n) / (np * nq);
}

namespace {

int cycle_class(const CyclePoint& p)
{
    if (p.infinite) return 1;
    return p.value > -1 ? 0 : 2;
}

} // namespace

bool cycle_less(const CyclePoint& p, const CyclePoint& q)
{
    const int cp = cycle_class(p), cq = cycle_class(q);
    if (cp != cq) return cp < cq;
    if (p.infinite) return false;
    return p.value < q.value;
}

std::array<BranchPoint, 4> branch_points(const QuarticDiscriminant& disc,
                                         const Rational& target_width)
{
    const RatPoly affine = disc.affine();
    const bool has_infinite_root = disc.leading_vanishes();
    const int wanted_affine = has_infinite_root ? 3 : 4;
    if (affine.degree() < wanted_affine) {
        throw numeric_error("branch_points: fewer than four distinct real projective roots "
                            "(discriminant degenerates)");
    }
    if (!poly_gcd(affine, affine.derivative()).is_constant()) {
        throw numeric_error("branch_points: discriminant has a multiple root");
    }
    auto brackets = isolate_real_roots(affine);
    if (static_cast<int>(brackets.size()) != wanted_affine) {
        throw numeric_error("branch_points: fewer than four distinct real roots (model not "
                            "elliptic or t out of range)");
    }

    std::vector<BranchPoint> pts;
    const Rational minus_one(-1);
    for (auto& br : brackets) {
        // The cycle starts just above -1: decide each root's side exactly.
        if (!br.exact() && br.lo < minus_one && minus_one < br.hi) {
            if (affine.eval(minus_one) == 0) {
                br.lo = minus_one;
                br.hi = minus_one;
            } else if (sgn(affine.eval(br.lo)) != sgn(affine.eval(minus_one))) {
                br.hi = minus_one;
            } else {
                br.lo = minus_one;
            }
        }
        refine_root(affine, br, target_width);
        BranchPoint p;
        p.exact = br.mid();
        p.value = to_real(p.exact);
        p.radius = std::max(to_real(br.width()) / 2, std::abs(p.value) * 1e-18L);
        pts.push_back(p);
    }
    if (has_infinite_root) {
        BranchPoint p;
        p.infinite = true;
        pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(), [](const BranchPoint& p, const BranchPoint& q) {
        return cycle_less(p.cycle_point(), q.cycle_point());
    });
    return {pts[0], pts[1], pts[2], pts[3]};
}

} // namespace kw
