#include <cmath>

#include "kernelwalk/curve.hpp"
#include "kernelwalk/errors.hpp"

namespace kw {

namespace {

Real eval_shifted(const std::vector<Real>& c, Real u)
{
    Real r = 0;
    for (std::size_t k = c.size(); k-- > 0;) r = r * u + c[k];
    return r;
}

// One integration interval with the integrand polynomial re-expanded exactly
// around both endpoints, so evaluations next to either endpoint keep full
// relative precision (the branch-point singularities sit at the endpoints).
struct Piece {
    std::vector<Real> from_lo;  // coefficients in (x - lo)
    std::vector<Real> from_hi;  // coefficients in (x - hi)
    Real length = 0;

    Piece(const RatPoly& poly, const Rational& lo, const Rational& hi)
        : from_lo(taylor_shift(poly, lo).real_coeffs()),
          from_hi(taylor_shift(poly, hi).real_coeffs()),
          length(to_real(Rational(hi - lo)))
    {
    }

    Real eval(Real off_lo, Real off_hi) const
    {
        return off_lo <= off_hi ? eval_shifted(from_lo, off_lo)
                                : eval_shifted(from_hi, -off_hi);
    }
};

void check_sign(const std::vector<Piece>& pieces, int expected)
{
    if (expected == 0) return;
    for (const auto& p : pieces) {
        for (Real f : {0.21L, 0.5L, 0.83L}) {
            const Real off = p.length * f;
            if (p.eval(off, p.length - off) * expected < 0) {
                throw numeric_error("arc_integral: integrand sign inconsistency on the contour");
            }
        }
    }
}

} // namespace

QuadResult arc_integral(const RatPoly& quartic, const CyclePoint& from, const CyclePoint& to,
                        int expected_sign, const QuadratureControl& control)
{
    if (quartic.degree() < 1) throw input_error("arc_integral: constant polynomial");
    const RatPoly rev = quartic.reversed(4); // u^4 D(1/u)

    // Dyadic bound beyond all roots and both endpoints, so the u-pieces
    // contain no roots of the reversed polynomial except possibly u = 0.
    Real bound = 1;
    {
        Real maxc = 0;
        for (const Rational& c : quartic.coeffs()) {
            maxc = std::max(maxc, std::abs(to_real(c)));
        }
        bound = 1 + maxc / std::abs(to_real(quartic.leading()));
        if (!from.infinite) bound = std::max(bound, std::abs(from.value) + 1);
        if (!to.infinite) bound = std::max(bound, std::abs(to.value) + 1);
    }
    const int e = std::ilogb(bound) + 2; // 2^e >= 2*bound
    Rational M(1), invM(1);
    M <<= static_cast<unsigned long>(e);
    invM >>= static_cast<unsigned long>(e);

    std::vector<Piece> pieces;
    if (from.infinite && to.infinite) {
        throw input_error("arc_integral: both endpoints infinite");
    } else if (from.infinite) {
        pieces.emplace_back(rev, -invM, Rational(0)); // x in (-inf, -M]
        pieces.emplace_back(quartic, -M, to.exact);
    } else if (to.infinite) {
        pieces.emplace_back(quartic, from.exact, M);
        pieces.emplace_back(rev, Rational(0), invM);  // x in [M, +inf)
    } else if (from.exact < to.exact) {
        pieces.emplace_back(quartic, from.exact, to.exact);
    } else {
        pieces.emplace_back(quartic, from.exact, M);
        pieces.emplace_back(rev, -invM, invM);        // through infinity
        pieces.emplace_back(quartic, -M, to.exact);
    }
    check_sign(pieces, expected_sign);

    QuadResult total;
    for (const Piece& p : pieces) {
        if (!(p.length > 0)) continue;
        auto f = [&p](Real off_lo, Real off_hi) {
            return 1 / std::sqrt(std::abs(p.eval(off_lo, off_hi)));
        };
        const QuadResult r = tanh_sinh_offsets(f, p.length, control);
        total.value += r.value;
        total.error += r.error;
        total.level = std::max(total.level, r.level);
    }
    return total;
}

Periods periods(const QuarticDiscriminant& disc_x, const std::array<BranchPoint, 4>& a,
                const QuadratureControl& control)
{
    const RatPoly d1 = disc_x.affine();
    // D1 < 0 between a3 and a4, > 0 between a4 and a1 (continuing the cycle).
    const QuadResult i1 =
        arc_integral(d1, a[2].cycle_point(), a[3].cycle_point(), -1, control);
    const QuadResult i2 =
        arc_integral(d1, a[3].cycle_point(), a[0].cycle_point(), +1, control);
    if (!(i1.value > 0) || !(i2.value > 0)) {
        throw numeric_error("periods: nonpositive period integral");
    }
    Periods p;
    p.omega1 = Complex(0, i1.value);
    p.omega2 = i2.value;
    p.err1 = i1.error;
    p.err2 = i2.error;
    return p;
}

Omega3 omega3(const KernelPolynomial& kernel, const QuarticDiscriminant& disc_x,
              const BranchPoints& branch, const Periods& per, const QuadratureControl& control)
{
    // Quadratic in x over y = b4, from the bihomogeneous kernel in exact
    // arithmetic; b4 is a root of Delta_2, so the two x-roots coincide and
    // the tangency point is X = [-c1 : 2 c2].
    const BranchPoint& b4 = branch.b[3];
    Rational y0, y1;
    if (b4.infinite) {
        y0 = 1;
        y1 = 0;
    } else {
        y0 = b4.exact;
        y1 = 1;
    }
    Rational c[3];
    const Rational ypow[3] = {y1 * y1, y0 * y1, y0 * y0};
    for (int p = 0; p < 3; ++p) {
        c[p] = 0;
        for (int q = 0; q < 3; ++q) c[p] += kernel.coeff(p, q) * ypow[q];
    }
    const Rational scale = std::max({abs(c[0]), abs(c[1]), abs(c[2])});
    if (scale == 0) throw numeric_error("omega3: degenerate tangency quadratic");
    Rational tiny = scale;
    tiny >>= 60;

    CyclePoint target;
    ProjC tangent;
    if (abs(c[2]) <= tiny && abs(c[1]) <= tiny) {
        target = CyclePoint::inf(); // double root at x = [1:0]
        tangent = ProjC::infinity();
    } else if (abs(c[2]) <= tiny) {
        // Nearly linear: the finite root pairs with one at infinity, which
        // contradicts a vanishing discriminant at b4.
        throw numeric_error("omega3: tangency quadratic is not a double root");
    } else {
        const Rational x = -c[1] / (2 * c[2]);
        target = CyclePoint::at_exact(x);
        tangent = ProjC::finite(Complex(to_real(x)));
    }

    const QuadResult r =
        arc_integral(disc_x.affine(), branch.a[3].cycle_point(), target, +1, control);
    Omega3 o;
    o.value = r.value;
    o.err = r.error;
    o.tangent_x = tangent;
    const Real slack = 1e-9L * per.omega2;
    if (!(o.value > -slack && o.value < per.omega2 + slack)) {
        throw numeric_error("omega3: integral outside (0, omega2)");
    }
    return o;
}

} // namespace kw
