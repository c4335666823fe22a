#include <doctest.h>

#include <cmath>

#include "kernelwalk/curve.hpp"
#include "kernelwalk/errors.hpp"

using namespace kw;

namespace {

WeightedModel simple_walk()
{
    return parse_model("d 1 0 = 1/4\nd -1 0 = 1/4\nd 0 1 = 1/4\nd 0 -1 = 1/4\nt = 1/2\n");
}

WeightedModel tandem()
{
    return parse_model("d 1 0 = 1/3\nd -1 1 = 1/3\nd 0 -1 = 1/3\nt = 1/3\n");
}

// Kreweras-type weighted support; alpha4 = beta4 = 0, so both a4 and b4 sit
// at [1:0].
WeightedModel weighted_kreweras()
{
    return parse_model("d 1 1 = 1/7\nd -1 0 = 3/7\nd 0 -1 = 3/7\nt = 1/2\n");
}

const CurveAnalytics& simple_ca()
{
    static const CurveAnalytics ca = analyze_curve(simple_walk());
    return ca;
}

const CurveAnalytics& tandem_ca()
{
    static const CurveAnalytics ca = analyze_curve(tandem());
    return ca;
}

Real point_distance(const CurvePoint& p, const CurvePoint& q)
{
    return std::max(chordal(p.x, q.x), chordal(p.y, q.y));
}

} // namespace

TEST_CASE("cycle ordering convention")
{
    CHECK(cycle_less(CyclePoint::at(0.5L), CyclePoint::at(2)));
    CHECK(cycle_less(CyclePoint::at(2), CyclePoint::inf()));
    CHECK(cycle_less(CyclePoint::inf(), CyclePoint::at(-5)));
    CHECK(cycle_less(CyclePoint::at(-5), CyclePoint::at(-1)));
    CHECK(cycle_less(CyclePoint::at(-0.999L), CyclePoint::at(-1))); // -1 closes the cycle
}

TEST_CASE("branch points of the simple walk at t=1/2")
{
    const auto& a = simple_ca().branch.a;
    const Real expected[] = {5 - 2 * std::sqrt(6.0L), 3 - 2 * std::sqrt(2.0L),
                             3 + 2 * std::sqrt(2.0L), 5 + 2 * std::sqrt(6.0L)};
    for (int i = 0; i < 4; ++i) {
        REQUIRE_FALSE(a[i].infinite);
        CHECK(std::abs(a[i].value - expected[i]) < 1e-12L);
        CHECK(a[i].radius < 1e-15L);
    }
    // x <-> y symmetric model: b points equal a points
    const auto& b = simple_ca().branch.b;
    for (int i = 0; i < 4; ++i) CHECK(std::abs(b[i].value - a[i].value) < 1e-15L);
}

TEST_CASE("branch points include [1:0] when alpha4 vanishes")
{
    const CurveAnalytics ca = analyze_curve(weighted_kreweras());
    CHECK(ca.disc_x.leading_vanishes());
    CHECK(ca.branch.a[3].infinite); // all finite roots exceed -1 here
    CHECK(ca.branch.b[3].infinite);
    CHECK(ca.uni.x_infinite_case);
    CHECK(ca.uni.y_infinite_case);
}

TEST_CASE("branch point computation rejects non-elliptic input")
{
    // Degenerate-in-y discriminant: the antidiagonal model collapses.
    const WeightedModel m = parse_model("d -1 1 = 1/2\nd 1 -1 = 1/2\nt = 1/2\n");
    const KernelPolynomial k = KernelPolynomial::build(m);
    const QuarticDiscriminant d = discriminant(k, Axis::X);
    Rational w(1);
    w >>= 60;
    CHECK_THROWS_AS(branch_points(d, w), numeric_error);
}

TEST_CASE("periods of the simple walk have the right type")
{
    const Periods& p = simple_ca().per;
    CHECK(p.omega1.real() == 0);
    CHECK(p.omega1.imag() > 0);
    CHECK(p.omega2 > 0);
    CHECK(p.err1 < 1e-12L);
    CHECK(p.err2 < 1e-12L);
}

TEST_CASE("quadrature step-halving stability of the periods")
{
    const CurveAnalytics& ca = simple_ca();
    QuadratureControl coarse;
    coarse.rel_tol = 0;
    coarse.max_level = 8;
    QuadratureControl fine = coarse;
    fine.max_level = 9;
    const Periods pc = periods(ca.disc_x, ca.branch.a, coarse);
    const Periods pf = periods(ca.disc_x, ca.branch.a, fine);
    CHECK(std::abs(pc.omega1.imag() - pf.omega1.imag()) < 1e-10L * pf.omega1.imag());
    CHECK(std::abs(pc.omega2 - pf.omega2) < 1e-10L * pf.omega2);
}

TEST_CASE("arc orientation: reversed endpoints flag sign inconsistency")
{
    const CurveAnalytics& ca = simple_ca();
    // (a4 -> a3) traverses the positive-discriminant region plus the negative
    // arc: the sign check must reject it.
    CHECK_THROWS_AS(arc_integral(ca.disc_x.affine(), ca.branch.a[3].cycle_point(),
                                 ca.branch.a[2].cycle_point(), -1),
                    numeric_error);
    // Same arc integrated with the correct sign expectation matches omega1up
    // to the contour complement.
    const QuadResult fwd = arc_integral(ca.disc_x.affine(), ca.branch.a[2].cycle_point(),
                                        ca.branch.a[3].cycle_point(), -1);
    CHECK(fwd.value == doctest::Approx(static_cast<double>(ca.per.omega1.imag())));
}

TEST_CASE("omega3 of the simple walk is omega2/2")
{
    const CurveAnalytics& ca = simple_ca();
    CHECK(std::abs(ca.om3.value / ca.per.omega2 - 0.5L) < 1e-9L);
    // tangency point X(b4) = -1 exactly for the simple walk
    REQUIRE_FALSE(ca.om3.tangent_x.is_infinite());
    CHECK(std::abs(ca.om3.tangent_x.affine() - Complex(-1)) < 1e-10L);
    CHECK(ca.om3.value > 0);
    CHECK(ca.om3.value < ca.per.omega2);
}

TEST_CASE("omega3 of the tandem model has denominator 3")
{
    const CurveAnalytics& ca = tandem_ca();
    const Real r = ca.om3.value / ca.per.omega2;
    const Real best = std::min({std::abs(r - 1.0L / 3), std::abs(r - 2.0L / 3)});
    CHECK(best < 1e-9L);
}

TEST_CASE("lattice context on the square lattice")
{
    const LatticeContext ctx = LatticeContext::create(Complex(0, 1), 1);
    CHECK(std::abs(ctx.g3()) < 1e-15L); // lemniscatic symmetry
    CHECK(ctx.g2() > 0);
    CHECK(std::abs(ctx.nome()) == doctest::Approx(std::exp(-2 * 3.14159265358979)));

    // wp at the half period equals the (real) root e1 = sqrt(g2)/2 for g3 = 0
    const Complex e1 = ctx.wp(Complex(0.5L));
    CHECK(std::abs(e1 - std::sqrt(ctx.g2()) / 2) < 1e-14L);
}

TEST_CASE("wp satisfies its differential equation, evenness and periodicity")
{
    const CurveAnalytics& ca = simple_ca();
    const LatticeContext& ctx = ca.lattice;
    const auto omegas = sample_omegas(ca, 50, 1234);
    for (const Complex& w : omegas) {
        const Complex p = ctx.wp(w);
        const Complex dp = ctx.wp_prime(w);
        const Complex lhs = dp * dp;
        const Complex rhs = Real(4) * p * p * p - ctx.g2() * p - ctx.g3();
        const Real scale = std::abs(lhs) + std::abs(4.0L * p * p * p) +
                           std::abs(ctx.g2() * p) + std::abs(ctx.g3()) + 1;
        CHECK(std::abs(lhs - rhs) / scale < 1e-14L);
        CHECK(std::abs(ctx.wp(-w) - p) < 1e-12L * (1 + std::abs(p)));
        CHECK(std::abs(ctx.wp(w + ctx.omega1()) - p) < 1e-10L * (1 + std::abs(p)));
        CHECK(std::abs(ctx.wp(w + ctx.omega2()) - p) < 1e-10L * (1 + std::abs(p)));
        CHECK(std::abs(ctx.wp_prime(-w) + dp) < 1e-12L * (1 + std::abs(dp)));
    }
}

TEST_CASE("lattice invariants agree with the quartic invariants")
{
    // For D = sum c_i x^i, the lattice of dx/sqrt(D) halved has
    // g2 = 16 S(D), g3 = 64 T(D) with the classical S, T of the quartic.
    for (const CurveAnalytics* pca : {&simple_ca(), &tandem_ca()}) {
        const auto c = pca->disc_x.coeffs_real();
        const Real S = c[4] * c[0] - c[3] * c[1] / 4 + c[2] * c[2] / 12;
        const Real T = c[4] * c[2] * c[0] / 6 - c[4] * c[1] * c[1] / 16 -
                       c[3] * c[3] * c[0] / 16 + c[3] * c[2] * c[1] / 48 -
                       c[2] * c[2] * c[2] / 216;
        CHECK(std::abs(pca->lattice.g2() - 16 * S) < 1e-10L * std::abs(16 * S));
        CHECK(std::abs(pca->lattice.g3() - 64 * T) < 1e-10L * (std::abs(64 * T) + 1e-6L));
        // the two discriminants carry the same invariants exactly
        const auto cy = pca->disc_y.coeffs_real();
        const Real Sy = cy[4] * cy[0] - cy[3] * cy[1] / 4 + cy[2] * cy[2] / 12;
        CHECK(std::abs(S - Sy) < 1e-16L * (1 + std::abs(S)));
    }
}

TEST_CASE("multiplier-2 lattice differs from the base lattice")
{
    const CurveAnalytics& ca = simple_ca();
    const LatticeContext sub = LatticeContext::create(ca.per.omega1, ca.per.omega2, 2);
    const Complex w = 0.31L * ca.per.omega2 + 0.27L * ca.per.omega1;
    CHECK(std::abs(sub.wp(w) - ca.lattice.wp(w)) > 1e-6L);
    // but the sublattice is still omega1-periodic
    CHECK(std::abs(sub.wp(w + ca.per.omega1) - sub.wp(w)) < 1e-10L * (1 + std::abs(sub.wp(w))));
}

TEST_CASE("uniformization lands on the curve")
{
    for (const CurveAnalytics* pca :
         {&simple_ca(), &tandem_ca()}) {
        const auto omegas = sample_omegas(*pca, 100, 42);
        Real worst = 0;
        for (const Complex& w : omegas) {
            const CurvePoint p = uniformize(w, pca->uni, pca->lattice);
            worst = std::max(worst, kernel_residual(p, pca->kernel));
        }
        CHECK(worst < 1e-8L);
    }
}

TEST_CASE("uniformization of the infinite-branch-point model lands on the curve")
{
    const CurveAnalytics ca = analyze_curve(weighted_kreweras());
    const auto omegas = sample_omegas(ca, 60, 43);
    Real worst = 0;
    for (const Complex& w : omegas) {
        worst = std::max(worst, kernel_residual(uniformize(w, ca.uni, ca.lattice), ca.kernel));
    }
    CHECK(worst < 1e-8L);
}

TEST_CASE("involution lifts: x(-w) = x(w) and y(-w+w3) = y(w)")
{
    const CurveAnalytics& ca = simple_ca();
    const auto omegas = sample_omegas(ca, 50, 7);
    for (const Complex& w : omegas) {
        const CurvePoint p = uniformize(w, ca.uni, ca.lattice);
        CHECK(chordal(x_of_omega(-w, ca.uni, ca.lattice), p.x) < 1e-10L);
        CHECK(chordal(y_of_omega(-w + ca.om3.value, ca.uni, ca.lattice), p.y) < 1e-10L);
    }
}

TEST_CASE("involutions are involutive and sigma lifts to translation by omega3")
{
    for (const CurveAnalytics* pca : {&simple_ca(), &tandem_ca()}) {
        const CurveAnalytics& ca = *pca;
        const auto omegas = sample_omegas(ca, 50, 99);
        for (const Complex& w : omegas) {
            const CurvePoint p = uniformize(w, ca.uni, ca.lattice);
            CHECK(point_distance(involution1(involution1(p, ca.kernel), ca.kernel), p) < 1e-8L);
            CHECK(point_distance(involution2(involution2(p, ca.kernel), ca.kernel), p) < 1e-8L);
            const CurvePoint p3 = uniformize(w + ca.om3.value, ca.uni, ca.lattice);
            CHECK(point_distance(qrt_sigma(p, ca.kernel), p3) < 1e-8L);
        }
    }
}

TEST_CASE("sigma of the simple walk has order two")
{
    const CurveAnalytics& ca = simple_ca();
    const auto omegas = sample_omegas(ca, 20, 5);
    for (const Complex& w : omegas) {
        const CurvePoint p = uniformize(w, ca.uni, ca.lattice);
        const CurvePoint s2 = qrt_sigma(qrt_sigma(p, ca.kernel), ca.kernel);
        CHECK(point_distance(s2, p) < 1e-8L);
    }
}

TEST_CASE("wp rejects pole-proximal arguments; uniformize takes the limit")
{
    const CurveAnalytics& ca = simple_ca();
    CHECK_THROWS_AS(ca.lattice.wp(Complex(0)), numeric_error);
    CHECK_THROWS_AS(ca.lattice.wp_prime(ca.per.omega1 + Real(1e-14L)), numeric_error);
    // Lambda(0) is the curve point over the branch point a4.
    const ProjC x0 = x_of_omega(Complex(0), ca.uni, ca.lattice);
    CHECK(std::abs(x0.affine() - Complex(ca.branch.a[3].value)) < 1e-12L);
}

TEST_CASE("involution on an off-curve point is rejected")
{
    const CurveAnalytics& ca = simple_ca();
    CurvePoint junk{ProjC::finite(Complex(0.37L, 0.11L)), ProjC::finite(Complex(5.0L, 3.0L))};
    CHECK_THROWS_AS(involution1(junk, ca.kernel), numeric_error);
}

TEST_CASE("project_to_curve repairs small drift")
{
    const CurveAnalytics& ca = simple_ca();
    const CurvePoint p = uniformize(0.33L * ca.per.omega2 + 0.21L * ca.per.omega1, ca.uni,
                                    ca.lattice);
    CurvePoint drifted = p;
    drifted.y.n += Complex(1e-7L, -2e-7L);
    const CurvePoint fixed = project_to_curve(drifted, ca.kernel);
    CHECK(kernel_residual(fixed, ca.kernel) < 1e-14L);
    CHECK(point_distance(fixed, p) < 1e-6L);
}

TEST_CASE("analyze_curve rejects degenerate and genus-0 models")
{
    CHECK_THROWS_AS(analyze_curve(parse_model("d 0 0 = 1\nt = 1/2\n")), input_error);
    CHECK_THROWS_AS(analyze_curve(parse_model(
                        "d -1 1 = 1/5\nd 0 1 = 1/5\nd 1 1 = 1/5\nd 1 0 = 1/5\nd 1 -1 = "
                        "1/5\nt = 1/2\n")),
                    input_error);
}
