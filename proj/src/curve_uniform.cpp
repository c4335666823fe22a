#include <algorithm>
#include <cmath>
#include <random>

#include "kernelwalk/curve.hpp"
#include "kernelwalk/errors.hpp"

namespace kw {

namespace {

// Both roots of c2 v^2 + c1 v w + c0 w^2, numerically stable, as projective
// pairs (handles roots at infinity).
std::array<ProjC, 2> quadratic_roots(const Complex& c2, const Complex& c1, const Complex& c0)
{
    const Real s2 = std::abs(c2), s1 = std::abs(c1), s0 = std::abs(c0);
    const Real scale = std::max({s2, s1, s0});
    if (scale == 0) throw numeric_error("quadratic_roots: zero quadratic");
    if (s2 <= 1e-15L * scale) {
        if (s1 <= 1e-15L * scale) {
            return {ProjC::infinity(), ProjC::infinity()};
        }
        return {ProjC::infinity(), ProjC{-c0, c1}.normalized()};
    }
    const Complex disc = c1 * c1 - Real(4) * c2 * c0;
    const Complex sq = std::sqrt(disc);
    const Complex cand1 = -(c1 + sq), cand2 = -(c1 - sq);
    const Complex q = (std::abs(cand1) >= std::abs(cand2) ? cand1 : cand2) / Real(2);
    if (std::abs(q) == 0) { // double root at 0
        return {ProjC::finite(0), ProjC::finite(0)};
    }
    return {ProjC{q, c2}.normalized(), ProjC{c0, q}.normalized()};
}

// Coefficients of Kbar as a quadratic in (y0, y1) over a fixed x-pair.
std::array<Complex, 3> y_quadratic(const std::array<std::array<Real, 3>, 3>& k, const ProjC& x)
{
    const Complex xp[3] = {x.d * x.d, x.n * x.d, x.n * x.n};
    std::array<Complex, 3> c{};
    for (int q = 0; q < 3; ++q) {
        Complex acc = 0;
        for (int p = 0; p < 3; ++p) {
            acc += k[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] * xp[p];
        }
        c[static_cast<std::size_t>(q)] = acc;
    }
    return c; // c[q] multiplies y0^q y1^(2-q)
}

std::array<Complex, 3> x_quadratic(const std::array<std::array<Real, 3>, 3>& k, const ProjC& y)
{
    const Complex yq[3] = {y.d * y.d, y.n * y.d, y.n * y.n};
    std::array<Complex, 3> c{};
    for (int p = 0; p < 3; ++p) {
        Complex acc = 0;
        for (int q = 0; q < 3; ++q) {
            acc += k[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] * yq[q];
        }
        c[static_cast<std::size_t>(p)] = acc;
    }
    return c;
}

constexpr Real kOffCurveTol = 1e-5L;

ProjC swap_root(const std::array<Complex, 3>& c, const ProjC& current)
{
    const auto roots = quadratic_roots(c[2], c[1], c[0]);
    const Real d0 = chordal(current, roots[0]);
    const Real d1 = chordal(current, roots[1]);
    if (std::min(d0, d1) > kOffCurveTol) {
        throw numeric_error("involution: point too far off-curve");
    }
    return d0 >= d1 ? roots[0] : roots[1];
}

} // namespace

Real kernel_residual(const CurvePoint& p, const KernelPolynomial& kernel)
{
    const auto k = kernel.coeffs_real();
    const ProjC x = p.x.normalized(), y = p.y.normalized();
    const Complex xp[3] = {x.d * x.d, x.n * x.d, x.n * x.n};
    const Complex yq[3] = {y.d * y.d, y.n * y.d, y.n * y.n};
    Complex acc = 0;
    Real scale = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Real c = k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            acc += c * xp[i] * yq[j];
            scale += std::abs(c);
        }
    }
    return std::abs(acc) / scale;
}

CurvePoint involution1(const CurvePoint& p, const KernelPolynomial& kernel)
{
    const auto k = kernel.coeffs_real();
    const ProjC x = p.x.normalized();
    return {x, swap_root(y_quadratic(k, x), p.y.normalized())};
}

CurvePoint involution2(const CurvePoint& p, const KernelPolynomial& kernel)
{
    const auto k = kernel.coeffs_real();
    const ProjC y = p.y.normalized();
    return {swap_root(x_quadratic(k, y), p.x.normalized()), y};
}

CurvePoint qrt_sigma(const CurvePoint& p, const KernelPolynomial& kernel)
{
    return involution2(involution1(p, kernel), kernel);
}

CurvePoint project_to_curve(const CurvePoint& p, const KernelPolynomial& kernel)
{
    const auto k = kernel.coeffs_real();
    auto nearest = [](const std::array<ProjC, 2>& roots, const ProjC& cur) {
        return chordal(cur, roots[0]) <= chordal(cur, roots[1]) ? roots[0] : roots[1];
    };
    const ProjC x = p.x.normalized(), y = p.y.normalized();
    CurvePoint fix_y{x, nearest(quadratic_roots(y_quadratic(k, x)[2], y_quadratic(k, x)[1],
                                                y_quadratic(k, x)[0]),
                                y)};
    CurvePoint fix_x{nearest(quadratic_roots(x_quadratic(k, y)[2], x_quadratic(k, y)[1],
                                             x_quadratic(k, y)[0]),
                             x),
                     y};
    return kernel_residual(fix_y, kernel) <= kernel_residual(fix_x, kernel) ? fix_y : fix_x;
}

ProjC x_of_omega(const Complex& omega, const UniformizationData& uni, const LatticeContext& ctx)
{
    Complex wp;
    try {
        wp = ctx.wp(omega);
    } catch (const numeric_error&) {
        // At a lattice point x takes its holomorphic limit a4 (resp. [1:0]).
        return uni.x_infinite_case ? ProjC::infinity() : ProjC::finite(Complex(uni.a4));
    }
    if (uni.x_infinite_case) {
        return ProjC{wp - uni.alpha2 / 3, Complex(uni.alpha3)}.normalized();
    }
    const Complex den = wp - uni.d1pp / 6;
    return ProjC{uni.a4 * den + uni.d1p, den}.normalized();
}

ProjC y_of_omega(const Complex& omega, const UniformizationData& uni, const LatticeContext& ctx)
{
    Complex wp;
    try {
        wp = ctx.wp(omega - uni.y_shift);
    } catch (const numeric_error&) {
        return uni.y_infinite_case ? ProjC::infinity() : ProjC::finite(Complex(uni.b4));
    }
    if (uni.y_infinite_case) {
        return ProjC{wp - uni.beta2 / 3, Complex(uni.beta3)}.normalized();
    }
    const Complex den = wp - uni.d2pp / 6;
    return ProjC{uni.b4 * den + uni.d2p, den}.normalized();
}

CurvePoint uniformize(const Complex& omega, const UniformizationData& uni,
                      const LatticeContext& ctx)
{
    return {x_of_omega(omega, uni, ctx), y_of_omega(omega, uni, ctx)};
}

UniformizationData make_uniformization(const KernelPolynomial& kernel,
                                       const QuarticDiscriminant& disc_x,
                                       const QuarticDiscriminant& disc_y,
                                       const BranchPoints& branch, const Periods&,
                                       Real omega3_value, const LatticeContext& ctx)
{
    UniformizationData uni;
    uni.x_infinite_case = branch.a[3].infinite;
    uni.y_infinite_case = branch.b[3].infinite;
    uni.alpha2 = to_real(disc_x.coeff[2]);
    uni.alpha3 = to_real(disc_x.coeff[3]);
    uni.beta2 = to_real(disc_y.coeff[2]);
    uni.beta3 = to_real(disc_y.coeff[3]);
    if (!uni.x_infinite_case) {
        uni.a4 = branch.a[3].value;
        const RatPoly d1 = disc_x.affine();
        uni.d1p = d1.derivative().eval(uni.a4);
        uni.d1pp = d1.derivative().derivative().eval(uni.a4);
    }
    if (!uni.y_infinite_case) {
        uni.b4 = branch.b[3].value;
        const RatPoly d2 = disc_y.affine();
        uni.d2p = d2.derivative().eval(uni.b4);
        uni.d2pp = d2.derivative().derivative().eval(uni.b4);
    }

    // The y-formula shift is omega3/2 up to a half-period and the direction
    // of the QRT translation; the curve equation and sigma = iota2 o iota1
    // single it out. Selection by postcondition over deterministic samples.
    const Complex w1 = ctx.omega1();
    const Real w2 = ctx.omega2();
    const Real w3 = omega3_value;
    std::vector<Complex> candidates;
    for (Real s : {Real(0.5L), Real(-0.5L)}) {
        for (const Complex& h : {Complex(0), Complex(w2 / 2), w1 / Real(2),
                                 (Complex(w2) + w1) / Real(2)}) {
            candidates.push_back(s * w3 + h);
        }
    }
    const Real pair_tol = 1e-9L;
    static const Real samples[][2] = {{0.137L, 0.261L}, {0.411L, 0.543L}, {0.683L, 0.219L},
                                      {0.329L, 0.717L}, {0.571L, 0.383L}, {0.823L, 0.647L}};
    for (const Complex& eta : candidates) {
        uni.y_shift = eta;
        Real worst = 0;
        int valid = 0;
        for (const auto& ab : samples) {
            const Complex omega = ab[0] * w2 + ab[1] * w1;
            if (ctx.pole_distance(omega) < 1e-3L || ctx.pole_distance(omega - eta) < 1e-3L ||
                ctx.pole_distance(omega + w3 - eta) < 1e-3L) {
                continue;
            }
            const CurvePoint p = uniformize(omega, uni, ctx);
            const CurvePoint p3 = uniformize(omega + w3, uni, ctx);
            const ProjC y_refl = y_of_omega(-omega + w3, uni, ctx);
            Real score = kernel_residual(p, kernel);
            score = std::max(score, chordal(y_refl, p.y));
            CurvePoint sp;
            try {
                sp = qrt_sigma(p, kernel);
            } catch (const numeric_error&) {
                continue;
            }
            score = std::max(score, chordal(sp.x, p3.x));
            score = std::max(score, chordal(sp.y, p3.y));
            worst = std::max(worst, score);
            ++valid;
        }
        if (valid >= 3 && worst < pair_tol) return uni;
    }
    throw numeric_error("uniformization: no y-shift satisfies the curve equation and the "
                        "QRT translation");
}

CurveAnalytics analyze_curve(const WeightedModel& model, const CurveOptions& options)
{
    const DegeneracyReport deg = degeneracy_test(model);
    if (deg.degenerate()) {
        throw input_error("analyze_curve: " + deg.describe());
    }
    const HalfPlaneClass hp = genus_classify(step_set(model));
    if (hp.classification != GenusClass::Elliptic) {
        throw input_error("analyze_curve: model is not elliptic (" + hp.describe() + ")");
    }
    KernelPolynomial kernel = KernelPolynomial::build(model);
    QuarticDiscriminant dx = discriminant(kernel, Axis::X);
    QuarticDiscriminant dy = discriminant(kernel, Axis::Y);
    const int bits = std::clamp(options.precision_bits, 24, 240);
    Rational width(1);
    width >>= static_cast<unsigned>(bits + 60);
    BranchPoints branch{branch_points(dx, width), branch_points(dy, width)};
    Periods per = periods(dx, branch.a, options.quadrature);
    Omega3 om3 = omega3(kernel, dx, branch, per, options.quadrature);
    LatticeContext lattice = LatticeContext::create(per.omega1, per.omega2, 1);
    UniformizationData uni =
        make_uniformization(kernel, dx, dy, branch, per, om3.value, lattice);
    return CurveAnalytics{model,  std::move(kernel), std::move(dx), std::move(dy),
                          branch, per,               om3,           std::move(lattice),
                          uni};
}

std::vector<Complex> sample_omegas(const CurveAnalytics& ca, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.04, 0.96);
    std::vector<Complex> out;
    const Real guard = 0.02L * std::min(ca.per.omega2, ca.per.omega1.imag());
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 400 * count) {
            throw numeric_error("sample_omegas: could not find pole-avoiding samples");
        }
        const Real a = static_cast<Real>(unif(rng));
        const Real b = static_cast<Real>(unif(rng));
        const Complex omega = a * ca.per.omega2 + b * ca.per.omega1;
        if (ca.lattice.pole_distance(omega) < guard ||
            ca.lattice.pole_distance(omega - ca.uni.y_shift) < guard) {
            continue;
        }
        const CurvePoint p = uniformize(omega, ca.uni, ca.lattice);
        if (!std::isfinite(std::abs(p.x.n)) || !std::isfinite(std::abs(p.y.n))) continue;
        out.push_back(omega);
    }
    return out;
}

} // namespace kw
