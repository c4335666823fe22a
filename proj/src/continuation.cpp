#include "kernelwalk/continuation.hpp"

#include <algorithm>
#include <cmath>

#include "kernelwalk/errors.hpp"

namespace kw {

ContinuationConfig ContinuationConfig::for_tolerance(Real tol, const Rational& t)
{
    ContinuationConfig cfg;
    cfg.tail_tol = tol;
    const Real tv = to_real(t);
    Real tail = tv / (1 - tv);
    int n = 0;
    while (tail > tol) {
        tail *= tv;
        ++n;
        if (n > 100000) throw input_error("continuation tolerance unreachable (t too close to 1)");
    }
    cfg.truncation = n;
    return cfg;
}

ContinuationConfig ContinuationConfig::with_truncation(int n, const Rational& t)
{
    if (n < 0) throw input_error("continuation truncation must be >= 0");
    ContinuationConfig cfg;
    cfg.truncation = n;
    const Real tv = to_real(t);
    cfg.tail_tol = std::pow(tv, Real(n + 1)) / (1 - tv);
    return cfg;
}

void ContinuationConfig::validate(const Rational& t) const
{
    const Real tv = to_real(t);
    const Real tail = std::pow(tv, Real(truncation + 1)) / (1 - tv);
    if (tail > tail_tol) {
        throw input_error("continuation config: truncation too small for the tail tolerance");
    }
    if (!(margin > 0 && margin < 1)) throw input_error("continuation config: bad margin");
}

Continuator::Continuator(const CurveAnalytics& ca, const ContinuationConfig& config)
    : ca_(ca), cfg_(config), table_(count_walks(ca.model, config.truncation))
{
    cfg_.validate(ca.model.t());
    // The |y|<1 band is centered where wp(omega - y_shift) sits at the
    // half-period omega2/2; keep the copy whose center is nearest the
    // x-band center 1/2.
    Real c = ca_.uni.y_shift.real() / ca_.per.omega2 + 0.5L;
    c -= std::floor(c);
    y_center_ = c;
    // The x-band center must be inside the unit x-disk, or the anchoring
    // assumption is broken for this model.
    const ProjC xm = x_of_omega(Complex(ca_.per.omega2 / 2), ca_.uni, ca_.lattice).normalized();
    if (std::abs(xm.d) < 1e-12L || std::abs(xm.affine()) >= 1) {
        throw numeric_error("continuation: x-band anchoring failed (|x(omega2/2)| >= 1)");
    }
}

Real Continuator::alpha(const Complex& omega) const
{
    return omega.real() / ca_.per.omega2;
}

Complex Continuator::reduce_omega1(const Complex& omega) const
{
    const Real v = ca_.per.omega1.imag();
    const Real n = std::floor(omega.imag() / v + 0.5L);
    return omega - n * ca_.per.omega1;
}

Complex Continuator::affine_checked(const ProjC& p, const char* what) const
{
    const ProjC q = p.normalized();
    if (std::abs(q.d) < cfg_.pole_threshold * 1e-3L) {
        throw numeric_error(std::string("pole proximity in ") + what);
    }
    return q.affine();
}

bool Continuator::in_base_domain_x(const Complex& omega) const
{
    const Real a = alpha(omega);
    if (a < 0 || a >= 1) return false;
    const ProjC x = x_of_omega(omega, ca_.uni, ca_.lattice).normalized();
    if (std::abs(x.d) < 1e-12L) return false;
    return std::abs(x.affine()) < 1 - cfg_.margin;
}

bool Continuator::in_base_domain_y(const Complex& omega) const
{
    const Real a = alpha(omega);
    if (a < y_center_ - 0.5L || a >= y_center_ + 0.5L) return false;
    const ProjC y = y_of_omega(omega, ca_.uni, ca_.lattice).normalized();
    if (std::abs(y.d) < 1e-12L) return false;
    return std::abs(y.affine()) < 1 - cfg_.margin;
}

bool Continuator::in_base_domain(const Complex& omega) const
{
    return in_base_domain_x(omega) || in_base_domain_y(omega);
}

BaseDomainSample Continuator::base_sample(const Complex& omega) const
{
    BaseDomainSample s;
    s.omega = omega;
    s.x_small = in_base_domain_x(omega);
    s.y_small = in_base_domain_y(omega);
    if (!s.x_small && !s.y_small) {
        throw input_error("base_sample: omega is not in the base domain");
    }
    s.x = affine_checked(x_of_omega(omega, ca_.uni, ca_.lattice), "base_sample (x)");
    s.y = affine_checked(y_of_omega(omega, ca_.uni, ca_.lattice), "base_sample (y)");
    return s;
}

Complex Continuator::r_on_base(const Complex& omega, bool want_rx) const
{
    const Real t = to_real(ca_.model.t());
    const Complex k00q00 =
        -t * to_real(ca_.model.weight(-1, -1)) * eval_Q(table_, Complex(0), Complex(0), t).value;
    if (want_rx) {
        if (in_base_domain_x(omega)) return rx_base(omega);
        // |y| < 1 part: continue through the kernel identity.
        const Complex y = affine_checked(y_of_omega(omega, ca_.uni, ca_.lattice), "r_x (y)");
        const Complex x = affine_checked(x_of_omega(omega, ca_.uni, ca_.lattice), "r_x (x)");
        return -eval_F2(table_, ca_.model, y).value + k00q00 - x * y;
    }
    if (in_base_domain_y(omega)) return ry_base(omega);
    const Complex x = affine_checked(x_of_omega(omega, ca_.uni, ca_.lattice), "r_y (x)");
    const Complex y = affine_checked(y_of_omega(omega, ca_.uni, ca_.lattice), "r_y (y)");
    return -eval_F1(table_, ca_.model, x).value + k00q00 - x * y;
}

Complex Continuator::rx_base(const Complex& omega) const
{
    const ProjC xp = x_of_omega(omega, ca_.uni, ca_.lattice);
    const Complex x = affine_checked(xp, "r_x (x at omega)");
    if (!(std::abs(x) < 1 - cfg_.margin)) {
        throw numeric_error("rx_base: |x(omega)| too close to 1 for the configured truncation");
    }
    return eval_F1(table_, ca_.model, x).value;
}

Complex Continuator::ry_base(const Complex& omega) const
{
    const ProjC yp = y_of_omega(omega, ca_.uni, ca_.lattice);
    const Complex y = affine_checked(yp, "r_y (y at omega)");
    if (!(std::abs(y) < 1 - cfg_.margin)) {
        throw numeric_error("ry_base: |y(omega)| too close to 1 for the configured truncation");
    }
    return eval_F2(table_, ca_.model, y).value;
}

Complex Continuator::bx(const Complex& omega) const
{
    const Complex ym = affine_checked(y_of_omega(-omega, ca_.uni, ca_.lattice), "b_x (y at -omega)");
    const Complex x0 = affine_checked(x_of_omega(omega, ca_.uni, ca_.lattice), "b_x (x at omega)");
    const Complex x3 = affine_checked(x_of_omega(omega + ca_.om3.value, ca_.uni, ca_.lattice),
                                      "b_x (x at omega+omega3)");
    return ym * (x0 - x3);
}

Complex Continuator::by(const Complex& omega) const
{
    const Complex x0 = affine_checked(x_of_omega(omega, ca_.uni, ca_.lattice), "b_y (x at omega)");
    const Complex y0 = affine_checked(y_of_omega(omega, ca_.uni, ca_.lattice), "b_y (y at omega)");
    const Complex ym = affine_checked(y_of_omega(-omega, ca_.uni, ca_.lattice), "b_y (y at -omega)");
    return x0 * (y0 - ym);
}

Complex Continuator::telescoped(const Complex& omega, bool want_rx) const
{
    const Complex w = reduce_omega1(omega);
    const Real w3 = ca_.om3.value;
    long n = 0;
    bool found = false;
    for (long a = 0; a <= cfg_.shift_budget; ++a) {
        if (in_base_domain(w - a * w3)) { n = a; found = true; break; }
        if (a > 0 && in_base_domain(w + a * w3)) { n = -a; found = true; break; }
    }
    if (!found) {
        throw numeric_error(want_rx ? "continue_rx: no base-domain representative within "
                                      "the shift budget"
                                    : "continue_ry: no base-domain representative within "
                                      "the shift budget");
    }
    Complex r = r_on_base(w - n * w3, want_rx);
    if (n >= 0) {
        for (long m = 1; m <= n; ++m) r += want_rx ? bx(w - m * w3) : by(w - m * w3);
    } else {
        for (long m = 0; m < -n; ++m) r -= want_rx ? bx(w + m * w3) : by(w + m * w3);
    }
    return r;
}

Complex Continuator::continue_rx(const Complex& omega) const { return telescoped(omega, true); }

Complex Continuator::continue_ry(const Complex& omega) const { return telescoped(omega, false); }

Real Continuator::identity_check(const Complex& omega) const
{
    const Complex rx = continue_rx(omega);
    const Complex ry = continue_ry(omega);
    const Complex x = affine_checked(x_of_omega(omega, ca_.uni, ca_.lattice), "identity (x)");
    const Complex y = affine_checked(y_of_omega(omega, ca_.uni, ca_.lattice), "identity (y)");
    const Real t = to_real(ca_.model.t());
    const Complex k00 = -t * to_real(ca_.model.weight(-1, -1));
    const Complex q00 = eval_Q(table_, Complex(0), Complex(0), t).value;
    return std::abs(rx + ry - k00 * q00 + x * y);
}

std::vector<Complex> wp_preimages(const LatticeContext& ctx, const Complex& c)
{
    // Coarse scan of the fundamental cell, then Newton. wp - c has exactly
    // two zeros (counted with multiplicity) per cell.
    const Complex gen2 = Complex(ctx.multiplier() * ctx.omega2());
    const Complex gen1 = ctx.omega1();
    struct Cand { Real score; Complex z; };
    std::vector<Cand> cands;
    const int grid = 40;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const Real a = (i + 0.5L) / grid;
            const Real b = (j + 0.5L) / grid;
            const Complex z = a * gen2 + b * gen1;
            if (ctx.pole_distance(z) < 0.02L * std::abs(gen2)) continue;
            cands.push_back({std::abs(ctx.wp(z) - c), z});
        }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& u, const Cand& v) { return u.score < v.score; });
    if (cands.size() > 16) cands.resize(16);

    std::vector<Complex> found;
    const Real scale = 1 + std::abs(c);
    for (const Cand& cand : cands) {
        Complex z = cand.z;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            const Complex f = ctx.wp(z) - c;
            if (std::abs(f) < 1e-13L * scale) { ok = true; break; }
            const Complex fp = ctx.wp_prime(z);
            if (std::abs(fp) < 1e-30L) break;
            Complex step = f / fp;
            const Real cap = 0.1L * std::abs(gen2);
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            z -= step;
        }
        if (!ok) continue;
        z = ctx.reduce(z);
        bool dup = false;
        for (const Complex& seen : found) {
            if (std::abs(ctx.reduce(z - seen)) < 1e-7L * std::abs(gen2)) { dup = true; break; }
        }
        if (!dup) found.push_back(z);
        if (found.size() == 2) break;
    }
    if (found.empty()) throw numeric_error("wp_preimages: Newton found no preimage");
    std::sort(found.begin(), found.end(), [](const Complex& u, const Complex& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    return found;
}

std::vector<Complex> Continuator::predicted_poles(Axis axis, const Complex& lo,
                                                  const Complex& hi) const
{
    // Cell representatives of the pole sets of x(omega) and y(omega).
    std::vector<Complex> poles_x, poles_y;
    if (ca_.uni.x_infinite_case) {
        poles_x.push_back(Complex(0));
    } else {
        poles_x = wp_preimages(ca_.lattice, Complex(ca_.uni.d1pp / 6));
    }
    if (ca_.uni.y_infinite_case) {
        poles_y.push_back(ca_.uni.y_shift);
    } else {
        for (const Complex& z : wp_preimages(ca_.lattice, Complex(ca_.uni.d2pp / 6))) {
            poles_y.push_back(z + ca_.uni.y_shift);
        }
    }

    std::vector<Complex> seeds;
    if (axis == Axis::X) {
        // Poles of r_x in the base domain: poles of x with |y| < 1; then
        // poles of b_x: poles of x, poles of x shifted down by omega3, and
        // reflected poles of y.
        for (const Complex& z : poles_x) {
            const ProjC y = y_of_omega(z, ca_.uni, ca_.lattice).normalized();
            if (std::abs(y.d) > 1e-10L && std::abs(y.affine()) < 1) seeds.push_back(z);
        }
        for (const Complex& z : poles_x) {
            seeds.push_back(z);
            seeds.push_back(z - ca_.om3.value);
        }
        for (const Complex& z : poles_y) seeds.push_back(-z);
    } else {
        for (const Complex& z : poles_y) {
            const ProjC x = x_of_omega(z, ca_.uni, ca_.lattice).normalized();
            if (std::abs(x.d) > 1e-10L && std::abs(x.affine()) < 1) seeds.push_back(z);
        }
        for (const Complex& z : poles_y) {
            seeds.push_back(z);
            seeds.push_back(z - ca_.om3.value);
        }
        for (const Complex& z : poles_x) seeds.push_back(-z);
    }

    // Translate by omega3 Z + omega1 Z into the window.
    std::vector<Complex> out;
    const Real w3 = ca_.om3.value;
    const Complex w1 = ca_.per.omega1;
    const Real xlo = std::min(lo.real(), hi.real()), xhi = std::max(lo.real(), hi.real());
    const Real ylo = std::min(lo.imag(), hi.imag()), yhi = std::max(lo.imag(), hi.imag());
    for (const Complex& s : seeds) {
        const long n3_lo = static_cast<long>(std::floor((xlo - s.real()) / w3)) - 1;
        const long n3_hi = static_cast<long>(std::ceil((xhi - s.real()) / w3)) + 1;
        const Real v1 = w1.imag();
        const long n1_lo = static_cast<long>(std::floor((ylo - s.imag()) / v1)) - 1;
        const long n1_hi = static_cast<long>(std::ceil((yhi - s.imag()) / v1)) + 1;
        if (n3_hi - n3_lo > 4096 || n1_hi - n1_lo > 4096) {
            throw input_error("predicted_poles: window too large");
        }
        for (long n3 = n3_lo; n3 <= n3_hi; ++n3) {
            for (long n1 = n1_lo; n1 <= n1_hi; ++n1) {
                const Complex z = s + Real(n3) * w3 + Real(n1) * w1;
                if (z.real() < xlo - 1e-12L || z.real() > xhi + 1e-12L) continue;
                if (z.imag() < ylo - 1e-12L || z.imag() > yhi + 1e-12L) continue;
                out.push_back(z);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Complex& u, const Complex& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    // Deduplicate nearby candidates.
    std::vector<Complex> dedup;
    for (const Complex& z : out) {
        if (dedup.empty() || std::abs(z - dedup.back()) > 1e-8L * (1 + std::abs(z))) {
            dedup.push_back(z);
        }
    }
    return dedup;
}

} // namespace kw
