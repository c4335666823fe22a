#include "kernelwalk/group.hpp"

#include <cmath>
#include <numeric>

#include "kernelwalk/errors.hpp"

namespace kw {

std::string GroupReport::describe() const
{
    if (finite) {
        return "finite: omega3/omega2 = " + std::to_string(k) + "/" + std::to_string(ell) +
               ", sigma has order " + std::to_string(order_sigma) + ", group order " +
               std::to_string(order_group);
    }
    return "infinite (presumed): no rational omega3/omega2 with denominator <= " +
           std::to_string(bound_checked);
}

std::optional<std::pair<long, long>> reconstruct_rational(Real ratio, long max_denominator,
                                                          Real tol)
{
    if (!(ratio > 0 && ratio < 1)) throw input_error("reconstruct_rational: ratio outside (0,1)");
    if (max_denominator < 1) throw input_error("reconstruct_rational: max_denominator < 1");
    // Continued-fraction convergents p/q of ratio, in increasing q.
    long p0 = 1, q0 = 0; // h_{-1}
    long p1 = 0, q1 = 1; // h_0 (a0 = 0 since 0 < ratio < 1)
    Real frac = ratio;
    std::optional<std::pair<long, long>> best;
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(ratio - static_cast<Real>(p1) / static_cast<Real>(q1)) < tol && q1 >= 1) {
            best = std::make_pair(p1, q1);
            break; // later convergents only refine beyond the tolerance
        }
        frac = frac - std::floor(frac);
        if (frac < 1e-17L) break;
        frac = 1 / frac;
        const Real af = std::floor(frac);
        if (af > 4e18L) break;
        const long a = static_cast<long>(af);
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (q2 > max_denominator || q2 <= 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    if (best) {
        const long g = std::gcd(best->first, best->second);
        best->first /= g;
        best->second /= g;
        if (best->first <= 0 || best->first >= best->second) return std::nullopt;
    }
    return best;
}

namespace {
constexpr Real kOrbitTol = 1e-8L;
constexpr Real kDriftTol = 1e-10L;

Real point_distance(const CurvePoint& p, const CurvePoint& q)
{
    return std::max(chordal(p.x, q.x), chordal(p.y, q.y));
}
} // namespace

bool confirm_order(long ell, const CurveAnalytics& ca, Real tol, int sample_count,
                   std::uint64_t seed)
{
    if (ell < 1) throw input_error("confirm_order: ell < 1");
    const Real ratio = ca.om3.value / ca.per.omega2;
    const long k = std::lround(static_cast<double>(ratio * ell));
    const bool lattice_ok =
        std::abs(ell * ca.om3.value - k * ca.per.omega2) < tol * ca.per.omega2 && k >= 1;

    bool orbit_ok = true;
    for (const Complex& omega : sample_omegas(ca, sample_count, seed)) {
        CurvePoint p = uniformize(omega, ca.uni, ca.lattice);
        CurvePoint q = p;
        for (long n = 0; n < ell; ++n) {
            q = qrt_sigma(q, ca.kernel);
            if (kernel_residual(q, ca.kernel) > kDriftTol) {
                q = project_to_curve(q, ca.kernel);
            }
        }
        if (point_distance(p, q) > kOrbitTol) {
            orbit_ok = false;
            break;
        }
    }
    if (lattice_ok != orbit_ok) {
        throw numeric_error("confirm_order: lattice relation and sigma-orbit disagree for ell=" +
                            std::to_string(ell));
    }
    return lattice_ok;
}

std::optional<long> orbit_probe(const CurvePoint& p, const KernelPolynomial& kernel,
                                long max_iterations)
{
    if (max_iterations > 1000000) throw input_error("orbit_probe: budget above 10^6");
    if (kernel_residual(p, kernel) > 1e-6L) {
        throw input_error("orbit_probe: start point is not on the curve");
    }
    CurvePoint q = p;
    for (long n = 1; n <= max_iterations; ++n) {
        q = qrt_sigma(q, kernel);
        if (kernel_residual(q, kernel) > kDriftTol) {
            q = project_to_curve(q, kernel);
            if (kernel_residual(q, kernel) > kDriftTol * 100) {
                throw numeric_error("orbit_probe: re-projection failed to restore the orbit");
            }
        }
        if (point_distance(p, q) < kOrbitTol) return n;
    }
    return std::nullopt;
}

GroupReport group_report(const CurveAnalytics& ca, const GroupOptions& options)
{
    GroupReport rep;
    rep.bound_checked = options.max_denominator;
    rep.caveat = "verdict holds at the model's fixed t; a finite specialization of an "
                 "infinite group (denumerable exceptional t-set) is indistinguishable "
                 "numerically";

    const Real ratio = ca.om3.value / ca.per.omega2;
    auto rec = reconstruct_rational(ratio, options.max_denominator, options.tol);

    // One generic orbit as the independent dynamics witness; skip points too
    // close to a fixed point of sigma.
    const auto probes = sample_omegas(ca, 8, options.seed + 17);
    CurvePoint witness = uniformize(probes[0], ca.uni, ca.lattice);
    for (const Complex& omega : probes) {
        const CurvePoint p = uniformize(omega, ca.uni, ca.lattice);
        if (point_distance(qrt_sigma(p, ca.kernel), p) > 1e-4L) {
            witness = p;
            break;
        }
    }
    const long probe_budget = options.max_denominator * options.probe_budget_factor;
    const auto first_return = orbit_probe(witness, ca.kernel, probe_budget);

    if (!rec && first_return) {
        // The orbit closed beyond the reconstruction bound; retry with the
        // observed order as the denominator bound.
        rec = reconstruct_rational(ratio, *first_return, options.tol * 10);
        if (rec) rep.caveat += "; order exceeded the default denominator bound";
    }
    if (rec) {
        const auto [k, ell] = *rec;
        rep.residual = std::abs(ell * ca.om3.value - k * ca.per.omega2) / ca.per.omega2;
        const bool confirmed =
            confirm_order(ell, ca, options.tol, options.confirm_samples, options.seed);
        if (confirmed && first_return && *first_return == ell) {
            rep.finite = true;
            rep.k = k;
            rep.ell = ell;
            rep.order_sigma = ell;
            rep.order_group = 2 * ell;
            return rep;
        }
    }
    rep.finite = false;
    rep.residual = rec ? rep.residual : 1;
    return rep;
}

} // namespace kw
