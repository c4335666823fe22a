#ifndef KERNELWALK_GROUP_HPP
#define KERNELWALK_GROUP_HPP

#include <optional>
#include <string>
#include <utility>

#include "kernelwalk/curve.hpp"

namespace kw {

struct GroupReport {
    bool finite = false;
    long k = 0, ell = 0;      // omega3/omega2 = k/ell, gcd(k,ell) = 1
    long order_sigma = 0;     // = ell
    long order_group = 0;     // = 2*ell (generated by two involutions)
    long bound_checked = 0;   // largest denominator searched
    Real residual = 0;        // |ell*omega3 - k*omega2| / omega2 (or best seen)
    std::string caveat;       // t-specificity disclaimer, always set

    std::string describe() const;
};

struct GroupOptions {
    long max_denominator = 200; // Lmax; an artifact choice, echoed in reports
    Real tol = 1e-9L;
    std::uint64_t seed = 0;
    int confirm_samples = 20;
    long probe_budget_factor = 50; // orbit probe runs to factor * Lmax
};

// Best continued-fraction convergent k/ell with ell <= max_denominator and
// |ratio - k/ell| < tol; nullopt when no convergent qualifies.
std::optional<std::pair<long, long>> reconstruct_rational(Real ratio, long max_denominator,
                                                          Real tol);

// Lattice check |ell*omega3 - k*omega2| < tol*omega2 together with the
// orbit check sigma^ell(P) = P on sampled curve points. Throws numeric_error
// when the two checks disagree.
bool confirm_order(long ell, const CurveAnalytics& ca, Real tol, int sample_count,
                   std::uint64_t seed);

// Smallest n <= max_iterations with sigma^n(p) within 1e-8 of p (chordal);
// nullopt when the orbit does not return. Drifting iterates are re-projected
// onto the curve.
std::optional<long> orbit_probe(const CurvePoint& p, const KernelPolynomial& kernel,
                                long max_iterations);

// Decides finiteness of the group of the walk at the model's t. Finite only
// when reconstruction, the lattice relation and the orbit dynamics agree.
GroupReport group_report(const CurveAnalytics& ca, const GroupOptions& options = {});

} // namespace kw

#endif
