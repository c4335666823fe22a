#ifndef KERNELWALK_CONTINUATION_HPP
#define KERNELWALK_CONTINUATION_HPP

#include <vector>

#include "kernelwalk/curve.hpp"
#include "kernelwalk/series.hpp"

namespace kw {

struct ContinuationConfig {
    int truncation = 40;          // series order N
    Real tail_tol = 1e-9L;        // must dominate t^(N+1)/(1-t)
    Real pole_threshold = 1e-3L;  // omega-plane avoidance radius
    Real margin = 0.05L;          // base domain is |x(omega)| < 1 - margin
    int shift_budget = 100000;    // max |n| searched along omega3

    // Smallest truncation with t^(N+1)/(1-t) <= tol.
    static ContinuationConfig for_tolerance(Real tol, const Rational& t);
    // Fixed truncation; tail_tol becomes the implied bound t^(N+1)/(1-t).
    static ContinuationConfig with_truncation(int n, const Rational& t);
    void validate(const Rational& t) const;
};

// Preimages of c under wp in the fundamental cell (grid scan plus Newton).
// Generic c has two preimages (+/- pair); half-period values give one.
std::vector<Complex> wp_preimages(const LatticeContext& ctx, const Complex& c);

// One sampled point of the base domain: which unit-disk condition holds.
struct BaseDomainSample {
    Complex omega;
    Complex x, y;
    bool x_small = false; // |x(omega)| < 1 - margin (inside the x-window)
    bool y_small = false;
};

// Numeric meromorphic continuation of r_x, r_y over the omega-plane via the
// omega3-shift relation and omega1-periodicity.
//
// r_x is not omega2-periodic, so "the base domain" must be one fixed copy of
// the connected set O with Lambda(O) = {|x| < 1 or |y| < 1}: the |x| < 1 band
// is anchored in the alpha-window [0,1) (alpha = Re(omega)/omega2; the band
// is centered at alpha = 1/2 where x sweeps the small branch cut), and the
// |y| < 1 band in the unit window whose center is nearest to it. On the
// |y| < 1 part, r_x continues through the kernel identity
// r_x = -F2(y) + K(0,0)Q(0,0) - xy.
class Continuator {
public:
    Continuator(const CurveAnalytics& ca, const ContinuationConfig& config);

    bool in_base_domain_x(const Complex& omega) const;
    bool in_base_domain_y(const Complex& omega) const;
    bool in_base_domain(const Complex& omega) const;
    BaseDomainSample base_sample(const Complex& omega) const;

    // r_x(omega) = F1(x(omega)) on the |x| < 1 part of the base domain;
    // throws when |x| is too close to 1 for the configured truncation.
    Complex rx_base(const Complex& omega) const;
    Complex ry_base(const Complex& omega) const;

    // b_x(omega) = y(-omega)(x(omega) - x(omega+omega3)); b_y symmetric.
    Complex bx(const Complex& omega) const;
    Complex by(const Complex& omega) const;

    // Telescoped continuation: reduce modulo omega1, shift along omega3 to a
    // base-domain representative, accumulate b-corrections.
    Complex continue_rx(const Complex& omega) const;
    Complex continue_ry(const Complex& omega) const;

    // |r_x + r_y - K(0,0;t)Q(0,0;t) + x y| at omega.
    Real identity_check(const Complex& omega) const;

    // Candidate pole locations for r_x (axis X) or r_y inside the window
    // [lo, hi] (componentwise rectangle); a superset per the shift relation.
    std::vector<Complex> predicted_poles(Axis axis, const Complex& lo, const Complex& hi) const;

    const ContinuationConfig& config() const { return cfg_; }
    const SeriesTable& table() const { return table_; }
    const CurveAnalytics& analytics() const { return ca_; }

private:
    Complex reduce_omega1(const Complex& omega) const;
    Complex affine_checked(const ProjC& p, const char* what) const;
    Real alpha(const Complex& omega) const; // Re(omega)/omega2
    // r_x (resp. r_y) on the base domain, by whichever condition holds.
    Complex r_on_base(const Complex& omega, bool want_rx) const;
    Complex telescoped(const Complex& omega, bool want_rx) const;

    const CurveAnalytics& ca_;
    ContinuationConfig cfg_;
    SeriesTable table_;
    Real y_center_ = 0; // alpha of the |y|<1 band center's window
};

} // namespace kw

#endif
