#ifndef KERNELWALK_CURVE_HPP
#define KERNELWALK_CURVE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "kernelwalk/kernel.hpp"
#include "kernelwalk/quadrature.hpp"

namespace kw {

// A point of the complex projective line as an unnormalized pair [n : d].
struct ProjC {
    Complex n{0}, d{1};
    static ProjC finite(const Complex& v) { return {v, Complex(1)}; }
    static ProjC infinity() { return {Complex(1), Complex(0)}; }
    ProjC normalized() const; // scaled so max(|n|,|d|) = 1
    bool is_infinite(Real tol = 1e-14L) const;
    Complex affine() const { return n / d; }
};

// Chordal (Fubini-Study) distance; scale invariant, finite at infinity.
Real chordal(const ProjC& p, const ProjC& q);

struct CurvePoint {
    ProjC x, y;
};

// A point of the real projective line on the branch-point cycle. Finite
// points carry an exact rational position (endpoint precision feeds straight
// into the period integrals).
struct CyclePoint {
    bool infinite = false;
    Real value = 0;
    Rational exact;
    static CyclePoint at(Real v) { return {false, v, rational_from_real(v)}; }
    static CyclePoint at_exact(const Rational& r) { return {false, to_real(r), r}; }
    static CyclePoint inf() { return {true, 0, Rational(0)}; }
};

// Cycle ordering of P^1(R): start just above -1, increase to +infinity,
// wrap to -infinity, and return to -1.
bool cycle_less(const CyclePoint& p, const CyclePoint& q);

struct BranchPoint {
    bool infinite = false;
    Real value = 0;     // affine value when finite
    Real radius = 0;    // certified error radius (0 for [1:0])
    Rational exact;     // bracket midpoint (within radius of the root)
    CyclePoint cycle_point() const { return {infinite, value, exact}; }
};

// Roots of one quartic discriminant in cycle order (a1..a4 or b1..b4).
// Throws numeric_error unless there are four distinct real projective roots.
std::array<BranchPoint, 4> branch_points(const QuarticDiscriminant& disc,
                                         const Rational& target_width);

struct BranchPoints {
    std::array<BranchPoint, 4> a; // x-axis (roots of Delta_1)
    std::array<BranchPoint, 4> b; // y-axis (roots of Delta_2)
};

// Integral of dx/sqrt(|D|) along the cycle arc from `from` to `to` (forward
// orientation, possibly through infinity). expected_sign (+1/-1) enables a
// sign-consistency check of D on the arc; 0 disables it.
QuadResult arc_integral(const RatPoly& quartic, const CyclePoint& from, const CyclePoint& to,
                        int expected_sign, const QuadratureControl& control = {});

struct Periods {
    Complex omega1;   // purely imaginary, positive imaginary part
    Real omega2 = 0;  // positive
    Real err1 = 0, err2 = 0;
};

Periods periods(const QuarticDiscriminant& disc_x, const std::array<BranchPoint, 4>& a,
                const QuadratureControl& control = {});

struct Omega3 {
    Real value = 0;
    Real err = 0;
    ProjC tangent_x; // the double root X(b4) the integral runs to
};

// Shift length of the QRT map: integral from a4 to the double x-root over b4
// along the positive-discriminant contour; lies in (0, omega2).
Omega3 omega3(const KernelPolynomial& kernel, const QuarticDiscriminant& disc_x,
              const BranchPoints& branch, const Periods& per,
              const QuadratureControl& control = {});

// Weierstrass data for the lattice omega1 Z + (multiplier * omega2) Z,
// evaluated through the nome q = exp(2 pi i tau).
class LatticeContext {
public:
    static LatticeContext create(const Complex& omega1, Real omega2, int multiplier = 1);

    const Complex& omega1() const { return omega1_; }
    Real omega2() const { return omega2_; }
    int multiplier() const { return multiplier_; }
    Complex tau() const { return tau_; }
    Complex nome() const { return q_; }
    Real g2() const { return g2_; }
    Real g3() const { return g3_; }

    Complex wp(const Complex& z) const;
    Complex wp_prime(const Complex& z) const;

    // Representative of z in the centered fundamental cell.
    Complex reduce(const Complex& z) const;
    // Distance from z to the nearest lattice point.
    Real pole_distance(const Complex& z) const;

private:
    Complex omega1_;
    Real omega2_ = 0;
    int multiplier_ = 1;
    Complex tau_, q_;
    Real g2_ = 0, g3_ = 0;
    Real qabs_ = 0;
    // z = (alpha + beta*tau) * gen2 with gen2 = multiplier * omega2.
    void coords(const Complex& z, Real& alpha, Real& beta) const;
};

// Constants of the explicit x(omega), y(omega) formulas. The y-formula
// evaluates wp at omega - y_shift with 2*y_shift = omega3 modulo the lattice;
// the shift representative is fixed by the curve equation and the QRT
// translation, checked at construction.
struct UniformizationData {
    bool x_infinite_case = false; // a4 = [1:0]
    bool y_infinite_case = false; // b4 = [1:0]
    Real a4 = 0, b4 = 0;
    Real d1p = 0, d1pp = 0; // D1'(a4), D1''(a4)
    Real d2p = 0, d2pp = 0; // D2'(b4), D2''(b4)
    Real alpha2 = 0, alpha3 = 0;
    Real beta2 = 0, beta3 = 0;
    Complex y_shift;
};

UniformizationData make_uniformization(const KernelPolynomial& kernel,
                                       const QuarticDiscriminant& disc_x,
                                       const QuarticDiscriminant& disc_y,
                                       const BranchPoints& branch, const Periods& per,
                                       Real omega3_value, const LatticeContext& ctx);

ProjC x_of_omega(const Complex& omega, const UniformizationData& uni,
                 const LatticeContext& ctx);
ProjC y_of_omega(const Complex& omega, const UniformizationData& uni,
                 const LatticeContext& ctx);
CurvePoint uniformize(const Complex& omega, const UniformizationData& uni,
                      const LatticeContext& ctx);

// Normalized |Kbar| at a curve point; scale invariant in both coordinates.
Real kernel_residual(const CurvePoint& p, const KernelPolynomial& kernel);

// The curve involutions: involution1 fixes x and swaps the two y-roots,
// involution2 fixes y and swaps the two x-roots; sigma is their composite
// (a QRT map). Throws numeric_error when p is too far off-curve.
CurvePoint involution1(const CurvePoint& p, const KernelPolynomial& kernel);
CurvePoint involution2(const CurvePoint& p, const KernelPolynomial& kernel);
CurvePoint qrt_sigma(const CurvePoint& p, const KernelPolynomial& kernel);

// Snaps a near-curve point back onto the curve (nearest quadratic root).
CurvePoint project_to_curve(const CurvePoint& p, const KernelPolynomial& kernel);

struct CurveOptions {
    int precision_bits = 64;
    QuadratureControl quadrature;
};

// Everything the downstream modules need about one elliptic kernel curve.
struct CurveAnalytics {
    WeightedModel model;
    KernelPolynomial kernel;
    QuarticDiscriminant disc_x, disc_y;
    BranchPoints branch;
    Periods per;
    Omega3 om3;
    LatticeContext lattice;
    UniformizationData uni;
};

// Full pipeline for a nondegenerate elliptic model; throws input_error when
// the model is degenerate or not elliptic.
CurveAnalytics analyze_curve(const WeightedModel& model, const CurveOptions& options = {});

// Deterministic pole-avoiding samples in the fundamental cell.
std::vector<Complex> sample_omegas(const CurveAnalytics& ca, int count, std::uint64_t seed);

} // namespace kw

#endif
