#ifndef KERNELWALK_KERNEL_HPP
#define KERNELWALK_KERNEL_HPP

#include <array>
#include <optional>
#include <string>

#include "kernelwalk/model.hpp"
#include "kernelwalk/polynomial.hpp"

namespace kw {

// K(x,y;t) = xy(1 - t S(x,y)) as an exact bidegree-(2,2) polynomial whose
// coefficients are linear in t, together with the A/B decompositions of the
// jump polynomial S.
class KernelPolynomial {
public:
    static KernelPolynomial build(const WeightedModel& model);

    // Coefficient of x^p y^q as a polynomial in t (degree <= 1).
    const RatPoly& coeff_t(int p, int q) const;
    // The same coefficient specialized at the model's t.
    Rational coeff(int p, int q) const;
    std::array<std::array<Real, 3>, 3> coeffs_real() const;

    // x*A_k(x) = sum_i d_{i,k} x^(i+1) for k in {-1,0,1}; constants in t.
    const RatPoly& xA(int k) const;
    // y*B_k(y) = sum_j d_{k,j} y^(j+1).
    const RatPoly& yB(int k) const;

    // K viewed as a quadratic in y: K = q[2](x) y^2 + q[1](x) y + q[0](x),
    // specialized at the model's t. x_view() is symmetric.
    std::array<RatPoly, 3> y_view() const;
    std::array<RatPoly, 3> x_view() const;

    int degree_x() const; // actual x-degree at the model's t
    int degree_y() const;

    const WeightedModel& model() const { return model_; }
    const Rational& t() const { return model_.t(); }

private:
    explicit KernelPolynomial(const WeightedModel& model);
    WeightedModel model_;
    std::array<std::array<RatPoly, 3>, 3> c_; // [p][q] -> poly in t
    std::array<RatPoly, 3> xa_, yb_;
};

// The bidegree-(2,2) bihomogeneous form Kbar(x0,x1,y0,y1;t); its nine
// coefficients at the model's t. Kbar(x,1,y,1) = K(x,y).
struct HomogeneousKernel {
    std::array<std::array<Rational, 3>, 3> c; // [p][q]: x0^p x1^(2-p) y0^q y1^(2-q)
    Rational coeff(int p, int q) const { return c[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }
};

HomogeneousKernel homogenize(const KernelPolynomial& kernel);

struct DegeneracyReport {
    enum class Kind {
        None,
        ZeroColumn, // d_{i,-1} = d_{i,0} = d_{i,1} = 0 for i = index
        ZeroRow,    // d_{-1,j} = d_{0,j} = d_{1,j} = 0 for j = index
        Diagonal,   // support within the diagonal (index=+1) or antidiagonal (index=-1)
    };
    Kind kind = Kind::None;
    int index = 0;
    bool degenerate() const { return kind != Kind::None; }
    std::string describe() const;
};

// Weight-pattern criterion; t-independent.
DegeneracyReport degeneracy_test(const WeightedModel& model);

// Independent check via the definition: x- or y-degree <= 1, or K reducible
// over C. Exact rational arithmetic throughout.
bool degeneracy_oracle(const KernelPolynomial& kernel, const Rational& t);

enum class GenusClass {
    Elliptic,
    Genus0Family1, // support within {i+j >= 0}
    Genus0Family2, // support within {j >= i}
    Genus0Family3, // support within {i+j <= 0}
    Genus0Family4, // support within {j <= i}
    DegenerateHalfPlane,
};

struct HalfPlaneClass {
    GenusClass classification = GenusClass::Elliptic;
    std::optional<Step> witness_normal; // inward normal of a containing half-plane
    std::string describe() const;
};

// Elliptic iff the support is in no closed half-plane through the origin.
// Family labels are only meaningful for nondegenerate models.
HalfPlaneClass genus_classify(const StepSet& steps);

enum class Axis { X, Y };

// Discriminant of Kbar as a quadratic in the other variable:
// Delta(x0,x1) = sum_i alpha_i(t) x0^i x1^(4-i).
struct QuarticDiscriminant {
    Axis axis = Axis::X;
    std::array<RatPoly, 5> coeff_t;   // alpha_i(t) (resp. beta_i(t)), degree <= 2
    std::array<Rational, 5> coeff;    // specialized at the model's t
    Rational t;

    RatPoly affine() const;           // quartic in the axis variable at t
    std::array<Real, 5> coeffs_real() const;
    bool leading_vanishes() const { return coeff[4] == 0; }
};

QuarticDiscriminant discriminant(const KernelPolynomial& kernel, Axis axis);

} // namespace kw

#endif
