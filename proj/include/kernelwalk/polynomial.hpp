#ifndef KERNELWALK_POLYNOMIAL_HPP
#define KERNELWALK_POLYNOMIAL_HPP

#include <vector>

#include "kernelwalk/rational.hpp"

namespace kw {

// Dense univariate polynomial over the rationals, coefficient of x^i at
// index i, always trimmed so the leading coefficient is nonzero.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    static RatPoly constant(const Rational& c);
    static RatPoly monomial(const Rational& c, int power);

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Rational& coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const;

    Rational eval(const Rational& x) const;
    Real eval(Real x) const;
    Complex eval(const Complex& x) const;

    RatPoly derivative() const;
    // x^n * p(1/x) for n >= degree.
    RatPoly reversed(int n) const;
    RatPoly scaled(const Rational& s) const;
    RatPoly monic() const;

    RatPoly operator-() const;
    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    // Euclidean division; both quotient and remainder exact.
    static void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);

    std::vector<Real> real_coeffs() const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Coefficients of p(c + u) as a polynomial in u (exact Taylor shift).
RatPoly taylor_shift(const RatPoly& p, const Rational& c);

// Monic gcd; gcd(0, 0) = 0.
RatPoly poly_gcd(RatPoly a, RatPoly b);

// Yun's algorithm: p = lc * prod f[i]^(i+1) with f[i] squarefree and
// pairwise coprime (f[i] monic). Requires p nonzero.
std::vector<RatPoly> squarefree_decomposition(const RatPoly& p);

// True iff p is the square of a polynomial over the complex numbers,
// i.e. every complex root has even multiplicity. p = 0 counts as a square.
bool is_square_over_C(const RatPoly& p);

struct RootBracket {
    Rational lo, hi;  // lo <= root <= hi; lo == hi means the root is exact
    bool exact() const { return lo == hi; }
    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
};

// Isolates all distinct real roots of a squarefree polynomial into disjoint
// brackets, sorted in increasing order (Sturm bisection, exact arithmetic).
std::vector<RootBracket> isolate_real_roots(const RatPoly& p);

// Shrinks a bracket until width <= target (exact bisection).
void refine_root(const RatPoly& p, RootBracket& b, const Rational& target);

// Dense bivariate polynomial over the rationals; c[i][j] * u^i * v^j.
class RatPoly2 {
public:
    RatPoly2() = default;
    RatPoly2(int deg_u, int deg_v); // zero-filled
    static RatPoly2 constant(const Rational& c);
    static RatPoly2 monomial(const Rational& c, int pu, int pv);

    bool is_zero() const;
    int deg_u() const { return static_cast<int>(c_.size()) - 1; }
    int deg_v() const { return c_.empty() ? -1 : static_cast<int>(c_[0].size()) - 1; }
    const Rational& coeff(int i, int j) const;
    Rational& at(int i, int j);

    Rational eval(const Rational& u, const Rational& v) const;
    // Collapse v to a value, leaving a polynomial in u.
    RatPoly eval_v(const Rational& v) const;

    RatPoly2 operator-() const;
    RatPoly2& operator+=(const RatPoly2& o);
    RatPoly2& operator-=(const RatPoly2& o);
    friend RatPoly2 operator+(RatPoly2 a, const RatPoly2& b) { return a += b; }
    friend RatPoly2 operator-(RatPoly2 a, const RatPoly2& b) { return a -= b; }
    friend RatPoly2 operator*(const RatPoly2& a, const RatPoly2& b);
    bool operator==(const RatPoly2& o) const;

    void trim();

private:
    std::vector<std::vector<Rational>> c_;
};

} // namespace kw

#endif
