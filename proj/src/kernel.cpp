#include "kernelwalk/kernel.hpp"

#include "kernelwalk/errors.hpp"

namespace kw {

KernelPolynomial::KernelPolynomial(const WeightedModel& model) : model_(model)
{
    // K = xy - t sum d_{a,b} x^(a+1) y^(b+1)
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            RatPoly c;
            if (p == 1 && q == 1) c += RatPoly::constant(1);
            const Rational& d = model.weight(p - 1, q - 1);
            if (d != 0) c += RatPoly::monomial(-d, 1);
            c_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = c;
        }
    }
    for (int k = -1; k <= 1; ++k) {
        RatPoly a, b;
        for (int i = -1; i <= 1; ++i) {
            a += RatPoly::monomial(model.weight(i, k), i + 1);
            b += RatPoly::monomial(model.weight(k, i), i + 1);
        }
        xa_[static_cast<std::size_t>(k + 1)] = a;
        yb_[static_cast<std::size_t>(k + 1)] = b;
    }
}

KernelPolynomial KernelPolynomial::build(const WeightedModel& model)
{
    return KernelPolynomial(model);
}

const RatPoly& KernelPolynomial::coeff_t(int p, int q) const
{
    return c_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
}

Rational KernelPolynomial::coeff(int p, int q) const
{
    return coeff_t(p, q).eval(model_.t());
}

std::array<std::array<Real, 3>, 3> KernelPolynomial::coeffs_real() const
{
    std::array<std::array<Real, 3>, 3> r{};
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            r[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = to_real(coeff(p, q));
        }
    }
    return r;
}

const RatPoly& KernelPolynomial::xA(int k) const { return xa_[static_cast<std::size_t>(k + 1)]; }
const RatPoly& KernelPolynomial::yB(int k) const { return yb_[static_cast<std::size_t>(k + 1)]; }

std::array<RatPoly, 3> KernelPolynomial::y_view() const
{
    std::array<RatPoly, 3> v;
    for (int q = 0; q < 3; ++q) {
        RatPoly p;
        for (int px = 0; px < 3; ++px) p += RatPoly::monomial(coeff(px, q), px);
        v[static_cast<std::size_t>(q)] = p;
    }
    return v;
}

std::array<RatPoly, 3> KernelPolynomial::x_view() const
{
    std::array<RatPoly, 3> v;
    for (int p = 0; p < 3; ++p) {
        RatPoly py;
        for (int q = 0; q < 3; ++q) py += RatPoly::monomial(coeff(p, q), q);
        v[static_cast<std::size_t>(p)] = py;
    }
    return v;
}

int KernelPolynomial::degree_x() const
{
    const auto v = x_view();
    for (int p = 2; p >= 0; --p) {
        if (!v[static_cast<std::size_t>(p)].is_zero()) return p;
    }
    return -1;
}

int KernelPolynomial::degree_y() const
{
    const auto v = y_view();
    for (int q = 2; q >= 0; --q) {
        if (!v[static_cast<std::size_t>(q)].is_zero()) return q;
    }
    return -1;
}

HomogeneousKernel homogenize(const KernelPolynomial& kernel)
{
    HomogeneousKernel h;
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            h.c[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = kernel.coeff(p, q);
        }
    }
    return h;
}

std::string DegeneracyReport::describe() const
{
    switch (kind) {
        case Kind::None: return "not degenerate";
        case Kind::ZeroColumn:
            return "degenerate: no step with i = " + std::to_string(index);
        case Kind::ZeroRow:
            return "degenerate: no step with j = " + std::to_string(index);
        case Kind::Diagonal:
            return index > 0 ? "degenerate: support within the diagonal"
                             : "degenerate: support within the antidiagonal";
    }
    return "";
}

DegeneracyReport degeneracy_test(const WeightedModel& model)
{
    for (int i : {-1, 1}) {
        if (model.weight(i, -1) == 0 && model.weight(i, 0) == 0 && model.weight(i, 1) == 0) {
            return {DegeneracyReport::Kind::ZeroColumn, i};
        }
    }
    for (int j : {-1, 1}) {
        if (model.weight(-1, j) == 0 && model.weight(0, j) == 0 && model.weight(1, j) == 0) {
            return {DegeneracyReport::Kind::ZeroRow, j};
        }
    }
    bool diag = true, antidiag = true;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            if (model.weight(i, j) == 0) continue;
            if (!(i == j)) diag = false;
            if (!(i == -j)) antidiag = false;
        }
    }
    if (diag) return {DegeneracyReport::Kind::Diagonal, 1};
    if (antidiag) return {DegeneracyReport::Kind::Diagonal, -1};
    return {};
}

bool degeneracy_oracle(const KernelPolynomial& kernel, const Rational& t)
{
    if (!(t > 0 && t < 1)) throw input_error("degeneracy_oracle: t outside (0,1)");
    // K specialized at the requested t, viewed as a quadratic in y with
    // coefficients in Q[x], and symmetrically in x.
    std::array<RatPoly, 3> vy, vx;
    for (int q = 0; q < 3; ++q) {
        RatPoly py, px;
        for (int p = 0; p < 3; ++p) {
            py += RatPoly::monomial(kernel.coeff_t(p, q).eval(t), p);
            px += RatPoly::monomial(kernel.coeff_t(q, p).eval(t), p);
        }
        vy[static_cast<std::size_t>(q)] = py;
        vx[static_cast<std::size_t>(q)] = px;
    }
    const bool degx2 = !vx[2].is_zero(); // x^2 appears
    const bool degy2 = !vy[2].is_zero();
    if (!degx2 || !degy2) return true;

    // Reducibility over C for a polynomial genuinely quadratic in y: either
    // the y-view coefficients share a factor in C[x] (gcd is
    // field-independent), or the y-discriminant is a perfect square in C[x].
    RatPoly content = poly_gcd(poly_gcd(vy[0], vy[1]), vy[2]);
    if (content.degree() > 0) return true;
    const RatPoly disc = vy[1] * vy[1] - RatPoly::constant(4) * vy[2] * vy[0];
    return is_square_over_C(disc);
}

std::string HalfPlaneClass::describe() const
{
    switch (classification) {
        case GenusClass::Elliptic: return "elliptic (genus 1)";
        case GenusClass::Genus0Family1: return "genus 0, family 1 (support within i+j >= 0)";
        case GenusClass::Genus0Family2: return "genus 0, family 2 (support within j >= i)";
        case GenusClass::Genus0Family3: return "genus 0, family 3 (support within i+j <= 0)";
        case GenusClass::Genus0Family4: return "genus 0, family 4 (support within j <= i)";
        case GenusClass::DegenerateHalfPlane:
            return "axis-aligned half-plane support (degenerate)";
    }
    return "";
}

HalfPlaneClass genus_classify(const StepSet& steps)
{
    // Since the support lies in {-1,0,1}^2, any closed containing half-plane
    // can be rotated onto one whose inward normal is orthogonal to a support
    // step, and those normals all lie among the 8 compass directions.
    auto contained = [&](int u, int v) {
        for (const Step& s : steps.steps()) {
            if (u * s.i + v * s.j < 0) return false;
        }
        return true;
    };
    for (const Step n : {Step{1, 0}, Step{-1, 0}, Step{0, 1}, Step{0, -1}}) {
        if (contained(n.i, n.j)) return {GenusClass::DegenerateHalfPlane, n};
    }
    const struct { Step n; GenusClass g; } families[] = {
        {{1, 1}, GenusClass::Genus0Family1},
        {{-1, 1}, GenusClass::Genus0Family2},
        {{-1, -1}, GenusClass::Genus0Family3},
        {{1, -1}, GenusClass::Genus0Family4},
    };
    for (const auto& f : families) {
        if (contained(f.n.i, f.n.j)) return {f.g, f.n};
    }
    return {GenusClass::Elliptic, std::nullopt};
}

RatPoly QuarticDiscriminant::affine() const
{
    std::vector<Rational> c(coeff.begin(), coeff.end());
    return RatPoly(std::move(c));
}

std::array<Real, 5> QuarticDiscriminant::coeffs_real() const
{
    std::array<Real, 5> r{};
    for (std::size_t i = 0; i < 5; ++i) r[i] = to_real(coeff[i]);
    return r;
}

QuarticDiscriminant discriminant(const KernelPolynomial& kernel, Axis axis)
{
    const int deg = axis == Axis::X ? kernel.degree_y() : kernel.degree_x();
    if (deg < 2) throw input_error("discriminant: kernel degenerate in the eliminated variable");

    // Quadratic coefficients in the eliminated variable, as bivariate
    // polynomials in (kept variable, t).
    RatPoly2 c0, c1, c2;
    for (int p = 0; p < 3; ++p) {
        for (auto [q, target] : {std::pair<int, RatPoly2*>{0, &c0}, {1, &c1}, {2, &c2}}) {
            const RatPoly& ct = axis == Axis::X ? kernel.coeff_t(p, q) : kernel.coeff_t(q, p);
            for (int k = 0; k <= ct.degree(); ++k) {
                if (ct.coeff(k) != 0) target->at(p, k) += ct.coeff(k);
            }
        }
    }
    RatPoly2 delta = c1 * c1 - RatPoly2::constant(4) * c2 * c0;

    QuarticDiscriminant d;
    d.axis = axis;
    d.t = kernel.t();
    for (int i = 0; i < 5; ++i) {
        RatPoly alpha;
        for (int k = 0; k <= delta.deg_v(); ++k) {
            alpha += RatPoly::monomial(delta.coeff(i, k), k);
        }
        d.coeff_t[static_cast<std::size_t>(i)] = alpha;
        d.coeff[static_cast<std::size_t>(i)] = alpha.eval(d.t);
    }
    return d;
}

} // namespace kw
