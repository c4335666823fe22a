#include <cmath>

#include "kernelwalk/curve.hpp"
#include "kernelwalk/errors.hpp"

namespace kw {

namespace {

constexpr Real kPi = 3.14159265358979323846264338327950288L;
constexpr int kMaxTerms = 20000;

} // namespace

LatticeContext LatticeContext::create(const Complex& omega1, Real omega2, int multiplier)
{
    if (multiplier < 1) throw input_error("lattice multiplier must be >= 1");
    if (!(omega2 > 0)) throw input_error("omega2 must be positive");
    if (!(omega1.imag() > 0)) throw input_error("omega1 must have positive imaginary part");
    LatticeContext ctx;
    ctx.omega1_ = omega1;
    ctx.omega2_ = omega2;
    ctx.multiplier_ = multiplier;
    ctx.tau_ = omega1 / (multiplier * omega2);
    if (!(ctx.tau_.imag() > 0)) throw numeric_error("lattice tau left the upper half-plane");
    ctx.q_ = std::exp(Complex(0, 2 * kPi) * ctx.tau_);
    ctx.qabs_ = std::abs(ctx.q_);
    if (ctx.qabs_ >= 1) throw numeric_error("lattice nome |q| >= 1 (corrupt periods)");
    if (ctx.qabs_ > 0.985L) {
        throw numeric_error("lattice too elongated for the nome series (|q| > 0.985)");
    }

    // Invariants of Z + tau Z via Eisenstein series, then rescaled. tau is
    // purely imaginary here, so the nome is real.
    Real e4 = 0, e6 = 0;
    if (std::abs(ctx.q_.imag()) > 1e-17L * ctx.qabs_) {
        throw numeric_error("lattice nome is not real (omega1 not purely imaginary?)");
    }
    const Real qr = ctx.q_.real();
    Real qn = 1;
    for (int n = 1; n <= kMaxTerms; ++n) {
        qn *= qr;
        const Real n2 = static_cast<Real>(n) * n;
        const Real term4 = n2 * n * qn / (1 - qn);
        const Real term6 = n2 * n2 * static_cast<Real>(n) * qn / (1 - qn);
        e4 += term4;
        e6 += term6;
        if (std::abs(term4) < 1e-22L * (1 + std::abs(e4)) &&
            std::abs(term6) < 1e-22L * (1 + std::abs(e6))) {
            break;
        }
        if (n == kMaxTerms) throw numeric_error("Eisenstein series did not converge");
    }
    const Real E4 = 1 + 240 * e4;
    const Real E6 = 1 - 504 * e6;
    const Real gen2 = multiplier * omega2;
    const Real pi4 = kPi * kPi * kPi * kPi;
    ctx.g2_ = (4 * pi4 / 3) * E4 / (gen2 * gen2 * gen2 * gen2);
    ctx.g3_ = (8 * pi4 * kPi * kPi / 27) * E6 / std::pow(gen2, Real(6));

    // Self-validation: wp must satisfy its differential equation on this
    // lattice, or the periods fed in were corrupt.
    static const Real samples[][2] = {{0.171L, 0.293L}, {0.437L, 0.613L}, {0.659L, 0.217L},
                                      {0.313L, 0.771L}};
    for (const auto& ab : samples) {
        const Complex z = ab[0] * gen2 + ab[1] * ctx.omega1_;
        const Complex wp = ctx.wp(z);
        const Complex dp = ctx.wp_prime(z);
        const Complex lhs = dp * dp;
        const Complex rhs = Real(4) * wp * wp * wp - ctx.g2_ * wp - ctx.g3_;
        const Real scale = std::abs(lhs) + std::abs(Real(4) * wp * wp * wp) +
                           std::abs(ctx.g2_ * wp) + std::abs(ctx.g3_) + 1;
        if (std::abs(lhs - rhs) / scale > 1e-8L) {
            throw numeric_error("lattice_context: wp differential-equation self-check failed");
        }
    }
    return ctx;
}

void LatticeContext::coords(const Complex& z, Real& alpha, Real& beta) const
{
    // z = (alpha + beta * tau) * gen2, generators gen2 and gen2 * tau.
    const Real gen2 = multiplier_ * omega2_;
    const Complex u = z / gen2;
    beta = u.imag() / tau_.imag();
    alpha = u.real() - beta * tau_.real();
}

Complex LatticeContext::reduce(const Complex& z) const
{
    Real a, b;
    coords(z, a, b);
    const Real ar = a - std::floor(a + 0.5L);
    const Real br = b - std::floor(b + 0.5L);
    const Real gen2 = multiplier_ * omega2_;
    return (ar + br * tau_) * gen2;
}

Real LatticeContext::pole_distance(const Complex& z) const
{
    return std::abs(reduce(z));
}

Complex LatticeContext::wp(const Complex& z) const
{
    Real a, b;
    coords(z, a, b);
    a -= std::floor(a + 0.5L);
    b -= std::floor(b + 0.5L);
    const Complex u = a + b * tau_;
    if (std::abs(u) < 1e-12L) {
        throw numeric_error("wp: argument within pole-proximity tolerance of a lattice point");
    }
    const Complex y = std::exp(Complex(0, 2 * kPi) * u);

    const Complex one(1);
    Complex sum = Complex(1.0L / 12.0L) + y / ((one - y) * (one - y));
    Complex qn(1);
    for (int n = 1; n <= kMaxTerms; ++n) {
        qn *= q_;
        const Complex qy = qn * y;
        const Complex qiy = qn / y;
        const Complex t1 = qy / ((one - qy) * (one - qy));
        const Complex t2 = qiy / ((one - qiy) * (one - qiy));
        const Complex t3 = qn / ((one - qn) * (one - qn));
        const Complex term = t1 + t2 - Real(2) * t3;
        sum += term;
        if (std::abs(term) < 1e-23L * (1 + std::abs(sum))) break;
        if (n == kMaxTerms) throw numeric_error("wp series did not converge");
    }
    const Real gen2 = multiplier_ * omega2_;
    const Complex twopii(0, 2 * kPi);
    return twopii * twopii * sum / (gen2 * gen2);
}

Complex LatticeContext::wp_prime(const Complex& z) const
{
    Real a, b;
    coords(z, a, b);
    a -= std::floor(a + 0.5L);
    b -= std::floor(b + 0.5L);
    const Complex u = a + b * tau_;
    if (std::abs(u) < 1e-12L) {
        throw numeric_error("wp_prime: argument within pole-proximity tolerance of a "
                            "lattice point");
    }
    const Complex y = std::exp(Complex(0, 2 * kPi) * u);

    const Complex one(1);
    auto cube = [](const Complex& w) { return w * w * w; };
    Complex sum = y * (one + y) / cube(one - y);
    Complex qn(1);
    for (int n = 1; n <= kMaxTerms; ++n) {
        qn *= q_;
        const Complex qy = qn * y;
        const Complex qiy = qn / y;
        const Complex t1 = qy * (one + qy) / cube(one - qy);
        const Complex t2 = qiy * (one + qiy) / cube(one - qiy);
        const Complex term = t1 - t2;
        sum += term;
        if (std::abs(term) < 1e-23L * (1 + std::abs(sum))) break;
        if (n == kMaxTerms) throw numeric_error("wp_prime series did not converge");
    }
    const Real gen2 = multiplier_ * omega2_;
    const Complex twopii(0, 2 * kPi);
    return twopii * twopii * twopii * sum / (gen2 * gen2 * gen2);
}

} // namespace kw
