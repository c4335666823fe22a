#include <doctest.h>

#include <random>

#include "kernelwalk/errors.hpp"
#include "kernelwalk/kernel.hpp"

using namespace kw;

namespace {

WeightedModel simple_walk()
{
    return parse_model("d 1 0 = 1/4\nd -1 0 = 1/4\nd 0 1 = 1/4\nd 0 -1 = 1/4\nt = 1/2\n");
}

WeightedModel tandem()
{
    return parse_model("d 1 0 = 1/3\nd -1 1 = 1/3\nd 0 -1 = 1/3\nt = 1/3\n");
}

// Equal weights on the support encoded by `mask` over the eight non-origin
// steps; the empty support becomes the stay-at-origin model.
WeightedModel unweighted_support(unsigned mask, const Rational& t)
{
    static const Step kSteps[8] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                   {0, 1},   {1, -1}, {1, 0},  {1, 1}};
    std::map<Step, Rational> w;
    int n = 0;
    for (int b = 0; b < 8; ++b) {
        if (mask & (1u << b)) ++n;
    }
    if (n == 0) {
        w[{0, 0}] = 1;
    } else {
        for (int b = 0; b < 8; ++b) {
            if (mask & (1u << b)) w[kSteps[b]] = Rational(1, n);
        }
    }
    return WeightedModel::create(w, t);
}

StepSet transformed(const StepSet& s, int m00, int m01, int m10, int m11)
{
    std::vector<Step> out;
    for (const Step& st : s.steps()) {
        out.push_back({m00 * st.i + m01 * st.j, m10 * st.i + m11 * st.j});
    }
    return StepSet(std::move(out));
}

} // namespace

TEST_CASE("kernel coefficients of the simple walk")
{
    const KernelPolynomial k = KernelPolynomial::build(simple_walk());
    // K = xy - (t/4)(x^2 y + y + x y^2 + x)
    CHECK(k.coeff(1, 1) == 1);
    CHECK(k.coeff(2, 1) == Rational(-1, 8));
    CHECK(k.coeff(0, 1) == Rational(-1, 8));
    CHECK(k.coeff(1, 2) == Rational(-1, 8));
    CHECK(k.coeff(1, 0) == Rational(-1, 8));
    CHECK(k.coeff(0, 0) == 0);
    CHECK(k.coeff(2, 2) == 0);
    CHECK(k.degree_x() == 2);
    CHECK(k.degree_y() == 2);
}

TEST_CASE("kernel of the stay-at-origin model")
{
    const WeightedModel m = parse_model("d 0 0 = 1\nt = 1/2\n");
    const KernelPolynomial k = KernelPolynomial::build(m);
    CHECK(k.coeff(1, 1) == Rational(1, 2)); // xy(1 - t d00)
    CHECK(k.degree_x() == 1);
}

TEST_CASE("kernel of the tandem model")
{
    const KernelPolynomial k = KernelPolynomial::build(tandem());
    // K = xy - (t/3)(x^2 y + y^2 + x)
    CHECK(k.coeff(2, 1) == Rational(-1, 9));
    CHECK(k.coeff(0, 2) == Rational(-1, 9));
    CHECK(k.coeff(1, 0) == Rational(-1, 9));
    CHECK(k.coeff(1, 1) == 1);
}

TEST_CASE("A/B decompositions rebuild the kernel exactly")
{
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<long> num(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        const WeightedModel m = unweighted_support(static_cast<unsigned>(rng() % 255) + 1,
                                                   Rational(2, 5));
        const KernelPolynomial k = KernelPolynomial::build(m);
        CHECK(k.coeff(0, 0) == -m.t() * m.weight(-1, -1)); // K(0,0;t)
        Rational x(num(rng), 1 + static_cast<long>(rng() % 5));
        Rational y(num(rng), 1 + static_cast<long>(rng() % 5));
        x.canonicalize();
        y.canonicalize();
        // K(x,y) from the coefficient table
        Rational direct = 0;
        for (int p = 2; p >= 0; --p) {
            Rational row = 0;
            for (int q = 2; q >= 0; --q) row = row * y + k.coeff(p, q);
            direct = direct * x + row;
        }
        // xy - t * x(A_{-1} + A_0 y + A_1 y^2) with xA_k = x*A_k(x)
        const Rational via_a =
            x * y - m.t() * (k.xA(-1).eval(x) + k.xA(0).eval(x) * y + k.xA(1).eval(x) * y * y);
        // xy - t * y(B_{-1} + B_0 x + B_1 x^2)
        const Rational via_b =
            x * y - m.t() * (k.yB(-1).eval(y) + k.yB(0).eval(y) * x + k.yB(1).eval(y) * x * x);
        CHECK(direct == via_a);
        CHECK(direct == via_b);
    }
}

TEST_CASE("homogenization matches K and the displayed coefficients")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const WeightedModel m = unweighted_support(static_cast<unsigned>(rng() % 255) + 1,
                                                   Rational(1, 2));
        const KernelPolynomial k = KernelPolynomial::build(m);
        const HomogeneousKernel h = homogenize(k);
        // Kbar(x,1,y,1) = K(x,y): identical coefficient tables
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) CHECK(h.coeff(p, q) == k.coeff(p, q));
        }
        CHECK(h.coeff(2, 2) == -m.t() * m.weight(1, 1));
        CHECK(h.coeff(1, 1) == 1 - m.t() * m.weight(0, 0));
    }
}

TEST_CASE("degeneracy pattern criterion")
{
    // d_{-1,*} all zero, remaining five steps weighted 1/6..
    const WeightedModel case1 = parse_model(
        "d 0 1 = 1/6\nd 1 1 = 1/6\nd 1 0 = 1/6\nd 1 -1 = 1/6\nd 0 -1 = 1/3\nt = 1/2\n");
    const DegeneracyReport r1 = degeneracy_test(case1);
    CHECK(r1.degenerate());
    CHECK(r1.kind == DegeneracyReport::Kind::ZeroColumn);
    CHECK(r1.index == -1);

    CHECK_FALSE(degeneracy_test(simple_walk()).degenerate());

    const WeightedModel case3 = parse_model("d -1 1 = 1/2\nd 1 -1 = 1/2\nt = 1/2\n");
    const DegeneracyReport r3 = degeneracy_test(case3);
    CHECK(r3.degenerate());
    CHECK(r3.kind == DegeneracyReport::Kind::Diagonal);
    CHECK(r3.index == -1);
}

TEST_CASE("degeneracy oracle basics")
{
    const WeightedModel origin = parse_model("d 0 0 = 1\nt = 1/2\n");
    CHECK(degeneracy_oracle(KernelPolynomial::build(origin), Rational(1, 2)));
    CHECK_FALSE(degeneracy_oracle(KernelPolynomial::build(simple_walk()), Rational(1, 2)));
    const WeightedModel case1 = parse_model(
        "d 0 1 = 1/6\nd 1 1 = 1/6\nd 1 0 = 1/6\nd 1 -1 = 1/6\nd 0 -1 = 1/3\nt = 1/2\n");
    CHECK(degeneracy_oracle(KernelPolynomial::build(case1), Rational(1, 2)));
}

TEST_CASE("pattern criterion equals the reducibility oracle on all 256 supports")
{
    for (unsigned mask = 0; mask < 256; ++mask) {
        const WeightedModel m = unweighted_support(mask, Rational(1, 2));
        const bool pattern = degeneracy_test(m).degenerate();
        const bool oracle = degeneracy_oracle(KernelPolynomial::build(m), Rational(1, 2));
        CHECK_MESSAGE(pattern == oracle, "support mask ", mask);
    }
}

TEST_CASE("genus classification")
{
    CHECK(genus_classify(step_set(simple_walk())).classification == GenusClass::Elliptic);
    CHECK(genus_classify(step_set(tandem())).classification == GenusClass::Elliptic);

    const StepSet family1(std::vector<Step>{{-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}});
    CHECK(genus_classify(family1).classification == GenusClass::Genus0Family1);

    const StepSet axis(std::vector<Step>{{1, 0}, {0, 1}});
    CHECK(genus_classify(axis).classification == GenusClass::DegenerateHalfPlane);

    const StepSet family3(std::vector<Step>{{-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}});
    CHECK(genus_classify(family3).classification == GenusClass::Genus0Family3);
}

TEST_CASE("genus classification is equivariant under square symmetries")
{
    // The eight symmetries of the square as integer matrices.
    const int mats[8][4] = {{1, 0, 0, 1},   {0, -1, 1, 0},  {-1, 0, 0, -1}, {0, 1, -1, 0},
                            {0, 1, 1, 0},   {1, 0, 0, -1},  {0, -1, -1, 0}, {-1, 0, 0, 1}};
    auto family_normal = [](GenusClass g) -> Step {
        switch (g) {
            case GenusClass::Genus0Family1: return {1, 1};
            case GenusClass::Genus0Family2: return {-1, 1};
            case GenusClass::Genus0Family3: return {-1, -1};
            case GenusClass::Genus0Family4: return {1, -1};
            default: return {0, 0};
        }
    };
    std::mt19937_64 rng(77);
    int family_cases = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const unsigned mask = static_cast<unsigned>(rng() % 255) + 1;
        const WeightedModel model = unweighted_support(mask, Rational(1, 2));
        const StepSet s = step_set(model);
        const HalfPlaneClass base = genus_classify(s);
        // Family labels are contractual only for nondegenerate models (a
        // degenerate line support sits in two opposite families at once).
        const bool nondegenerate = !degeneracy_test(model).degenerate();
        if (nondegenerate && family_normal(base.classification).i != 0) ++family_cases;
        for (const auto& m : mats) {
            const HalfPlaneClass got = genus_classify(transformed(s, m[0], m[1], m[2], m[3]));
            if (base.classification == GenusClass::Elliptic) {
                CHECK(got.classification == GenusClass::Elliptic);
            } else if (base.classification == GenusClass::DegenerateHalfPlane) {
                CHECK(got.classification == GenusClass::DegenerateHalfPlane);
            } else if (nondegenerate) {
                // the family normal transforms with the support
                const Step n = family_normal(base.classification);
                const Step tn{m[0] * n.i + m[1] * n.j, m[2] * n.i + m[3] * n.j};
                const Step gn = family_normal(got.classification);
                const bool same = (got.classification != GenusClass::Elliptic) &&
                                  (got.classification != GenusClass::DegenerateHalfPlane);
                CHECK(same);
                if (same) {
                    CHECK(gn.i == tn.i);
                    CHECK(gn.j == tn.j);
                }
            }
        }
    }
    CHECK(family_cases > 0);
}

TEST_CASE("discriminant of the simple walk")
{
    const KernelPolynomial k = KernelPolynomial::build(simple_walk());
    const QuarticDiscriminant d = discriminant(k, Axis::X);
    // Delta_1 = (x - t(x^2+1)/4)^2 - t^2 x^2 / 4 at t = 1/2:
    // (x^2-10x+1)(x^2-6x+1)/64
    const RatPoly expect =
        RatPoly({Rational(1), Rational(-10), Rational(1)}) *
        RatPoly({Rational(1), Rational(-6), Rational(1)}).scaled(Rational(1, 64));
    CHECK(d.affine() == expect);
    CHECK(d.coeff[4] == Rational(1, 64)); // alpha4 = t^2/16 at t = 1/2
}

TEST_CASE("alpha4 identity holds symbolically")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<Step, Rational> raw;
        std::uniform_int_distribution<long> num(0, 6);
        for (int i = -1; i <= 1; ++i) {
            for (int j = -1; j <= 1; ++j) {
                const long n = num(rng);
                if (n) raw[{i, j}] = Rational(n, 7);
            }
        }
        if (raw.empty()) continue;
        Rational sum = 0;
        for (auto& [s, w] : raw) sum += w;
        const WeightedModel m = normalize(raw, Rational(1, 3) / sum).model;
        if (degeneracy_test(m).degenerate()) continue;
        const KernelPolynomial k = KernelPolynomial::build(m);
        const QuarticDiscriminant d = discriminant(k, Axis::X);
        const Rational c = m.weight(1, 0) * m.weight(1, 0) -
                           4 * m.weight(1, -1) * m.weight(1, 1);
        CHECK(d.coeff_t[4] == RatPoly::monomial(c, 2)); // t^2 (d10^2 - 4 d1m1 d11)
        // and the beta side symmetrically
        const QuarticDiscriminant dy = discriminant(k, Axis::Y);
        const Rational cy = m.weight(0, 1) * m.weight(0, 1) -
                            4 * m.weight(-1, 1) * m.weight(1, 1);
        CHECK(dy.coeff_t[4] == RatPoly::monomial(cy, 2));
    }
}

TEST_CASE("discriminant equals b^2 - 4ac pointwise (exact)")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-8, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const WeightedModel m = unweighted_support(static_cast<unsigned>(rng() % 255) + 1,
                                                   Rational(1, 2));
        if (degeneracy_test(m).degenerate()) continue;
        const KernelPolynomial k = KernelPolynomial::build(m);
        const QuarticDiscriminant d = discriminant(k, Axis::X);
        Rational x(num(rng), 1 + static_cast<long>(rng() % 7));
        x.canonicalize();
        const auto v = k.y_view();
        const Rational direct =
            v[1].eval(x) * v[1].eval(x) - 4 * v[2].eval(x) * v[0].eval(x);
        CHECK(d.affine().eval(x) == direct);
    }
}

TEST_CASE("discriminant rejects degenerate kernels")
{
    const WeightedModel m = parse_model("d 0 0 = 1\nt = 1/2\n");
    CHECK_THROWS_AS(discriminant(KernelPolynomial::build(m), Axis::X), input_error);
}
