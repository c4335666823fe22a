// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "kernelwalk/classify.hpp"
#include "kernelwalk/continuation.hpp"
#include "kernelwalk/errors.hpp"

using namespace kw;

namespace {

int g_failures = 0;

struct Criterion {
    int number;
    const char* title;
    double time_limit_s;
};

void report_line(const Criterion& c, bool ok, double seconds, const std::string& detail)
{
    const bool in_time = seconds <= c.time_limit_s;
    if (!ok || !in_time) ++g_failures;
    std::printf("%s criterion %2d: %-22s (%.2fs/%.0fs)%s%s\n", (ok && in_time) ? "PASS" : "FAIL",
                c.number, c.title, seconds, c.time_limit_s,
                detail.empty() ? "" : " -- ", detail.c_str());
}

template <typename F>
void run(const Criterion& c, F&& body)
{
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        detail = body();
        ok = true;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_line(c, ok, seconds, detail);
}

[[noreturn]] void fail(const std::string& msg) { throw numeric_error(msg); }

WeightedModel simple_walk()
{
    return parse_model("d 1 0 = 1/4\nd -1 0 = 1/4\nd 0 1 = 1/4\nd 0 -1 = 1/4\nt = 1/2\n");
}

WeightedModel tandem()
{
    return parse_model("d 1 0 = 1/3\nd -1 1 = 1/3\nd 0 -1 = 1/3\nt = 1/3\n");
}

// Seeded random weighted model with a small support (the enumeration oracle
// is exponential in the depth).
WeightedModel random_small_model(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, 8);
    std::uniform_int_distribution<long> num(1, 12);
    std::map<Step, Rational> raw;
    const int support = 2 + static_cast<int>(rng() % 4u); // 2..5 steps
    while (static_cast<int>(raw.size()) < support) {
        const int idx = pick(rng);
        raw[{idx / 3 - 1, idx % 3 - 1}] = Rational(num(rng), num(rng));
    }
    Rational sum = 0;
    for (auto& [s, w] : raw) sum += w;
    return normalize(raw, Rational(1, 2) / sum).model;
}

WeightedModel unweighted_support(unsigned mask)
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
    return WeightedModel::create(w, Rational(1, 2));
}

std::vector<WeightedModel> five_models()
{
    std::vector<WeightedModel> models{simple_walk(), tandem()};
    std::mt19937_64 rng(20240401);
    for (int i = 0; i < 3; ++i) models.push_back(random_small_model(rng));
    return models;
}

std::vector<WeightedModel> ten_elliptic_models()
{
    std::vector<WeightedModel> out{
        simple_walk(), tandem(),
        parse_model("d 1 0 = 1/3\nd 0 1 = 1/3\nd -1 -1 = 1/3\nt = 1/4\n"),   // kreweras
        parse_model("d -1 0 = 1/3\nd 0 -1 = 1/3\nd 1 1 = 1/3\nt = 1/4\n"),   // reverse kreweras
        parse_model("d 1 0 = 1/4\nd -1 0 = 1/4\nd 1 1 = 1/4\nd -1 -1 = 1/4\nt = 1/3\n"),
        parse_model("d 1 0 = 1/4\nd -1 0 = 1/4\nd -1 1 = 1/4\nd 1 -1 = 1/4\nt = 1/3\n"),
        parse_model("d -1 -1 = 1/8\nd -1 0 = 1/8\nd -1 1 = 1/8\nd 0 -1 = 1/8\nd 0 1 = "
                    "1/8\nd 1 -1 = 1/8\nd 1 0 = 1/8\nd 1 1 = 1/8\nt = 1/2\n"),
        parse_model("d 1 1 = 1/4\nd -1 1 = 1/4\nd 1 -1 = 1/4\nd -1 -1 = 1/4\nt = 1/2\n"),
        parse_model("d 1 1 = 1/7\nd -1 0 = 3/7\nd 0 -1 = 3/7\nt = 1/2\n"),
        parse_model("d 1 1 = 1/5\nd 1 0 = 1/5\nd -1 0 = 2/5\nd 0 -1 = 1/5\nt = 1/3\n"),
    };
    return out;
}

std::string criterion1()
{
    for (const WeightedModel& m : five_models()) {
        const SeriesTable dp = count_walks(m, 10);
        const SeriesTable oracle = enumerate_walks_oracle(m, 10);
        for (int k = 0; k <= 10; ++k) {
            for (int i = 0; i <= k; ++i) {
                for (int j = 0; j <= k; ++j) {
                    if (dp.coeff(i, j, k) != oracle.coeff(i, j, k)) {
                        fail("q mismatch at (" + std::to_string(i) + "," + std::to_string(j) +
                             "," + std::to_string(k) + ")");
                    }
                }
            }
        }
    }
    return "5 models, K<=10, exact rational equality";
}

std::string criterion2()
{
    for (const WeightedModel& m : five_models()) {
        if (!check_functional_equation(m, 10)) fail("functional equation mismatch");
    }
    return "exact identity modulo t^11 on 5 models";
}

std::string criterion3()
{
    for (unsigned mask = 0; mask < 256; ++mask) {
        const WeightedModel m = unweighted_support(mask);
        const bool pattern = degeneracy_test(m).degenerate();
        const bool oracle = degeneracy_oracle(KernelPolynomial::build(m), Rational(1, 2));
        if (pattern != oracle) fail("disagreement at support mask " + std::to_string(mask));
    }
    return "pattern == reducibility oracle on all 256 supports";
}

std::string criterion4()
{
    const CurveAnalytics ca = analyze_curve(simple_walk());
    const Real expected[] = {5 - 2 * std::sqrt(6.0L), 3 - 2 * std::sqrt(2.0L),
                             3 + 2 * std::sqrt(2.0L), 5 + 2 * std::sqrt(6.0L)};
    Real worst = 0;
    for (int i = 0; i < 4; ++i) {
        if (ca.branch.a[i].infinite) fail("unexpected infinite branch point");
        worst = std::max(worst, std::abs(ca.branch.a[i].value - expected[i]));
    }
    if (worst >= 1e-10L) fail("branch point error " + std::to_string(static_cast<double>(worst)));
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |a_i - exact| = %.2e", static_cast<double>(worst));
    return buf;
}

std::string criterion5()
{
    Real worst_rel = 0;
    for (const WeightedModel& m : ten_elliptic_models()) {
        const CurveAnalytics ca = analyze_curve(m);
        if (!(ca.per.omega1.real() == 0 && ca.per.omega1.imag() > 0)) {
            fail("omega1 not purely imaginary positive");
        }
        if (!(ca.per.omega2 > 0)) fail("omega2 not positive");
        if (!(ca.om3.value > 0 && ca.om3.value < ca.per.omega2)) {
            fail("omega3 outside (0, omega2)");
        }
        // step-halving stability
        QuadratureControl coarse;
        coarse.rel_tol = 1e-19L;
        coarse.max_level = 9;
        QuadratureControl fine = coarse;
        fine.max_level = 10;
        const Periods pc = periods(ca.disc_x, ca.branch.a, coarse);
        const Periods pf = periods(ca.disc_x, ca.branch.a, fine);
        worst_rel = std::max(worst_rel, std::abs(pc.omega1.imag() - pf.omega1.imag()) /
                                            pf.omega1.imag());
        worst_rel = std::max(worst_rel, std::abs(pc.omega2 - pf.omega2) / pf.omega2);
        if (worst_rel >= 1e-10L) fail("step-halving change above 1e-10 relative");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "10 models; worst halving change %.2e",
                  static_cast<double>(worst_rel));
    return buf;
}

std::string criterion6()
{
    const CurveAnalytics simple = analyze_curve(simple_walk());
    if (std::abs(simple.om3.value / simple.per.omega2 - 0.5L) >= 1e-9L) {
        fail("simple walk omega3/omega2 != 1/2 within 1e-9");
    }
    const auto ws = sample_omegas(simple, 1, 6);
    const auto n1 = orbit_probe(uniformize(ws[0], simple.uni, simple.lattice), simple.kernel,
                                100);
    if (!n1 || *n1 != 2) fail("simple walk first return != 2");

    const CurveAnalytics tan = analyze_curve(tandem());
    const Real r = tan.om3.value / tan.per.omega2;
    if (std::min(std::abs(r - 1.0L / 3), std::abs(r - 2.0L / 3)) >= 1e-9L) {
        fail("tandem omega3/omega2 has no denominator-3 value within 1e-9");
    }
    const auto wt = sample_omegas(tan, 1, 6);
    const auto n2 = orbit_probe(uniformize(wt[0], tan.uni, tan.lattice), tan.kernel, 100);
    if (!n2 || *n2 != 3) fail("tandem first return != 3");
    return "simple: ratio 1/2, return 2; tandem: denominator 3, return 3";
}

std::string criterion7()
{
    Real worst = 0;
    for (const WeightedModel& m : {simple_walk(), tandem()}) {
        const CurveAnalytics ca = analyze_curve(m);
        const auto omegas = sample_omegas(ca, 100, 0);
        for (const Complex& w : omegas) {
            const CurvePoint p = uniformize(w, ca.uni, ca.lattice);
            worst = std::max(worst, kernel_residual(p, ca.kernel));
            worst = std::max(worst, chordal(x_of_omega(-w, ca.uni, ca.lattice), p.x));
            worst = std::max(worst,
                             chordal(y_of_omega(-w + ca.om3.value, ca.uni, ca.lattice), p.y));
            const CurvePoint p3 = uniformize(w + ca.om3.value, ca.uni, ca.lattice);
            const CurvePoint sp = qrt_sigma(p, ca.kernel);
            worst = std::max(worst, std::max(chordal(p3.x, sp.x), chordal(p3.y, sp.y)));
        }
    }
    if (worst >= 1e-8L) fail("residual above 1e-8");
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e over 100 samples x 2 models",
                  static_cast<double>(worst));
    return buf;
}

std::string criterion8()
{
    Real worst_ode = 0, worst_per = 0;
    for (const WeightedModel& m : {simple_walk(), tandem()}) {
        const CurveAnalytics ca = analyze_curve(m);
        const LatticeContext& ctx = ca.lattice;
        for (const Complex& w : sample_omegas(ca, 50, 0)) {
            const Complex p = ctx.wp(w);
            const Complex dp = ctx.wp_prime(w);
            const Complex lhs = dp * dp;
            const Complex rhs = Real(4) * p * p * p - ctx.g2() * p - ctx.g3();
            const Real scale = std::abs(lhs) + std::abs(4.0L * p * p * p) +
                               std::abs(ctx.g2() * p) + std::abs(ctx.g3()) + 1;
            worst_ode = std::max(worst_ode, std::abs(lhs - rhs) / scale);
            const Real ps = 1 + std::abs(p);
            worst_per = std::max(worst_per, std::abs(ctx.wp(-w) - p) / ps);
            worst_per = std::max(worst_per, std::abs(ctx.wp(w + ctx.omega1()) - p) / ps);
            worst_per = std::max(worst_per, std::abs(ctx.wp(w + ctx.omega2()) - p) / ps);
        }
    }
    if (worst_ode >= 1e-8L) fail("wp ODE residual above 1e-8");
    if (worst_per >= 1e-10L) fail("wp evenness/periodicity above 1e-10");
    char buf[80];
    std::snprintf(buf, sizeof buf, "ode %.2e, even+periodicity %.2e",
                  static_cast<double>(worst_ode), static_cast<double>(worst_per));
    return buf;
}

std::string criterion9()
{
    const CurveAnalytics ca = analyze_curve(simple_walk());
    const Continuator cont(ca, ContinuationConfig::with_truncation(40, Rational(1, 2)));
    std::vector<Complex> overlap;
    for (const Complex& w : sample_omegas(ca, 4000, 0)) {
        if (static_cast<int>(overlap.size()) >= 50) break;
        if (cont.in_base_domain_x(w) && cont.in_base_domain_y(w)) overlap.push_back(w);
    }
    if (overlap.size() < 50) fail("could not collect 50 overlap samples");
    Real worst = 0;
    for (const Complex& w : overlap) {
        worst = std::max(worst, cont.identity_check(w));
        const Complex r = cont.continue_rx(w);
        worst = std::max(worst, std::abs(cont.continue_rx(w + ca.per.omega1) - r));
        worst = std::max(worst,
                         std::abs(cont.continue_rx(w + ca.om3.value) - r - cont.bx(w)));
    }
    if (worst >= 1e-6L) fail("continuation residual above 1e-6");
    char buf[80];
    std::snprintf(buf, sizeof buf, "max residual %.2e at 50 overlap points, N=40",
                  static_cast<double>(worst));
    return buf;
}

std::string criterion10()
{
    std::vector<std::string> broken;

    // Clause 1: stay-at-origin is algebraic with closed form matching the
    // series to k = 10.
    const WeightedModel origin = parse_model("d 0 0 = 1\nt = 1/2\n");
    const NatureReport rep_origin = classify_model(origin);
    if (rep_origin.verdict != Nature::Algebraic || !rep_origin.closed_form) {
        broken.push_back("origin model not Algebraic-with-closed-form");
    } else {
        const SeriesTable t = count_walks(origin, 10);
        for (int k = 0; k <= 10; ++k) {
            if (t.coeff(0, 0, k) != rep_origin.closed_form->series_coeff(k)) {
                broken.push_back("closed form mismatch at k=" + std::to_string(k));
                break;
            }
        }
    }

    // Clause 2: family-1 model is differentially transcendental.
    const NatureReport rep_f1 = classify_model(parse_model(
        "d -1 1 = 1/5\nd 0 1 = 1/5\nd 1 1 = 1/5\nd 1 0 = 1/5\nd 1 -1 = 1/5\nt = 1/2\n"));
    if (rep_f1.verdict != Nature::DifferentiallyTranscendental) {
        broken.push_back("family-1 model not DifferentiallyTranscendental");
    }

    // Clause 3: simple walk is differentially algebraic.
    if (classify_model(simple_walk()).verdict != Nature::DifferentiallyAlgebraic) {
        broken.push_back("simple walk not DifferentiallyAlgebraic");
    }

    // Clause 4 (checklist-literal): the stated expectation for this model is
    // EquivalentUndecided with InfinitePresumed(200). Its support is
    // Kreweras-type, where sigma^3 = id identically in the weights, so the
    // group is finite of order 6 and the verdict is DifferentiallyAlgebraic;
    // the clause cannot pass (see README, "Acceptance suite").
    const NatureReport rep_inf = classify_model(
        parse_model("d 1 1 = 1/7\nd -1 0 = 3/7\nd 0 -1 = 3/7\nt = 1/2\n"));
    if (rep_inf.verdict != Nature::EquivalentUndecided || !rep_inf.group ||
        rep_inf.group->finite || rep_inf.group->bound_checked != 200) {
        std::string got = "verdict " + kw::to_string(rep_inf.verdict);
        if (rep_inf.group && rep_inf.group->finite) {
            got += ", group Finite(k=" + std::to_string(rep_inf.group->k) +
                   ", l=" + std::to_string(rep_inf.group->ell) + ", order " +
                   std::to_string(rep_inf.group->order_group) + ")";
        }
        broken.push_back("weighted d11=1/7,d-10=3/7,d0-1=3/7 expected EquivalentUndecided/"
                         "InfinitePresumed(200) but " + got +
                         "; expectation unattainable: Kreweras-type support has "
                         "sigma^3 = id for all weights (README, Acceptance suite)");
    }

    // Clause 5: exhaustive 256-support run completes without error.
    int undecided = 0;
    for (unsigned mask = 0; mask < 256; ++mask) {
        const NatureReport rep = classify_model(unweighted_support(mask));
        undecided += rep.verdict == Nature::EquivalentUndecided ? 1 : 0;
    }

    std::string summary = "clauses 1-3,5 ok; 256-support run clean (" +
                          std::to_string(undecided) + " undecided)";
    if (!broken.empty()) {
        std::string msg = std::to_string(broken.size()) + " clause(s) failed: ";
        for (const auto& b : broken) msg += b + "; ";
        msg += "[" + summary + "]";
        fail(msg);
    }
    return summary;
}

} // namespace

int main()
{
    std::printf("kernelwalk acceptance suite\n");
    run({1, "series vs oracle", 5}, criterion1);
    run({2, "functional equation", 10}, criterion2);
    run({3, "degeneracy oracle", 60}, criterion3);
    run({4, "branch points", 1}, criterion4);
    run({5, "period typing", 30}, criterion5);
    run({6, "group orders", 30}, criterion6);
    run({7, "uniformization", 30}, criterion7);
    run({8, "wp validation", 10}, criterion8);
    run({9, "continuation", 60}, criterion9);
    run({10, "classification table", 120}, criterion10);
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
