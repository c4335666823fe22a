#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kernelwalk/errors.hpp"
#include "kernelwalk/report.hpp"

namespace {

using namespace kw;
using report::json;

struct GlobalOptions {
    bool emit_json = false;
    bool do_normalize = false;
    std::uint64_t seed = 0;
    int precision_bits = 64;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Parses the model file; with --normalize, raw weights with any positive sum
// are accepted and rescaled.
std::pair<WeightedModel, Rational> load_model(const std::string& path, bool do_normalize)
{
    const std::string text = read_file(path);
    if (!do_normalize) return {parse_model(text), Rational(1)};
    // Re-read the weight lines leniently through the normalize entry point.
    std::map<Step, Rational> weights;
    Rational t_raw;
    bool have_t = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "d") {
            int i, j;
            std::string eq, val;
            if (!(ls >> i >> j >> eq >> val) || eq != "=") {
                throw input_error("bad weight line: " + line);
            }
            weights[{i, j}] = parse_rational(val);
        } else if (key == "t") {
            std::string eq, val;
            if (!(ls >> eq >> val) || eq != "=") throw input_error("bad t line: " + line);
            t_raw = parse_rational(val);
            have_t = true;
        } else {
            throw input_error("unknown key '" + key + "'");
        }
    }
    if (!have_t) throw input_error("missing 't = <p>/<q>' line");
    NormalizeResult r = normalize(weights, t_raw);
    return {r.model, r.scale};
}

CurveOptions curve_options(const GlobalOptions& g)
{
    CurveOptions o;
    o.precision_bits = g.precision_bits;
    return o;
}

void emit(const json& doc, const GlobalOptions& g)
{
    if (g.emit_json) {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << report::render_text(doc);
    }
}

int run(int argc, char** argv)
{
    CLI::App app{"kernelwalk: weighted quarter-plane walk analyzer"};
    app.require_subcommand(1);
    // Let global flags (--json, --seed, ...) appear after the subcommand.
    app.fallthrough();

    GlobalOptions g;
    if (const char* env = std::getenv("KERNELWALK_PRECISION")) {
        g.precision_bits = std::atoi(env);
        if (g.precision_bits <= 0) throw input_error("bad KERNELWALK_PRECISION value");
    }
    app.add_flag("--json", g.emit_json, "emit the machine-readable JSON report");
    app.add_flag("--normalize", g.do_normalize,
                 "accept raw weights with any positive sum and rescale t");
    app.add_option("--seed", g.seed, "seed for sampling-based checks (default 0)");
    app.add_option("--precision", g.precision_bits,
                   "working precision bits for root refinement (default 64)");

    std::string file;
    int max_steps = 10;
    int feq_order = -1;
    long max_denominator = 200;
    int samples = 50;
    int truncation = 40;

    auto* series_cmd = app.add_subcommand("series", "exact walk-count coefficients");
    series_cmd->add_option("file", file)->required();
    series_cmd->add_option("--max-steps", max_steps, "table depth K (default 10)");
    series_cmd->add_option("--check-feq", feq_order,
                           "verify the functional equation exactly to this t-order");

    auto* kernel_cmd = app.add_subcommand("kernel", "kernel polynomial and degeneracy");
    kernel_cmd->add_option("file", file)->required();

    auto* curve_cmd = app.add_subcommand("curve", "branch points, periods, uniformization");
    curve_cmd->add_option("file", file)->required();
    curve_cmd->add_option("--precision", g.precision_bits, "precision bits");

    auto* group_cmd = app.add_subcommand("group", "group of the walk at the model's t");
    group_cmd->add_option("file", file)->required();
    group_cmd->add_option("--max-denominator", max_denominator,
                          "denominator bound for omega3/omega2 (default 200)");

    auto* continue_cmd =
        app.add_subcommand("continue", "meromorphic continuation residual checks");
    continue_cmd->add_option("file", file)->required();
    continue_cmd->add_option("--samples", samples, "overlap sample count (default 50)");
    continue_cmd->add_option("--truncation", truncation, "series truncation N (default 40)");

    auto* classify_cmd = app.add_subcommand("classify", "differential-algebraic nature");
    classify_cmd->add_option("file", file)->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline report");
    analyze_cmd->add_option("file", file)->required();
    analyze_cmd->add_option("--max-steps", max_steps, "series depth (default 10)");
    analyze_cmd->add_option("--samples", samples, "sample count (default 50)");
    analyze_cmd->add_option("--truncation", truncation, "series truncation N (default 40)");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    auto [model, scale] = load_model(file, g.do_normalize);
    json doc = report::make_document(g.seed, g.precision_bits);
    doc["model"] = report::model_section(model, scale);

    const bool elliptic_ok = !degeneracy_test(model).degenerate() &&
                             genus_classify(step_set(model)).classification ==
                                 GenusClass::Elliptic;

    if (series_cmd->parsed()) {
        doc["series"] =
            report::series_section(count_walks(model, max_steps), feq_order, model);
    } else if (kernel_cmd->parsed()) {
        doc["kernel"] = report::kernel_section(KernelPolynomial::build(model));
    } else if (curve_cmd->parsed()) {
        const CurveAnalytics ca = analyze_curve(model, curve_options(g));
        doc["curve"] = report::curve_section(ca, 100, g.seed);
    } else if (group_cmd->parsed()) {
        const CurveAnalytics ca = analyze_curve(model, curve_options(g));
        GroupOptions opt;
        opt.max_denominator = max_denominator;
        opt.seed = g.seed;
        doc["group"] = report::group_section(group_report(ca, opt));
    } else if (continue_cmd->parsed()) {
        const CurveAnalytics ca = analyze_curve(model, curve_options(g));
        Continuator cont(ca, ContinuationConfig::with_truncation(truncation, model.t()));
        doc["continuation"] = report::continuation_section(cont, samples, g.seed);
    } else if (classify_cmd->parsed()) {
        ClassifyOptions opt;
        opt.group.seed = g.seed;
        opt.curve = curve_options(g);
        doc["classification"] = report::classification_section(classify_model(model, opt));
    } else if (analyze_cmd->parsed()) {
        doc["series"] = report::series_section(count_walks(model, max_steps), 10, model);
        doc["kernel"] = report::kernel_section(KernelPolynomial::build(model));
        if (elliptic_ok) {
            const CurveAnalytics ca = analyze_curve(model, curve_options(g));
            doc["curve"] = report::curve_section(ca, samples, g.seed);
            GroupOptions gopt;
            gopt.seed = g.seed;
            const GroupReport grep = group_report(ca, gopt);
            doc["group"] = report::group_section(grep);
            Continuator cont(ca,
                             ContinuationConfig::with_truncation(truncation, model.t()));
            doc["continuation"] = report::continuation_section(cont, samples, g.seed);
        }
        ClassifyOptions copt;
        copt.group.seed = g.seed;
        copt.curve = curve_options(g);
        doc["classification"] = report::classification_section(classify_model(model, copt));
    }

    const auto errs = report::validate_report(doc);
    if (!errs.empty()) {
        std::cerr << "internal error: report failed schema validation:\n";
        for (const auto& e : errs) std::cerr << "  " << e << '\n';
        return 2;
    }
    emit(doc, g);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const kw::input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const kw::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
