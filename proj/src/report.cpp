#include "kernelwalk/report.hpp"

#include "kernelwalk/errors.hpp"

#include <cmath>
#include <cstdio>

namespace kw::report {

namespace {

double d(Real v) { return static_cast<double>(v); }

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json branch_point_json(const BranchPoint& p)
{
    json j;
    if (p.infinite) {
        j["infinite"] = true;
    } else {
        j["infinite"] = false;
        j["value"] = d(p.value);
        j["radius"] = d(p.radius);
    }
    return j;
}

} // namespace

json value_with_error(Real value, Real error)
{
    return json{{"value", d(value)}, {"error", d(error)}};
}

json model_section(const WeightedModel& model, const Rational& scale)
{
    json weights = json::array();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const Rational& w = model.weight(i, j);
            if (w != 0) {
                weights.push_back(json{{"i", i}, {"j", j}, {"value", to_string(w)}});
            }
        }
    }
    json steps = json::array();
    const StepSet support = step_set(model);
    for (const Step& s : support.steps()) {
        steps.push_back(json{{"i", s.i}, {"j", s.j}});
    }
    return json{{"weights", weights},
                {"t", to_string(model.t())},
                {"scale", to_string(scale)},
                {"step_set", steps}};
}

json series_section(const SeriesTable& table, int feq_order, const WeightedModel& model)
{
    json entries = json::array();
    for (int k = 0; k <= table.max_steps(); ++k) {
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                const Rational& q = table.coeff(i, j, k);
                if (q != 0) {
                    entries.push_back(
                        json{{"i", i}, {"j", j}, {"k", k}, {"value", to_string(q)}});
                }
            }
        }
    }
    json sec{{"max_steps", table.max_steps()}, {"entries", entries}};
    if (feq_order >= 0) {
        const bool exact = table.max_steps() >= feq_order
                               ? check_functional_equation(model, table, feq_order)
                               : check_functional_equation(model, feq_order);
        sec["functional_equation"] = json{{"order", feq_order}, {"exact", exact}};
    }
    return sec;
}

json kernel_section(const KernelPolynomial& kernel)
{
    json coeffs = json::array();
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            const Rational c = kernel.coeff(p, q);
            if (c != 0) {
                coeffs.push_back(json{{"x_power", p}, {"y_power", q}, {"value", to_string(c)}});
            }
        }
    }
    const DegeneracyReport deg = degeneracy_test(kernel.model());
    const HalfPlaneClass hp = genus_classify(step_set(kernel.model()));
    json sec{{"coefficients", coeffs},
             {"degenerate", deg.degenerate()},
             {"degeneracy", deg.describe()},
             {"genus", hp.describe()}};
    if (!deg.degenerate()) {
        for (Axis axis : {Axis::X, Axis::Y}) {
            const QuarticDiscriminant disc = discriminant(kernel, axis);
            json alpha = json::array();
            for (int i = 0; i < 5; ++i) {
                alpha.push_back(to_string(disc.coeff[static_cast<std::size_t>(i)]));
            }
            sec[axis == Axis::X ? "discriminant_x" : "discriminant_y"] = alpha;
        }
    }
    return sec;
}

json curve_section(const CurveAnalytics& ca, int residual_samples, std::uint64_t seed)
{
    json sec;
    json a = json::array(), b = json::array();
    for (int i = 0; i < 4; ++i) {
        a.push_back(branch_point_json(ca.branch.a[static_cast<std::size_t>(i)]));
        b.push_back(branch_point_json(ca.branch.b[static_cast<std::size_t>(i)]));
    }
    sec["branch_points_x"] = a;
    sec["branch_points_y"] = b;
    sec["omega1_imag"] = value_with_error(ca.per.omega1.imag(), ca.per.err1);
    sec["omega2"] = value_with_error(ca.per.omega2, ca.per.err2);
    sec["omega3"] = value_with_error(ca.om3.value, ca.om3.err);
    sec["omega3_over_omega2"] = d(ca.om3.value / ca.per.omega2);
    sec["lattice"] = json{{"tau_imag", d(ca.lattice.tau().imag())},
                          {"nome_abs", d(std::abs(ca.lattice.nome()))},
                          {"g2", d(ca.lattice.g2())},
                          {"g3", d(ca.lattice.g3())}};
    sec["uniformization"] = json{{"a4_infinite", ca.uni.x_infinite_case},
                                 {"b4_infinite", ca.uni.y_infinite_case},
                                 {"y_shift_re", d(ca.uni.y_shift.real())},
                                 {"y_shift_im", d(ca.uni.y_shift.imag())}};

    Real max_curve = 0, max_inv1 = 0, max_inv2 = 0, max_translation = 0;
    Real max_ode = 0, max_even = 0, max_periodic = 0;
    const auto omegas = sample_omegas(ca, residual_samples, seed);
    for (const Complex& omega : omegas) {
        const CurvePoint p = uniformize(omega, ca.uni, ca.lattice);
        max_curve = std::max(max_curve, kernel_residual(p, ca.kernel));
        max_inv1 = std::max(max_inv1, chordal(x_of_omega(-omega, ca.uni, ca.lattice), p.x));
        max_inv2 = std::max(
            max_inv2, chordal(y_of_omega(-omega + ca.om3.value, ca.uni, ca.lattice), p.y));
        const CurvePoint p3 = uniformize(omega + ca.om3.value, ca.uni, ca.lattice);
        const CurvePoint sp = qrt_sigma(p, ca.kernel);
        max_translation = std::max(
            max_translation, std::max(chordal(p3.x, sp.x), chordal(p3.y, sp.y)));

        const Complex wp = ca.lattice.wp(omega);
        const Complex wpp = ca.lattice.wp_prime(omega);
        const Complex lhs = wpp * wpp;
        const Complex rhs = Real(4) * wp * wp * wp - ca.lattice.g2() * wp - ca.lattice.g3();
        const Real scale = std::abs(lhs) + std::abs(Real(4) * wp * wp * wp) +
                           std::abs(ca.lattice.g2() * wp) + std::abs(ca.lattice.g3()) + 1;
        max_ode = std::max(max_ode, std::abs(lhs - rhs) / scale);
        const Real wpscale = 1 + std::abs(wp);
        max_even = std::max(max_even, std::abs(ca.lattice.wp(-omega) - wp) / wpscale);
        max_periodic = std::max(
            max_periodic, std::abs(ca.lattice.wp(omega + ca.lattice.omega1()) - wp) / wpscale);
        max_periodic = std::max(
            max_periodic,
            std::abs(ca.lattice.wp(omega + ca.lattice.multiplier() * ca.lattice.omega2()) - wp) /
                wpscale);
    }
    sec["residuals"] = json{{"samples", static_cast<int>(omegas.size())},
                            {"curve_max", d(max_curve)},
                            {"involution1_lift_max", d(max_inv1)},
                            {"involution2_lift_max", d(max_inv2)},
                            {"translation_max", d(max_translation)},
                            {"wp_ode_max", d(max_ode)},
                            {"wp_even_max", d(max_even)},
                            {"wp_periodicity_max", d(max_periodic)}};
    return sec;
}

json group_section(const GroupReport& rep)
{
    json sec{{"finite", rep.finite},
             {"bound_checked", rep.bound_checked},
             {"residual", d(rep.residual)},
             {"caveat", rep.caveat},
             {"summary", rep.describe()}};
    if (rep.finite) {
        sec["k"] = rep.k;
        sec["ell"] = rep.ell;
        sec["order_sigma"] = rep.order_sigma;
        sec["order_group"] = rep.order_group;
    }
    return sec;
}

json continuation_section(const Continuator& cont, int samples, std::uint64_t seed)
{
    const CurveAnalytics& ca = cont.analytics();
    json sec{{"truncation", cont.config().truncation},
             {"tail_tol", d(cont.config().tail_tol)},
             {"margin", d(cont.config().margin)}};

    // Overlap points: both |x| and |y| inside the unit disk with margin.
    std::vector<Complex> overlap;
    const auto omegas = sample_omegas(ca, samples * 40, seed);
    for (const Complex& omega : omegas) {
        if (static_cast<int>(overlap.size()) >= samples) break;
        if (cont.in_base_domain_x(omega) && cont.in_base_domain_y(omega)) {
            overlap.push_back(omega);
        }
    }
    Real max_identity = 0, max_periodicity = 0, max_telescope = 0;
    int used = 0;
    json values = json::array();
    for (const Complex& omega : overlap) {
        try {
            max_identity = std::max(max_identity, cont.identity_check(omega));
            const Complex r = cont.continue_rx(omega);
            max_periodicity = std::max(
                max_periodicity, std::abs(cont.continue_rx(omega + ca.per.omega1) - r));
            max_telescope = std::max(
                max_telescope,
                std::abs(cont.continue_rx(omega + ca.om3.value) - r - cont.bx(omega)));
            if (values.size() < 8) {
                const BaseDomainSample bs = cont.base_sample(omega);
                values.push_back(json{{"omega_re", d(omega.real())},
                                      {"omega_im", d(omega.imag())},
                                      {"rx_re", d(r.real())},
                                      {"rx_im", d(r.imag())},
                                      {"x_small", bs.x_small},
                                      {"y_small", bs.y_small}});
            }
            ++used;
        } catch (const numeric_error&) {
            // pole-adjacent sample; skip
        }
    }
    sec["samples"] = values;
    sec["overlap_samples"] = used;
    sec["identity_residual_max"] = d(max_identity);
    sec["omega1_periodicity_max"] = d(max_periodicity);
    sec["telescoping_max"] = d(max_telescope);

    json poles = json::array();
    const auto pts = cont.predicted_poles(Axis::X, Complex(0, 0),
                                          Complex(ca.per.omega2, ca.per.omega1.imag()));
    for (std::size_t i = 0; i < pts.size() && i < 16; ++i) {
        poles.push_back(json{{"re", d(pts[i].real())},
                             {"im", d(pts[i].imag())},
                             {"status", "candidate"}});
    }
    sec["predicted_poles_x"] = poles;
    sec["predicted_poles_x_count"] = static_cast<int>(pts.size());
    return sec;
}

json classification_section(const NatureReport& rep)
{
    json sec{{"verdict", kw::to_string(rep.verdict)},
             {"variable_note", rep.variable_note},
             {"evidence", rep.evidence}};
    if (rep.closed_form) sec["closed_form"] = rep.closed_form->text();
    if (rep.group) sec["group"] = group_section(*rep.group);
    return sec;
}

json make_document(std::uint64_t seed, int precision_bits)
{
    return json{{"report_version", kReportVersion},
                {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
                {"config", json{{"seed", seed}, {"precision_bits", precision_bits}}}};
}

namespace {

void expect(bool ok, const char* msg, std::vector<std::string>& errs)
{
    if (!ok) errs.emplace_back(msg);
}

} // namespace

std::vector<std::string> validate_report(const json& doc)
{
    std::vector<std::string> errs;
    expect(doc.is_object(), "document must be an object", errs);
    if (!doc.is_object()) return errs;
    expect(doc.contains("report_version") && doc["report_version"].is_number_integer(),
           "report_version: required integer", errs);
    expect(doc.contains("tool") && doc["tool"].is_object() && doc["tool"].contains("name") &&
               doc["tool"].contains("version"),
           "tool: required object with name/version", errs);
    expect(doc.contains("config") && doc["config"].is_object() &&
               doc["config"].contains("seed"),
           "config: required object with seed", errs);
    expect(doc.contains("model") && doc["model"].is_object(), "model: required object", errs);
    if (doc.contains("model") && doc["model"].is_object()) {
        const json& m = doc["model"];
        expect(m.contains("weights") && m["weights"].is_array(), "model.weights: array", errs);
        expect(m.contains("t") && m["t"].is_string(), "model.t: string rational", errs);
        if (m.contains("weights") && m["weights"].is_array()) {
            for (const auto& w : m["weights"]) {
                expect(w.is_object() && w.contains("i") && w.contains("j") &&
                           w.contains("value") && w["value"].is_string(),
                       "model.weights[*]: {i,j,value}", errs);
            }
        }
    }
    if (doc.contains("series")) {
        const json& s = doc["series"];
        expect(s.is_object() && s.contains("max_steps") && s.contains("entries") &&
                   s["entries"].is_array(),
               "series: {max_steps, entries[]}", errs);
    }
    if (doc.contains("kernel")) {
        const json& k = doc["kernel"];
        expect(k.is_object() && k.contains("degenerate") && k["degenerate"].is_boolean() &&
                   k.contains("genus"),
               "kernel: {degenerate, genus}", errs);
    }
    if (doc.contains("curve")) {
        const json& c = doc["curve"];
        expect(c.is_object() && c.contains("branch_points_x") &&
                   c["branch_points_x"].is_array() && c["branch_points_x"].size() == 4 &&
                   c.contains("branch_points_y") && c["branch_points_y"].size() == 4,
               "curve: four branch points per axis", errs);
        expect(c.contains("omega1_imag") && c.contains("omega2") && c.contains("omega3"),
               "curve: omega1_imag/omega2/omega3", errs);
        for (const char* key : {"omega1_imag", "omega2", "omega3"}) {
            if (c.contains(key)) {
                expect(c[key].is_object() && c[key].contains("value") &&
                           c[key].contains("error"),
                       "curve periods: {value, error}", errs);
            }
        }
    }
    if (doc.contains("group")) {
        const json& g = doc["group"];
        expect(g.is_object() && g.contains("finite") && g["finite"].is_boolean() &&
                   g.contains("bound_checked") && g.contains("residual") &&
                   g.contains("caveat"),
               "group: {finite, bound_checked, residual, caveat}", errs);
        if (g.is_object() && g.contains("finite") && g["finite"].is_boolean() &&
            g["finite"].get<bool>()) {
            expect(g.contains("k") && g.contains("ell") && g.contains("order_group"),
                   "group finite: {k, ell, order_group}", errs);
        }
    }
    if (doc.contains("continuation")) {
        const json& c = doc["continuation"];
        expect(c.is_object() && c.contains("truncation") &&
                   c.contains("identity_residual_max"),
               "continuation: {truncation, identity_residual_max}", errs);
    }
    if (doc.contains("classification")) {
        const json& c = doc["classification"];
        expect(c.is_object() && c.contains("verdict") && c["verdict"].is_string() &&
                   c.contains("evidence") && c["evidence"].is_array(),
               "classification: {verdict, evidence[]}", errs);
    }
    return errs;
}

namespace {

void render_model(const json& m, std::string& out)
{
    out += "model:\n";
    for (const auto& w : m["weights"]) {
        out += "  d[" + w["i"].dump() + "," + w["j"].dump() + "] = " +
               w["value"].get<std::string>() + "\n";
    }
    out += "  t = " + m["t"].get<std::string>() + "\n";
    if (m.contains("scale") && m["scale"].get<std::string>() != "1") {
        out += "  (normalized; scale = " + m["scale"].get<std::string>() + ")\n";
    }
}

void render_value_error(const json& v, std::string& out)
{
    out += fmt(v["value"].get<double>()) + " (err " + fmt(v["error"].get<double>()) + ")";
}

} // namespace

std::string render_text(const json& doc)
{
    std::string out;
    out += std::string(kToolName) + " " + kToolVersion + " report (version " +
           std::to_string(doc["report_version"].get<int>()) + ")\n";
    out += "config: seed=" + doc["config"]["seed"].dump() +
           " precision_bits=" + doc["config"]["precision_bits"].dump() + "\n";
    if (doc.contains("model")) render_model(doc["model"], out);
    if (doc.contains("series")) {
        const json& s = doc["series"];
        out += "series: max_steps=" + s["max_steps"].dump() + "\n";
        for (const auto& e : s["entries"]) {
            out += "q " + e["i"].dump() + " " + e["j"].dump() + " " + e["k"].dump() + " = " +
                   e["value"].get<std::string>() + "\n";
        }
        if (s.contains("functional_equation")) {
            const json& f = s["functional_equation"];
            out += "  functional equation (order " + f["order"].dump() + "): " +
                   (f["exact"].get<bool>() ? "exact match" : "MISMATCH") + "\n";
        }
    }
    if (doc.contains("kernel")) {
        const json& k = doc["kernel"];
        out += "kernel:\n  K(x,y;t) coefficients (x^p y^q):\n";
        for (const auto& c : k["coefficients"]) {
            out += "    [" + c["x_power"].dump() + "," + c["y_power"].dump() + "] = " +
                   c["value"].get<std::string>() + "\n";
        }
        out += "  " + k["degeneracy"].get<std::string>() + "\n";
        out += "  " + k["genus"].get<std::string>() + "\n";
        for (const char* key : {"discriminant_x", "discriminant_y"}) {
            if (k.contains(key)) {
                out += std::string("  ") + key + " coefficients:";
                for (const auto& a : k[key]) out += " " + a.get<std::string>();
                out += "\n";
            }
        }
    }
    if (doc.contains("curve")) {
        const json& c = doc["curve"];
        out += "curve:\n";
        for (const char* axis : {"branch_points_x", "branch_points_y"}) {
            out += std::string("  ") + (axis[14] == 'x' ? "a" : "b") + " points:";
            for (const auto& p : c[axis]) {
                if (p["infinite"].get<bool>()) {
                    out += " [1:0]";
                } else {
                    out += " " + fmt(p["value"].get<double>());
                }
            }
            out += "\n";
        }
        out += "  omega1 = i * ";
        render_value_error(c["omega1_imag"], out);
        out += "\n  omega2 = ";
        render_value_error(c["omega2"], out);
        out += "\n  omega3 = ";
        render_value_error(c["omega3"], out);
        out += "\n  omega3/omega2 = " + fmt(c["omega3_over_omega2"].get<double>()) + "\n";
        out += "  lattice: g2=" + fmt(c["lattice"]["g2"].get<double>()) +
               " g3=" + fmt(c["lattice"]["g3"].get<double>()) +
               " |q|=" + fmt(c["lattice"]["nome_abs"].get<double>()) + "\n";
        const json& r = c["residuals"];
        out += "  residuals over " + r["samples"].dump() +
               " samples: curve=" + fmt(r["curve_max"].get<double>()) +
               " lifts=" + fmt(std::max(r["involution1_lift_max"].get<double>(),
                                        r["involution2_lift_max"].get<double>())) +
               " translation=" + fmt(r["translation_max"].get<double>()) + "\n";
        out += "  wp checks: ode=" + fmt(r["wp_ode_max"].get<double>()) +
               " even=" + fmt(r["wp_even_max"].get<double>()) +
               " periodic=" + fmt(r["wp_periodicity_max"].get<double>()) + "\n";
    }
    if (doc.contains("group")) {
        const json& g = doc["group"];
        out += "group: " + g["summary"].get<std::string>() + "\n";
        out += "  residual = " + fmt(g["residual"].get<double>()) + "\n";
        out += "  note: " + g["caveat"].get<std::string>() + "\n";
    }
    if (doc.contains("continuation")) {
        const json& c = doc["continuation"];
        out += "continuation: truncation N=" + c["truncation"].dump() + "\n";
        out += "  overlap samples used: " + c["overlap_samples"].dump() + "\n";
        out += "  identity residual max = " + fmt(c["identity_residual_max"].get<double>()) +
               "\n";
        out += "  omega1-periodicity max = " +
               fmt(c["omega1_periodicity_max"].get<double>()) + "\n";
        out += "  telescoping max = " + fmt(c["telescoping_max"].get<double>()) + "\n";
        out += "  predicted r_x pole candidates in one cell: " +
               c["predicted_poles_x_count"].dump() + "\n";
    }
    if (doc.contains("classification")) {
        const json& c = doc["classification"];
        out += "classification:\n";
        for (const auto& e : c["evidence"]) {
            out += "  - " + e.get<std::string>() + "\n";
        }
        if (c.contains("closed_form")) {
            out += "  closed form: Q(x,y;t) = " + c["closed_form"].get<std::string>() + "\n";
        }
        out += "  note: " + c["variable_note"].get<std::string>() + "\n";
        std::string verdict = c["verdict"].get<std::string>();
        if (c.contains("group") && c["group"]["finite"].get<bool>()) {
            verdict += " (finite group, order " + c["group"]["order_group"].dump() + ")";
        }
        out += "verdict: " + verdict + "\n";
    }
    return out;
}

} // namespace kw::report
