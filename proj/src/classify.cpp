#include "kernelwalk/classify.hpp"

namespace kw {

std::string to_string(Nature n)
{
    switch (n) {
        case Nature::Algebraic: return "algebraic";
        case Nature::DifferentiallyAlgebraic: return "differentially algebraic";
        case Nature::DifferentiallyTranscendental: return "differentially transcendental";
        case Nature::EquivalentUndecided: return "equivalent-undecided";
    }
    return "";
}

std::string ClosedForm::text() const
{
    if (d00 == 0) return "1";
    return "1/(1 - (" + kw::to_string(d00) + ")*t)";
}

Rational ClosedForm::series_coeff(int k) const
{
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= d00;
    return r;
}

std::optional<ClosedForm> trivial_closed_form(const WeightedModel& model)
{
    // The walk is stuck at the origin exactly when no step other than (0,0)
    // points into the quadrant.
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            if (i == 0 && j == 0) continue;
            if (i >= 0 && j >= 0 && model.weight(i, j) != 0) return std::nullopt;
        }
    }
    return ClosedForm{model.weight(0, 0)};
}

NatureReport classify_model(const WeightedModel& model, const ClassifyOptions& options)
{
    NatureReport rep;
    rep.variable_note = "the x-, y- and t-natures of the trivariate series coincide; the "
                        "verdict applies to each variable";
    rep.degeneracy = degeneracy_test(model);
    rep.genus = genus_classify(step_set(model));
    rep.closed_form = trivial_closed_form(model);

    if (rep.degeneracy.degenerate()) {
        rep.verdict = Nature::Algebraic;
        rep.evidence.push_back(rep.degeneracy.describe());
        rep.evidence.push_back("degenerate models have algebraic generating series");
        if (rep.closed_form) {
            rep.evidence.push_back("walk is confined to the origin: Q = " +
                                   rep.closed_form->text());
        }
        return rep;
    }
    rep.evidence.push_back("not degenerate");

    switch (rep.genus.classification) {
        case GenusClass::Genus0Family1:
            rep.verdict = Nature::DifferentiallyTranscendental;
            rep.evidence.push_back(rep.genus.describe());
            rep.evidence.push_back("nondegenerate genus-0 family 1 series are differentially "
                                   "transcendental in all three variables");
            return rep;
        case GenusClass::Genus0Family2:
        case GenusClass::Genus0Family3:
        case GenusClass::Genus0Family4:
            rep.verdict = Nature::Algebraic;
            rep.evidence.push_back(rep.genus.describe());
            rep.evidence.push_back("genus-0 families 2-4 reduce to half-plane or trivial "
                                   "walks with algebraic series");
            if (rep.closed_form) {
                rep.evidence.push_back("walk is confined to the origin: Q = " +
                                       rep.closed_form->text());
            }
            return rep;
        case GenusClass::DegenerateHalfPlane:
            // Unreachable for nondegenerate models: an axis-aligned
            // half-plane support is degenerate by the weight-pattern test.
            rep.verdict = Nature::Algebraic;
            rep.evidence.push_back(rep.genus.describe());
            return rep;
        case GenusClass::Elliptic:
            break;
    }
    rep.evidence.push_back(rep.genus.describe());

    const CurveAnalytics ca = analyze_curve(model, options.curve);
    const GroupReport group = group_report(ca, options.group);
    rep.group = group;
    rep.evidence.push_back("group of the walk at this t: " + group.describe());
    if (group.finite) {
        rep.verdict = Nature::DifferentiallyAlgebraic;
        rep.evidence.push_back("finite group: the series is differentially algebraic in "
                               "x, y and t");
    } else {
        rep.verdict = Nature::EquivalentUndecided;
        rep.evidence.push_back(
            "infinite group (presumed): the three variables share one nature, but deciding "
            "it requires the decoupling-function test, which this tool does not implement");
        rep.evidence.push_back(group.caveat);
    }
    return rep;
}

} // namespace kw
