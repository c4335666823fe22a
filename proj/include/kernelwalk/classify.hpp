#ifndef KERNELWALK_CLASSIFY_HPP
#define KERNELWALK_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "kernelwalk/group.hpp"
#include "kernelwalk/kernel.hpp"

namespace kw {

enum class Nature {
    Algebraic,
    DifferentiallyAlgebraic,
    DifferentiallyTranscendental,
    EquivalentUndecided,
};

std::string to_string(Nature n);

// Q(x,y;t) = 1/(1 - d00 t) for models whose walk cannot leave the origin.
struct ClosedForm {
    Rational d00;
    std::string text() const;
    // t^k coefficient of the closed form (d00^k at the origin).
    Rational series_coeff(int k) const;
};

std::optional<ClosedForm> trivial_closed_form(const WeightedModel& model);

struct NatureReport {
    Nature verdict = Nature::EquivalentUndecided;
    // The x-, y- and t-natures of the trivariate series coincide; the verdict
    // applies to all three variables at once.
    std::string variable_note;
    std::vector<std::string> evidence;
    std::optional<ClosedForm> closed_form;
    DegeneracyReport degeneracy;
    HalfPlaneClass genus;
    std::optional<GroupReport> group;
};

struct ClassifyOptions {
    GroupOptions group;
    CurveOptions curve;
};

// Decision tree: degenerate models are algebraic; nondegenerate genus-0
// models split by family; elliptic models split on group finiteness, with
// the infinite-presumed branch left undecided (the decoupling-function test
// is out of scope).
NatureReport classify_model(const WeightedModel& model, const ClassifyOptions& options = {});

} // namespace kw

#endif
