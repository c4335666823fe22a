#ifndef KERNELWALK_MODEL_HPP
#define KERNELWALK_MODEL_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kernelwalk/rational.hpp"

namespace kw {

struct Step {
    int i = 0, j = 0;
    friend bool operator==(const Step&, const Step&) = default;
    friend auto operator<=>(const Step&, const Step&) = default;
};

// The support of the weight map: steps with nonzero weight.
class StepSet {
public:
    StepSet() = default;
    explicit StepSet(std::vector<Step> steps);

    bool contains(int i, int j) const;
    bool empty() const { return steps_.empty(); }
    std::size_t size() const { return steps_.size(); }
    const std::vector<Step>& steps() const { return steps_; }

private:
    std::vector<Step> steps_; // sorted, unique
};

// A weighted small-step quarter-plane model: the nine weights d_{i,j} on
// {-1,0,1}^2 plus the series variable t. Immutable after construction;
// weights sum to exactly 1 and t lies in (0,1).
class WeightedModel {
public:
    // Validates all invariants; throws input_error on violation.
    static WeightedModel create(const std::map<Step, Rational>& weights, const Rational& t);

    const Rational& weight(int i, int j) const;
    const Rational& t() const { return t_; }
    bool operator==(const WeightedModel& o) const = default;

private:
    WeightedModel() = default;
    std::array<Rational, 9> w_{}; // index (i+1)*3 + (j+1)
    Rational t_;
};

// Model-file grammar (line oriented): '#' comments, weight lines
// "d <i> <j> = <p>/<q>" (or an integer), one line "t = <p>/<q>".
WeightedModel parse_model(const std::string& text);

std::string serialize_model(const WeightedModel& model);

struct NormalizeResult {
    WeightedModel model;
    Rational scale; // the weight sum that was divided out
};

// Rescales weights to sum 1 and t to t*scale, per the t-rescaling reduction.
NormalizeResult normalize(const std::map<Step, Rational>& raw_weights, const Rational& t_raw);

StepSet step_set(const WeightedModel& model);

} // namespace kw

#endif
