#ifndef KERNELWALK_SERIES_HPP
#define KERNELWALK_SERIES_HPP

#include <string>
#include <vector>

#include "kernelwalk/model.hpp"
#include "kernelwalk/rational.hpp"

namespace kw {

// Exact walk-weight coefficients q_{i,j,k} for 0 <= i,j <= k <= max_steps;
// all other indices are implicitly zero.
class SeriesTable {
public:
    explicit SeriesTable(int max_steps);

    int max_steps() const { return max_steps_; }
    const Rational& coeff(int i, int j, int k) const;
    Rational& at(int i, int j, int k);
    // Sum over (i,j) of layer k; always <= 1 for probabilistic weights.
    Rational layer_mass(int k) const;

    // One line per nonzero entry, "q <i> <j> <k> = <value>", sorted by (k,i,j).
    std::string serialize() const;

private:
    int max_steps_;
    std::vector<std::vector<Rational>> layers_; // layer k is (k+1)x(k+1), row-major in i
};

// Dynamic programming over the step recurrence, restricted to the quadrant.
SeriesTable count_walks(const WeightedModel& model, int max_steps);

// Independent oracle: explicit enumeration of all step sequences of length
// <= max_steps, discarding those that leave the quadrant. Exponential in
// max_steps; refuses max_steps > 12.
SeriesTable enumerate_walks_oracle(const WeightedModel& model, int max_steps);

struct SeriesValue {
    Complex value;
    Real tail_bound; // rigorous bound on the truncation error
};

// Truncated Q(x,y;t); requires |x|,|y| <= 1 and 0 < t < 1.
SeriesValue eval_Q(const SeriesTable& table, const Complex& x, const Complex& y, Real t_val);

// F^1(x;t) = K(x,0;t) Q(x,0;t) and F^2(y;t) = K(0,y;t) Q(0,y;t), truncated.
SeriesValue eval_F1(const SeriesTable& table, const WeightedModel& model, const Complex& x);
SeriesValue eval_F2(const SeriesTable& table, const WeightedModel& model, const Complex& y);

// Verifies K*Q = F^1 + F^2 - K(0,0)Q(0,0) + xy as an exact polynomial
// identity in x, y modulo t^(order+1).
bool check_functional_equation(const WeightedModel& model, int order);
// Same check against a caller-supplied table (for fault-injection tests).
bool check_functional_equation(const WeightedModel& model, const SeriesTable& table, int order);

} // namespace kw

#endif
