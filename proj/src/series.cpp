#include "kernelwalk/series.hpp"

#include <cmath>
#include <sstream>

#include "kernelwalk/errors.hpp"
#include "kernelwalk/polynomial.hpp"

namespace kw {

namespace {
const Rational kZero = 0;
}

SeriesTable::SeriesTable(int max_steps) : max_steps_(max_steps)
{
    if (max_steps < 0) throw input_error("max_steps must be >= 0");
    layers_.resize(static_cast<std::size_t>(max_steps) + 1);
    for (int k = 0; k <= max_steps; ++k) {
        layers_[static_cast<std::size_t>(k)].assign(
            static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(k + 1), Rational(0));
    }
    layers_[0][0] = 1; // the empty walk
}

const Rational& SeriesTable::coeff(int i, int j, int k) const
{
    if (k < 0 || k > max_steps_ || i < 0 || j < 0 || i > k || j > k) return kZero;
    return layers_[static_cast<std::size_t>(k)]
                  [static_cast<std::size_t>(i) * static_cast<std::size_t>(k + 1) +
                   static_cast<std::size_t>(j)];
}

Rational& SeriesTable::at(int i, int j, int k)
{
    return layers_[static_cast<std::size_t>(k)]
                  [static_cast<std::size_t>(i) * static_cast<std::size_t>(k + 1) +
                   static_cast<std::size_t>(j)];
}

Rational SeriesTable::layer_mass(int k) const
{
    Rational m = 0;
    for (const auto& q : layers_[static_cast<std::size_t>(k)]) m += q;
    return m;
}

std::string SeriesTable::serialize() const
{
    std::ostringstream out;
    for (int k = 0; k <= max_steps_; ++k) {
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                const Rational& q = coeff(i, j, k);
                if (q != 0) {
                    out << "q " << i << ' ' << j << ' ' << k << " = " << to_string(q) << '\n';
                }
            }
        }
    }
    return out.str();
}

SeriesTable count_walks(const WeightedModel& model, int max_steps)
{
    SeriesTable table(max_steps);
    const StepSet steps = step_set(model);
    for (int k = 0; k < max_steps; ++k) {
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                const Rational& q = table.coeff(i, j, k);
                if (q == 0) continue;
                for (const Step& s : steps.steps()) {
                    const int ni = i + s.i, nj = j + s.j;
                    if (ni < 0 || nj < 0) continue;
                    table.at(ni, nj, k + 1) += q * model.weight(s.i, s.j);
                }
            }
        }
    }
    return table;
}

namespace {

// Integer DFS: path weights are (product of step numerators) / lcm_den^k.
void oracle_dfs(const StepSet& steps, const std::vector<Integer>& numerators,
                int i, int j, int depth, int max_depth, const Integer& num_product,
                std::vector<std::vector<Integer>>& acc)
{
    if (depth == max_depth) return;
    for (std::size_t s = 0; s < steps.steps().size(); ++s) {
        const int ni = i + steps.steps()[s].i;
        const int nj = j + steps.steps()[s].j;
        if (ni < 0 || nj < 0) continue;
        Integer w = num_product * numerators[s];
        acc[static_cast<std::size_t>(depth + 1)]
           [static_cast<std::size_t>(ni) * static_cast<std::size_t>(max_depth + 1) +
            static_cast<std::size_t>(nj)] += w;
        oracle_dfs(steps, numerators, ni, nj, depth + 1, max_depth, w, acc);
    }
}

} // namespace

SeriesTable enumerate_walks_oracle(const WeightedModel& model, int max_steps)
{
    if (max_steps > 12) {
        throw input_error("enumerate_walks_oracle: max_steps > 12 is intractable");
    }
    const StepSet steps = step_set(model);
    // Common denominator so the DFS runs on integers.
    Integer lcm_den = 1;
    for (const Step& s : steps.steps()) {
        Integer den = model.weight(s.i, s.j).get_den();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<Integer> numerators;
    for (const Step& s : steps.steps()) {
        const Rational& w = model.weight(s.i, s.j);
        numerators.push_back(Integer(w.get_num()) * (lcm_den / Integer(w.get_den())));
    }
    std::vector<std::vector<Integer>> acc(static_cast<std::size_t>(max_steps) + 1);
    for (auto& layer : acc) {
        layer.assign(static_cast<std::size_t>(max_steps + 1) * static_cast<std::size_t>(max_steps + 1),
                     Integer(0));
    }
    oracle_dfs(steps, numerators, 0, 0, 0, max_steps, Integer(1), acc);

    SeriesTable table(max_steps);
    Integer den_pow = 1;
    for (int k = 1; k <= max_steps; ++k) {
        den_pow *= lcm_den;
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                const Integer& num = acc[static_cast<std::size_t>(k)]
                                        [static_cast<std::size_t>(i) *
                                             static_cast<std::size_t>(max_steps + 1) +
                                         static_cast<std::size_t>(j)];
                if (num != 0) {
                    Rational q(num, den_pow);
                    q.canonicalize();
                    table.at(i, j, k) = q;
                }
            }
        }
    }
    return table;
}

SeriesValue eval_Q(const SeriesTable& table, const Complex& x, const Complex& y, Real t_val)
{
    const Real eps = 16 * std::numeric_limits<Real>::epsilon();
    if (std::abs(x) > 1 + eps || std::abs(y) > 1 + eps) {
        throw input_error("eval_Q: (x,y) outside the convergence polydisk");
    }
    if (!(t_val > 0 && t_val < 1)) throw input_error("eval_Q: t_val outside (0,1)");
    Complex value = 0;
    Real tk = 1;
    for (int k = 0; k <= table.max_steps(); ++k) {
        // Horner in y nested inside Horner in x over layer k.
        Complex layer = 0;
        for (int i = k; i >= 0; --i) {
            Complex row = 0;
            for (int j = k; j >= 0; --j) row = row * y + to_real(table.coeff(i, j, k));
            layer = layer * x + row;
        }
        value += tk * layer;
        tk *= t_val;
    }
    const Real tail = tk / (1 - t_val); // t^(K+1)/(1-t), valid since layer mass <= 1
    return {value, tail};
}

namespace {

// K(x,0;t) = -t * (d_{-1,-1} + d_{0,-1} x + d_{1,-1} x^2)
Complex kernel_x_axis(const WeightedModel& model, const Complex& x, Real t)
{
    Complex p = to_real(model.weight(-1, -1)) +
                x * (to_real(model.weight(0, -1)) + x * to_real(model.weight(1, -1)));
    return -t * p;
}

Complex kernel_y_axis(const WeightedModel& model, const Complex& y, Real t)
{
    Complex p = to_real(model.weight(-1, -1)) +
                y * (to_real(model.weight(-1, 0)) + y * to_real(model.weight(-1, 1)));
    return -t * p;
}

} // namespace

SeriesValue eval_F1(const SeriesTable& table, const WeightedModel& model, const Complex& x)
{
    const Real eps = 16 * std::numeric_limits<Real>::epsilon();
    if (std::abs(x) > 1 + eps) throw input_error("eval_F1: |x| > 1");
    const Real t = to_real(model.t());
    const SeriesValue q = eval_Q(table, x, Complex(0), t);
    const Complex k = kernel_x_axis(model, x, t);
    return {k * q.value, std::abs(k) * q.tail_bound};
}

SeriesValue eval_F2(const SeriesTable& table, const WeightedModel& model, const Complex& y)
{
    const Real eps = 16 * std::numeric_limits<Real>::epsilon();
    if (std::abs(y) > 1 + eps) throw input_error("eval_F2: |y| > 1");
    const Real t = to_real(model.t());
    const SeriesValue q = eval_Q(table, Complex(0), y, t);
    const Complex k = kernel_y_axis(model, y, t);
    return {k * q.value, std::abs(k) * q.tail_bound};
}

bool check_functional_equation(const WeightedModel& model, int order)
{
    return check_functional_equation(model, count_walks(model, order), order);
}

bool check_functional_equation(const WeightedModel& model, const SeriesTable& table, int order)
{
    if (order < 0) throw input_error("check_functional_equation: order must be >= 0");
    if (table.max_steps() < order) {
        throw input_error("check_functional_equation: table too short for requested order");
    }

    // Everything below is a polynomial identity in (x,y) per power of t.
    // Layer k of a series is its exact bivariate t^k coefficient.
    auto q_layer = [&](int k) {
        RatPoly2 p;
        if (k < 0) return p;
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                const Rational& c = table.coeff(i, j, k);
                if (c != 0) p.at(i, j) = c;
            }
        }
        p.trim();
        return p;
    };

    // K = xy - t * sum d_{a,b} x^(a+1) y^(b+1): split as K0 + t*K1.
    const RatPoly2 k0 = RatPoly2::monomial(1, 1, 1);
    RatPoly2 k1;
    for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
            const Rational& d = model.weight(a, b);
            if (d != 0) k1.at(a + 1, b + 1) -= d;
        }
    }
    k1.trim();

    // F^1 row: K(x,0;t) Q(x,0;t). K(x,0) = t * kx1 with kx1 = -sum d_{a,-1} x^(a+1).
    RatPoly kx1, ky1;
    for (int a = -1; a <= 1; ++a) {
        kx1 += RatPoly::monomial(-model.weight(a, -1), a + 1);
        ky1 += RatPoly::monomial(-model.weight(-1, a), a + 1);
    }

    auto q_x_axis = [&](int k) { // coefficient of t^k in Q(x,0;t), poly in x
        RatPoly p;
        for (int i = 0; i <= k; ++i) p += RatPoly::monomial(table.coeff(i, 0, k), i);
        return p;
    };
    auto q_y_axis = [&](int k) {
        RatPoly p;
        for (int j = 0; j <= k; ++j) p += RatPoly::monomial(table.coeff(0, j, k), j);
        return p;
    };

    const Rational k00_lin = -model.weight(-1, -1); // K(0,0;t) = t * k00_lin

    for (int k = 0; k <= order; ++k) {
        // LHS_k = xy*Q_k + K1*Q_(k-1)
        RatPoly2 lhs = k0 * q_layer(k);
        if (k >= 1) lhs += k1 * q_layer(k - 1);

        // RHS_k = [F1]_k + [F2]_k - [K(0,0)Q(0,0)]_k + [xy]_k
        RatPoly2 rhs;
        if (k >= 1) {
            const RatPoly f1 = kx1 * q_x_axis(k - 1);
            for (int i = 0; i <= f1.degree(); ++i) {
                if (f1.coeff(i) != 0) rhs.at(i, 0) += f1.coeff(i);
            }
            const RatPoly f2 = ky1 * q_y_axis(k - 1);
            for (int j = 0; j <= f2.degree(); ++j) {
                if (f2.coeff(j) != 0) rhs.at(0, j) += f2.coeff(j);
            }
            rhs.at(0, 0) -= k00_lin * table.coeff(0, 0, k - 1);
        }
        if (k == 0) rhs += RatPoly2::monomial(1, 1, 1);
        rhs.trim();

        if (!(lhs == rhs)) return false;
    }
    return true;
}

} // namespace kw
