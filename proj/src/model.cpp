#include "kernelwalk/model.hpp"

#include <algorithm>
#include <sstream>

#include "kernelwalk/errors.hpp"

namespace kw {

namespace {

int index_of(int i, int j)
{
    if (i < -1 || i > 1 || j < -1 || j > 1) throw input_error("step outside {-1,0,1}^2");
    return (i + 1) * 3 + (j + 1);
}

// GMP rationals compare correctly only in canonical form; callers may hand
// us raw numerator/denominator pairs.
Rational canonical(Rational q)
{
    q.canonicalize();
    return q;
}

} // namespace

StepSet::StepSet(std::vector<Step> steps) : steps_(std::move(steps))
{
    std::sort(steps_.begin(), steps_.end());
    steps_.erase(std::unique(steps_.begin(), steps_.end()), steps_.end());
    for (const Step& s : steps_) index_of(s.i, s.j);
}

bool StepSet::contains(int i, int j) const
{
    return std::binary_search(steps_.begin(), steps_.end(), Step{i, j});
}

WeightedModel WeightedModel::create(const std::map<Step, Rational>& weights, const Rational& t)
{
    WeightedModel m;
    Rational sum = 0;
    for (const auto& [s, raw] : weights) {
        const Rational w = canonical(raw);
        if (w < 0) throw input_error("negative weight for step (" + std::to_string(s.i) + "," +
                                     std::to_string(s.j) + ")");
        if (w > 1) throw input_error("weight out of range for step (" + std::to_string(s.i) +
                                     "," + std::to_string(s.j) + ")");
        m.w_[static_cast<std::size_t>(index_of(s.i, s.j))] = w;
        sum += w;
    }
    if (sum != 1) {
        throw input_error("weights sum to " + to_string(sum) +
                          ", expected exactly 1 (use normalize for raw weights)");
    }
    const Rational tc = canonical(t);
    if (!(tc > 0 && tc < 1)) throw input_error("t = " + to_string(tc) + " outside (0,1)");
    m.t_ = tc;
    return m;
}

const Rational& WeightedModel::weight(int i, int j) const
{
    return w_[static_cast<std::size_t>(index_of(i, j))];
}

namespace {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

std::vector<Token> tokenize(const std::string& line)
{
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[k]))) { ++k; continue; }
        if (line[k] == '=') {
            out.push_back({"=", k + 1});
            ++k;
            continue;
        }
        std::size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])) &&
               line[k] != '=') {
            ++k;
        }
        out.push_back({line.substr(start, k - start), start + 1});
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg)
{
    throw input_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + msg);
}

int parse_small_int(const Token& tok, std::size_t line)
{
    if (tok.text == "-1") return -1;
    if (tok.text == "0") return 0;
    if (tok.text == "1") return 1;
    fail(line, tok.column, "expected -1, 0 or 1, got '" + tok.text + "'");
}

} // namespace

WeightedModel parse_model(const std::string& text)
{
    std::map<Step, Rational> weights;
    bool have_t = false;
    Rational t;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0].text == "d") {
            if (toks.size() != 5 || toks[3].text != "=") {
                fail(lineno, toks[0].column, "expected 'd <i> <j> = <weight>'");
            }
            const int i = parse_small_int(toks[1], lineno);
            const int j = parse_small_int(toks[2], lineno);
            Rational w;
            try {
                w = parse_rational(toks[4].text);
            } catch (const input_error& e) {
                fail(lineno, toks[4].column, e.what());
            }
            if (w < 0) fail(lineno, toks[4].column, "negative weight");
            if (w > 1) fail(lineno, toks[4].column, "weight out of range");
            if (!weights.emplace(Step{i, j}, w).second) {
                fail(lineno, toks[1].column, "duplicate step key (" + toks[1].text + ", " +
                                                 toks[2].text + ")");
            }
        } else if (toks[0].text == "t") {
            if (toks.size() != 3 || toks[1].text != "=") {
                fail(lineno, toks[0].column, "expected 't = <p>/<q>'");
            }
            if (have_t) fail(lineno, toks[0].column, "duplicate t line");
            try {
                t = parse_rational(toks[2].text);
            } catch (const input_error& e) {
                fail(lineno, toks[2].column, e.what());
            }
            if (!(t > 0 && t < 1)) fail(lineno, toks[2].column, "t outside (0,1)");
            have_t = true;
        } else {
            fail(lineno, toks[0].column, "unknown key '" + toks[0].text + "'");
        }
    }
    if (!have_t) throw input_error("missing 't = <p>/<q>' line");
    return WeightedModel::create(weights, t);
}

std::string serialize_model(const WeightedModel& model)
{
    std::ostringstream out;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const Rational& w = model.weight(i, j);
            if (w != 0) out << "d " << i << ' ' << j << " = " << to_string(w) << '\n';
        }
    }
    out << "t = " << to_string(model.t()) << '\n';
    return out.str();
}

NormalizeResult normalize(const std::map<Step, Rational>& raw_weights, const Rational& t_raw)
{
    Rational sum = 0;
    std::map<Step, Rational> canon;
    for (const auto& [s, w] : raw_weights) {
        canon[s] = canonical(w);
        if (canon[s] < 0) throw input_error("negative raw weight");
        sum += canon[s];
    }
    if (sum == 0) throw input_error("cannot normalize: weights sum to zero");
    std::map<Step, Rational> scaled;
    for (const auto& [s, w] : canon) scaled[s] = w / sum;
    const Rational t = canonical(t_raw) * sum;
    if (!(t > 0 && t < 1)) {
        throw input_error("rescaled t = " + to_string(t) + " outside (0,1)");
    }
    return {WeightedModel::create(scaled, t), sum};
}

StepSet step_set(const WeightedModel& model)
{
    std::vector<Step> steps;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            if (model.weight(i, j) != 0) steps.push_back({i, j});
        }
    }
    return StepSet(std::move(steps));
}

} // namespace kw
