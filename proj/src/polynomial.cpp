#include "kernelwalk/polynomial.hpp"

#include <algorithm>
#include <deque>

#include "kernelwalk/errors.hpp"

namespace kw {

namespace {
const Rational kZero = 0;
}

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const Rational& c)
{
    RatPoly p;
    if (c != 0) p.c_ = {c};
    return p;
}

RatPoly RatPoly::monomial(const Rational& c, int power)
{
    RatPoly p;
    if (c != 0) {
        p.c_.assign(static_cast<std::size_t>(power) + 1, Rational(0));
        p.c_.back() = c;
    }
    return p;
}

const Rational& RatPoly::coeff(int i) const
{
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(i)];
}

const Rational& RatPoly::leading() const
{
    if (c_.empty()) return kZero;
    return c_.back();
}

Rational RatPoly::eval(const Rational& x) const
{
    Rational r = 0;
    for (std::size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
}

Real RatPoly::eval(Real x) const
{
    Real r = 0;
    for (std::size_t k = c_.size(); k-- > 0;) r = r * x + to_real(c_[k]);
    return r;
}

Complex RatPoly::eval(const Complex& x) const
{
    Complex r = 0;
    for (std::size_t k = c_.size(); k-- > 0;) r = r * x + to_real(c_[k]);
    return r;
}

RatPoly RatPoly::derivative() const
{
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return RatPoly(std::move(d));
}

RatPoly RatPoly::reversed(int n) const
{
    std::vector<Rational> r(static_cast<std::size_t>(n) + 1, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) r[static_cast<std::size_t>(n) - k] = c_[k];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::scaled(const Rational& s) const
{
    if (s == 0) return RatPoly();
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= s;
    return RatPoly(std::move(r));
}

RatPoly RatPoly::monic() const
{
    if (c_.empty()) return RatPoly();
    return scaled(1 / leading());
}

RatPoly RatPoly::operator-() const
{
    std::vector<Rational> r(c_);
    for (auto& x : r) x = -x;
    return RatPoly(std::move(r));
}

RatPoly& RatPoly::operator+=(const RatPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b)
{
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return RatPoly(std::move(r));
}

void RatPoly::divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r)
{
    if (b.is_zero()) throw input_error("polynomial division by zero");
    std::vector<Rational> rem(a.c_);
    std::vector<Rational> quo;
    const int db = b.degree();
    int dr = static_cast<int>(rem.size()) - 1;
    while (dr >= 0 && rem[static_cast<std::size_t>(dr)] == 0) --dr;
    if (dr >= db) quo.assign(static_cast<std::size_t>(dr - db) + 1, Rational(0));
    while (dr >= db) {
        Rational f = rem[static_cast<std::size_t>(dr)] / b.leading();
        quo[static_cast<std::size_t>(dr - db)] = f;
        for (int k = 0; k <= db; ++k) {
            rem[static_cast<std::size_t>(dr - db + k)] -= f * b.coeff(k);
        }
        while (dr >= 0 && rem[static_cast<std::size_t>(dr)] == 0) --dr;
    }
    rem.resize(static_cast<std::size_t>(dr + 1));
    q = RatPoly(std::move(quo));
    r = RatPoly(std::move(rem));
}

std::vector<Real> RatPoly::real_coeffs() const
{
    std::vector<Real> r(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] = to_real(c_[k]);
    return r;
}

void RatPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly taylor_shift(const RatPoly& p, const Rational& c)
{
    // Repeated synthetic division by (x - c); row k of remainders is the
    // u^k coefficient of p(c+u).
    const int n = p.degree();
    if (n < 0) return RatPoly();
    std::vector<Rational> work(p.coeffs());
    std::vector<Rational> out(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int k = 0; k <= n; ++k) {
        for (int i = n - 1; i >= k; --i) {
            work[static_cast<std::size_t>(i)] += c * work[static_cast<std::size_t>(i) + 1];
        }
        out[static_cast<std::size_t>(k)] = work[static_cast<std::size_t>(k)];
    }
    return RatPoly(std::move(out));
}

RatPoly poly_gcd(RatPoly a, RatPoly b)
{
    while (!b.is_zero()) {
        RatPoly q, r;
        RatPoly::divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

std::vector<RatPoly> squarefree_decomposition(const RatPoly& p)
{
    if (p.is_zero()) throw input_error("squarefree decomposition of zero polynomial");
    std::vector<RatPoly> parts;
    if (p.degree() == 0) return parts;
    RatPoly a = p.monic();
    RatPoly d = a.derivative();
    RatPoly g = poly_gcd(a, d);
    RatPoly q, r;
    RatPoly::divmod(a, g, q, r);       // q = product of distinct factors
    RatPoly::divmod(d, g, d, r);       // d'
    RatPoly y = d - q.derivative();
    while (true) {
        if (q.degree() == 0) break;
        RatPoly f = poly_gcd(q, y);
        parts.push_back(f);
        RatPoly::divmod(q, f, q, r);
        RatPoly::divmod(y, f, y, r);
        y = y - q.derivative();
    }
    return parts;
}

bool is_square_over_C(const RatPoly& p)
{
    if (p.is_zero()) return true;
    if (p.degree() == 0) return true;
    if (p.degree() % 2 != 0) return false;
    const auto parts = squarefree_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i % 2 == 0 && parts[i].degree() > 0) return false; // odd multiplicity i+1
    }
    return true;
}

namespace {

// Sturm chain of a squarefree polynomial.
std::vector<RatPoly> sturm_chain(const RatPoly& p)
{
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero()) {
        RatPoly q, r;
        RatPoly::divmod(chain[chain.size() - 2], chain.back(), q, r);
        chain.push_back(-r);
    }
    chain.pop_back();
    return chain;
}

int sign_changes_at(const std::vector<RatPoly>& chain, const Rational& x)
{
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        const int s = sgn(p.eval(x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

// A split point in (lo, hi) that is not a root of p; deterministic nudging
// handles the (rare) exact hit. p has at most deg roots, so deg+2 distinct
// candidates always contain a non-root.
Rational nonroot_midpoint(const RatPoly& p, const Rational& lo, const Rational& hi)
{
    const Rational w = hi - lo;
    if (p.eval(lo + w / 2) != 0) return lo + w / 2;
    const int den = 2 * (p.degree() + 2);
    for (int k = 0; k <= p.degree() + 1; ++k) {
        Rational m = lo + w * (2 * k + 1) / den;
        if (p.eval(m) != 0) return m;
    }
    throw numeric_error("could not find a non-root midpoint");
}

} // namespace

std::vector<RootBracket> isolate_real_roots(const RatPoly& p)
{
    std::vector<RootBracket> roots;
    if (p.degree() <= 0) return roots;
    if (!poly_gcd(p, p.derivative()).is_constant()) {
        throw input_error("root isolation requires a squarefree polynomial");
    }
    // Cauchy bound: all real roots lie in (-M, M).
    Rational maxc = 0;
    for (const auto& c : p.coeffs()) maxc = std::max(maxc, Rational(abs(c)));
    Rational bound = 1 + maxc / abs(p.leading());

    const auto chain = sturm_chain(p);
    struct Segment { Rational lo, hi; int count; };
    std::deque<Segment> work;
    {
        const int total = sign_changes_at(chain, -bound) - sign_changes_at(chain, bound);
        if (total > 0) work.push_back({-bound, bound, total});
    }
    while (!work.empty()) {
        Segment s = work.front();
        work.pop_front();
        if (s.count == 1) {
            // A simple root in an interval with non-root endpoints always
            // straddles by sign.
            roots.push_back({s.lo, s.hi});
            continue;
        }
        // Split at a non-root point, so exact rational roots stay strictly
        // inside one side and are bracketed like any other root.
        const Rational m = nonroot_midpoint(p, s.lo, s.hi);
        const int vl = sign_changes_at(chain, s.lo);
        const int vm = sign_changes_at(chain, m);
        const int vh = sign_changes_at(chain, s.hi);
        const int left = vl - vm, right = vm - vh;
        if (left > 0) work.push_back({s.lo, m, left});
        if (right > 0) work.push_back({m, s.hi, right});
    }
    std::sort(roots.begin(), roots.end(),
              [](const RootBracket& a, const RootBracket& b) { return a.lo < b.lo; });
    return roots;
}

void refine_root(const RatPoly& p, RootBracket& b, const Rational& target)
{
    if (b.exact()) return;
    int slo = sgn(p.eval(b.lo));
    if (slo == 0) { b.hi = b.lo; return; }
    if (sgn(p.eval(b.hi)) == 0) { b.lo = b.hi; return; }
    while (b.width() > target) {
        Rational m = b.mid();
        const int sm = sgn(p.eval(m));
        if (sm == 0) { b.lo = m; b.hi = m; return; }
        if (sm == slo) b.lo = m; else b.hi = m;
    }
}

RatPoly2::RatPoly2(int deg_u, int deg_v)
    : c_(static_cast<std::size_t>(deg_u) + 1,
         std::vector<Rational>(static_cast<std::size_t>(deg_v) + 1, Rational(0)))
{
}

RatPoly2 RatPoly2::constant(const Rational& c)
{
    RatPoly2 p(0, 0);
    p.c_[0][0] = c;
    p.trim();
    return p;
}

RatPoly2 RatPoly2::monomial(const Rational& c, int pu, int pv)
{
    RatPoly2 p(pu, pv);
    p.c_[static_cast<std::size_t>(pu)][static_cast<std::size_t>(pv)] = c;
    p.trim();
    return p;
}

bool RatPoly2::is_zero() const { return c_.empty(); }

const Rational& RatPoly2::coeff(int i, int j) const
{
    if (i < 0 || j < 0 || i >= static_cast<int>(c_.size()) ||
        j >= static_cast<int>(c_.empty() ? 0 : c_[0].size())) {
        return kZero;
    }
    return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

Rational& RatPoly2::at(int i, int j)
{
    const std::size_t ni = static_cast<std::size_t>(i) + 1;
    const std::size_t nj = static_cast<std::size_t>(j) + 1;
    const std::size_t cols = std::max(c_.empty() ? 0 : c_[0].size(), nj);
    if (cols > (c_.empty() ? 0 : c_[0].size())) {
        for (auto& row : c_) row.resize(cols, Rational(0));
    }
    while (c_.size() < ni) c_.emplace_back(cols, Rational(0));
    return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

Rational RatPoly2::eval(const Rational& u, const Rational& v) const
{
    Rational r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        Rational row = 0;
        for (std::size_t j = c_[i].size(); j-- > 0;) row = row * v + c_[i][j];
        r = r * u + row;
    }
    return r;
}

RatPoly RatPoly2::eval_v(const Rational& v) const
{
    std::vector<Rational> out(c_.size(), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        Rational row = 0;
        for (std::size_t j = c_[i].size(); j-- > 0;) row = row * v + c_[i][j];
        out[i] = row;
    }
    return RatPoly(std::move(out));
}

RatPoly2 RatPoly2::operator-() const
{
    RatPoly2 r = *this;
    for (auto& row : r.c_) {
        for (auto& x : row) x = -x;
    }
    return r;
}

RatPoly2& RatPoly2::operator+=(const RatPoly2& o)
{
    for (int i = 0; i <= o.deg_u(); ++i) {
        for (int j = 0; j <= o.deg_v(); ++j) {
            const Rational& c = o.coeff(i, j);
            if (c != 0) at(i, j) += c;
        }
    }
    trim();
    return *this;
}

RatPoly2& RatPoly2::operator-=(const RatPoly2& o)
{
    for (int i = 0; i <= o.deg_u(); ++i) {
        for (int j = 0; j <= o.deg_v(); ++j) {
            const Rational& c = o.coeff(i, j);
            if (c != 0) at(i, j) -= c;
        }
    }
    trim();
    return *this;
}

RatPoly2 operator*(const RatPoly2& a, const RatPoly2& b)
{
    if (a.is_zero() || b.is_zero()) return RatPoly2();
    RatPoly2 r(a.deg_u() + b.deg_u(), a.deg_v() + b.deg_v());
    for (int i = 0; i <= a.deg_u(); ++i) {
        for (int j = 0; j <= a.deg_v(); ++j) {
            const Rational& ca = a.coeff(i, j);
            if (ca == 0) continue;
            for (int k = 0; k <= b.deg_u(); ++k) {
                for (int l = 0; l <= b.deg_v(); ++l) {
                    const Rational& cb = b.coeff(k, l);
                    if (cb != 0) r.at(i + k, j + l) += ca * cb;
                }
            }
        }
    }
    r.trim();
    return r;
}

bool RatPoly2::operator==(const RatPoly2& o) const
{
    const int du = std::max(deg_u(), o.deg_u());
    const int dv = std::max(deg_v(), o.deg_v());
    for (int i = 0; i <= du; ++i) {
        for (int j = 0; j <= dv; ++j) {
            if (coeff(i, j) != o.coeff(i, j)) return false;
        }
    }
    return true;
}

void RatPoly2::trim()
{
    while (!c_.empty()) {
        bool all0 = true;
        for (const auto& x : c_.back()) {
            if (x != 0) { all0 = false; break; }
        }
        if (!all0) break;
        c_.pop_back();
    }
    if (c_.empty()) return;
    std::size_t cols = 0;
    for (const auto& row : c_) {
        for (std::size_t j = row.size(); j-- > 0;) {
            if (row[j] != 0) { cols = std::max(cols, j + 1); break; }
        }
    }
    if (cols == 0) { c_.clear(); return; }
    for (auto& row : c_) row.resize(cols, Rational(0));
}

} // namespace kw
