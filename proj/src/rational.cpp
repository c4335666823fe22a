#include "kernelwalk/rational.hpp"

#include <cctype>
#include <cmath>

#include "kernelwalk/errors.hpp"

namespace kw {

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw input_error("empty rational literal");
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t k = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (k == part.size()) return false;
        for (; k < part.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(part[k]))) return false;
        }
        return true;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid(s)) throw input_error("bad rational literal '" + text + "'");
        return Rational(Integer(s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!valid(num) || !valid(den)) throw input_error("bad rational literal '" + text + "'");
    Integer d(den);
    if (d == 0) throw input_error("zero denominator in '" + text + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Real to_real(const Integer& z)
{
    const mpz_srcptr p = z.get_mpz_t();
    const std::size_t n = mpz_size(p);
    Real r = 0.0L;
    const Real base = std::ldexp(1.0L, GMP_NUMB_BITS);
    for (std::size_t k = n; k-- > 0;) {
        r = r * base + static_cast<Real>(mpz_getlimbn(p, static_cast<mp_size_t>(k)));
    }
    return mpz_sgn(p) < 0 ? -r : r;
}

Real to_real(const Rational& q)
{
    return to_real(Integer(q.get_num())) / to_real(Integer(q.get_den()));
}

Rational rational_from_real(Real x)
{
    if (!std::isfinite(x)) throw input_error("rational_from_real: non-finite value");
    if (x == 0) return Rational(0);
    int exp = 0;
    Real m = std::frexp(x, &exp); // |m| in [0.5, 1), x = m * 2^exp
    // 64 mantissa bits fit in two 32-bit chunks exactly.
    Integer num = 0;
    for (int k = 0; k < 3; ++k) {
        m = std::ldexp(m, 32);
        const Real hi = std::floor(m);
        num <<= 32;
        num += static_cast<long>(hi);
        m -= hi;
        exp -= 32;
        if (m == 0) break;
    }
    if (m != 0) throw input_error("rational_from_real: unsupported long double format");
    Rational q(num);
    if (exp >= 0) {
        q <<= static_cast<unsigned long>(exp);
    } else {
        q >>= static_cast<unsigned long>(-exp);
    }
    return q;
}

} // namespace kw
