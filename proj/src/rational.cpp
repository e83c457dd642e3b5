#include "flatcusp/rational.hpp"

#include "flatcusp/error.hpp"

#include <cctype>

namespace flatcusp {

namespace {

bool is_plain_integer(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ValidationError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer parse_integer(const std::string& text) {
    if (!is_plain_integer(text)) {
        throw ParseError("bad integer literal '" + text + "'", text);
    }
    return Integer(text);
}

Rational parse_rational(const std::string& text) {
    const size_t slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_plain_integer(text)) {
            throw ParseError("bad rational literal '" + text + "'", text);
        }
        return Rational(Integer(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_plain_integer(num) || !is_plain_integer(den)) {
        throw ParseError("bad rational literal '" + text + "'", text);
    }
    if (Integer(den) == 0) {
        throw ParseError("zero denominator in '" + text + "'", text);
    }
    return make_rational(Integer(num), Integer(den));
}

std::string to_string(const Rational& x) {
    return x.get_str();
}

std::string to_string(const Integer& x) {
    return x.get_str();
}

bool is_integer(const Rational& x) {
    return x.get_den() == 1;
}

Integer to_integer(const Rational& x) {
    if (!is_integer(x)) {
        throw ValidationError("expected an integer, got " + to_string(x));
    }
    return x.get_num();
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

} // namespace flatcusp
