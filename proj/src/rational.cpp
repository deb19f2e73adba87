#include "mpg/rational.hpp"

#include <cctype>

namespace mpg {

Rat::Rat(BigInt num, BigInt den) {
    if (den.is_zero()) throw DivisionByZero();
    if (den < 0) {
        num = -num;
        den = -den;
    }
    v_ = BigRational(std::move(num), std::move(den));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
}

Rat pow(const Rat& base, unsigned exp) {
    return Rat(ipow(base.num(), exp), ipow(base.den(), exp));
}

std::string to_string(const Rat& r) {
    std::string s = r.num().str();
    if (!r.is_integer()) {
        s += '/';
        s += r.den().str();
    }
    return s;
}

namespace {

// digits: nonempty, all decimal, no leading zero unless the value is "0".
bool valid_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    if (s.size() > 1 && s[0] == '0') return false;
    return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    const std::string where(text);
    std::string_view rest = text;
    bool neg = false;
    if (!rest.empty() && rest[0] == '-') {
        neg = true;
        rest.remove_prefix(1);
    }
    std::string_view num_part = rest;
    std::string_view den_part;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        num_part = rest.substr(0, slash);
        den_part = rest.substr(slash + 1);
        if (den_part.empty()) throw ParseError(where, "missing denominator");
    }
    if (!valid_digits(num_part)) throw ParseError(where, "malformed numerator");
    BigInt num{std::string(num_part)};
    if (neg && num.is_zero()) throw ParseError(where, "negative zero is not canonical");
    if (neg) num = -num;
    if (den_part.empty()) return Rat(std::move(num));

    if (!valid_digits(den_part)) throw ParseError(where, "malformed denominator");
    BigInt den{std::string(den_part)};
    if (den.is_zero()) throw ParseError(where, "zero denominator");
    if (den == 1) throw ParseError(where, "denominator 1 must be omitted");
    if (boost::multiprecision::gcd(boost::multiprecision::abs(num), den) != 1)
        throw ParseError(where, "fraction not in lowest terms");
    return Rat(std::move(num), std::move(den));
}

BigInt ipow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

BigInt ceil_isqrt_pow(unsigned n) {
    if (n == 0) throw InvariantViolation("ceil_isqrt_pow requires n >= 1");
    const BigInt x = ipow(BigInt(n), n);
    BigInt s = boost::multiprecision::sqrt(x);  // floor of the square root
    if (s * s < x) ++s;
    return s;
}

unsigned long bit_length(const BigInt& v) {
    if (v.is_zero()) return 0;
    return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

}  // namespace mpg
