#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <utility>

#include "mpg/errors.hpp"

namespace mpg {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/*
 * Exact rational scalar.
 *
 * Always kept canonical: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
 * Backed by boost::multiprecision, so there is no overflow and no rounding;
 * every operation is exact. The only floating-point escape hatch is
 * to_double_lossy(), for display purposes.
 *
 * Text form is "p/q" with the sign on the numerator and "/q" omitted when
 * q = 1. parse_rat() rejects non-canonical input.
 */
class Rat {
public:
    Rat() = default;
    Rat(int v) : v_(v) {}
    Rat(long v) : v_(static_cast<long long>(v)) {}
    Rat(long long v) : v_(v) {}
    explicit Rat(BigInt v) : v_(std::move(v)) {}
    Rat(BigInt num, BigInt den);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return den() == 1; }
    int sign() const { return v_.sign(); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend Rat operator-(const Rat& a) { Rat r; r.v_ = -a.v_; return r; }
    friend Rat operator+(const Rat& a) { return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    // Lossy. Display only; never feeds back into any computation.
    double to_double_lossy() const { return v_.convert_to<double>(); }

private:
    BigRational v_;
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

Rat pow(const Rat& base, unsigned exp);

std::string to_string(const Rat& r);

// Parses canonical "p/q" (or "p"). Throws ParseError on anything else,
// including reducible fractions, zero or negative denominators, and
// leading zeros.
Rat parse_rat(std::string_view text);

// base^exp over arbitrary-precision integers, exp >= 0.
BigInt ipow(const BigInt& base, unsigned exp);

// Smallest integer >= n^{n/2}, i.e. ceil(sqrt(n^n)). n^{n/2} is irrational
// for odd n, so an exact integer majorant is computed via the integer
// square root.
BigInt ceil_isqrt_pow(unsigned n);

// Number of significant bits of |v|; 0 for v = 0. Used for coefficient-size
// reporting only.
unsigned long bit_length(const BigInt& v);

}  // namespace mpg
