#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "latdirac/errors.hpp"

namespace latdirac {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator (zero is 0/1). Thin wrapper over GMP's mpq_class
/// so the rest of the engine can pin down formatting and parsing.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) { v_.canonicalize(); }
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw DimensionMismatch("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw ParseError(0, "bad rational literal '" + s + "'");
        if (q.get_den() == 0) throw ParseError(0, "zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(q);
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    int sgn() const { return ::sgn(v_); }

    bool is_integer() const { return v_.get_den() == 1; }
    long to_long() const { return v_.get_num().get_si(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw SingularMatrix("division by zero rational");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    /// Always "num/den", e.g. "0/1", "-3/2". Exactness survives the wire.
    std::string to_string() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// "3", "-1/2": denominator suppressed when 1. For human-facing text.
    std::string pretty() const {
        if (is_integer()) return v_.get_num().get_str();
        return to_string();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.pretty();
    }

    const mpq_class& raw() const { return v_; }

  private:
    mpq_class v_;
};

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) { return Rational(n, d); }

} // namespace latdirac
