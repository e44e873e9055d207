#pragma once

#include <gmpxx.h>

#include <string>

#include "detkit/errors.hpp"

namespace detkit {

// Exact rational number.  Always canonical: lowest terms, denominator > 0.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rational parse(const std::string& text); // "a" or "a/b"

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    Rational inverse() const;

    // "a" when the denominator is 1, otherwise "a/b".
    std::string str() const;

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

} // namespace detkit
