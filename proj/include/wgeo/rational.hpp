#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "wgeo/errors.hpp"

namespace wgeo {

// Exact rational scalar. mpq_class keeps values in canonical reduced form
// (gcd 1, positive denominator), which is exactly the representation
// contract, so this is a thin veneer adding error policy, parsing and
// hashing.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long n, long d) : q_(n, d) {
        require(d != 0, "DivisionByZero", "rational with zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(const mpz_class& n) : q_(n) {}

    // accepts "p", "-p", "p/q"
    static Rational from_string(const std::string& s);

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        require(!o.is_zero(), "DivisionByZero", "rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational pow(long e) const;
    Rational inv() const {
        require(!is_zero(), "DivisionByZero", "inverse of zero");
        return Rational(mpq_class(1) / q_);
    }

    double to_double() const { return q_.get_d(); }
    std::string str() const;  // "p" or "p/q"
    std::size_t hash() const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational unit_like(const Rational&) { return Rational(1); }

// gcd of |a|,|b| as a nonnegative rational on numerators/denominators:
// gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2). Used for polynomial content.
Rational rat_content_gcd(const Rational& a, const Rational& b);

} // namespace wgeo
