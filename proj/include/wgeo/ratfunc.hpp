#pragma once

#include <vector>

#include "wgeo/polynomial.hpp"

namespace wgeo {

// Quotient of two polynomials over the same variable universe.
//
// Normal form kept after every operation: the denominator is nonzero,
// integer-primitive (rational content 1) with positive leading coefficient,
// a zero numerator forces denominator 1, and any common monomial factor is
// cancelled. A full polynomial-gcd cancellation is applied only when the
// denominator's total degree exceeds a configurable threshold; equality is
// decided by cross-multiplication so this laziness is unobservable.
class RatFunc {
public:
    // gcd-cancellation threshold on the denominator's total degree
    static int& reduce_threshold() {
        static int t = 8;
        return t;
    }

    RatFunc() : num_(0), den_(Polynomial::constant(0, Rational(1))) {}
    explicit RatFunc(Polynomial p)
        : num_(std::move(p)), den_(Polynomial::constant(num_.arity(), Rational(1))) {}
    RatFunc(Polynomial num, Polynomial den);
    static RatFunc constant(int arity, const Rational& c) {
        return RatFunc(Polynomial::constant(arity, c));
    }
    static RatFunc variable(int arity, int var) {
        return RatFunc(Polynomial::variable(arity, var));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    int arity() const { return num_.arity(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc pow(int k) const;
    RatFunc inv() const;

    // mathematical equality via cross-multiplication
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative(int var) const;
    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;
    bool depends_on(int var) const;

    // force a full gcd cancellation regardless of the threshold
    RatFunc reduced() const;

    std::size_t hash() const;  // hash of the fully reduced representative

private:
    void normalize(bool force_gcd = false);
    Polynomial num_, den_;
};

inline RatFunc unit_like(const RatFunc& f) {
    return RatFunc::constant(f.arity(), Rational(1));
}

// f with g substituted for the variable var. DivisionByZero when the
// denominator collapses to the zero function.
RatFunc substitute(const RatFunc& f, int var, const RatFunc& g);

} // namespace wgeo
