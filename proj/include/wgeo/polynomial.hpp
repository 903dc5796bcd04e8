#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wgeo/rational.hpp"
#include "wgeo/vars.hpp"

namespace wgeo {

// Exponent vector with fixed small capacity; the active arity lives in the
// owning polynomial. Unused slots stay zero so comparisons can run over the
// full array.
struct Mono {
    std::array<std::uint16_t, Vars::kMaxVars> e{};

    int total_degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
    // descending-lex term order: true when a comes before b
    static bool lex_greater(const Mono& a, const Mono& b) { return a.e > b.e; }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept sorted in descending lexicographic order with no zero
// coefficients; two polynomials over different arities never combine.
class Polynomial {
public:
    using Term = std::pair<Mono, Rational>;

    explicit Polynomial(int arity = 0) : arity_(arity) {}
    static Polynomial constant(int arity, const Rational& c);
    static Polynomial variable(int arity, int var);

    int arity() const { return arity_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.total_degree() == 0); }
    bool is_one() const { return is_constant() && constant_value().is_one(); }
    Rational constant_value() const;  // value when is_constant()
    int total_degree() const;         // max over terms; -1 for zero
    int deg_in(int var) const;
    bool depends_on(int var) const { return deg_in(var) > 0; }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const Rational& c);
    Polynomial pow(int k) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.arity_ == b.arity_ && a.t_ == b.t_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial derivative(int var) const;
    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;

    // content: positive rational c with p/c integer-coefficient and
    // coefficient gcd 1; 0 for the zero polynomial
    Rational content() const;
    int leading_sign() const { return t_.empty() ? 0 : t_[0].second.sign(); }
    const Rational& leading_coeff() const { return t_[0].second; }
    const Mono& leading_mono() const { return t_[0].first; }

    // exact division; nullopt when b does not divide a
    static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);
    // gcd up to a positive rational scalar (returns integer-primitive,
    // positive leading coefficient)
    static Polynomial gcd(const Polynomial& a, const Polynomial& b);

    std::size_t hash() const;

    // internal-use construction from raw term list (sorts and combines)
    static Polynomial from_terms(int arity, std::vector<Term> terms);

private:
    void check_same(const Polynomial& o) const {
        require(arity_ == o.arity_, "ArityMismatch",
                "mixing polynomials over different variable universes");
    }
    int arity_;
    std::vector<Term> t_;
};

// helpers for the gcd machinery and structured coefficient access
Polynomial coeff_of_power(const Polynomial& p, int var, int k);
Polynomial mul_by_var_pow(const Polynomial& p, int var, int k);

} // namespace wgeo
