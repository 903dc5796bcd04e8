#include "wgeo/ratfunc.hpp"

#include <algorithm>

namespace wgeo {

RatFunc::RatFunc(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    require(num_.arity() == den_.arity(), "ArityMismatch",
            "numerator and denominator over different variable universes");
    require(!den_.is_zero(), "DivisionByZero", "rational function with zero denominator");
    normalize();
}

void RatFunc::normalize(bool force_gcd) {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(num_.arity(), Rational(1));
        return;
    }
    if (den_.is_constant()) {
        num_ *= den_.constant_value().inv();
        den_ = Polynomial::constant(num_.arity(), Rational(1));
        return;
    }
    // common monomial factor
    Mono mn, md;
    for (int k = 0; k < Vars::kMaxVars; ++k) mn.e[k] = md.e[k] = 65535;
    for (const auto& [m, c] : num_.terms())
        for (int k = 0; k < Vars::kMaxVars; ++k) mn.e[k] = std::min(mn.e[k], m.e[k]);
    for (const auto& [m, c] : den_.terms())
        for (int k = 0; k < Vars::kMaxVars; ++k) md.e[k] = std::min(md.e[k], m.e[k]);
    Mono shared{};
    bool has = false;
    for (int k = 0; k < Vars::kMaxVars; ++k) {
        shared.e[k] = std::min(mn.e[k], md.e[k]);
        if (shared.e[k]) has = true;
    }
    if (has) {
        auto strip = [&](const Polynomial& p) {
            std::vector<Polynomial::Term> out;
            for (const auto& [m, c] : p.terms()) {
                Mono m2 = m;
                for (int k = 0; k < Vars::kMaxVars; ++k)
                    m2.e[k] = static_cast<std::uint16_t>(m2.e[k] - shared.e[k]);
                out.push_back({m2, c});
            }
            return Polynomial::from_terms(p.arity(), std::move(out));
        };
        num_ = strip(num_);
        den_ = strip(den_);
    }
    if (force_gcd || den_.total_degree() > reduce_threshold()) {
        Polynomial g = Polynomial::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *Polynomial::divide_exact(num_, g);
            den_ = *Polynomial::divide_exact(den_, g);
        }
    }
    if (den_.is_constant()) {
        num_ *= den_.constant_value().inv();
        den_ = Polynomial::constant(num_.arity(), Rational(1));
        return;
    }
    Rational c = den_.content();
    if (den_.leading_sign() < 0) c = -c;
    if (!c.is_one()) {
        num_ *= c.inv();
        den_ *= c.inv();
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return a + (-b);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(Polynomial(a.num_.arity()));
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    require(!b.is_zero(), "DivisionByZero", "rational function division by zero");
    if (a.is_zero()) return a;
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::inv() const {
    require(!is_zero(), "DivisionByZero", "inverse of zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int k) const {
    if (k < 0) return inv().pow(-k);
    RatFunc acc = RatFunc::constant(arity(), Rational(1));
    RatFunc base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFunc RatFunc::derivative(int var) const {
    if (is_polynomial()) return RatFunc(num_.derivative(var));
    Polynomial dn = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RatFunc(std::move(dn), den_ * den_);
}

Rational RatFunc::eval(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (d.is_zero()) {
        // the reduced form may remove a spurious pole
        RatFunc r = reduced();
        Rational d2 = r.den_.eval(point);
        require(!d2.is_zero(), "PoleAtPoint", "rational function has a pole at the point");
        return r.num_.eval(point) / d2;
    }
    return num_.eval(point) / d;
}

double RatFunc::eval_double(const std::vector<double>& point) const {
    return num_.eval_double(point) / den_.eval_double(point);
}

bool RatFunc::depends_on(int var) const {
    if (!num_.depends_on(var) && !den_.depends_on(var)) return false;
    RatFunc r = reduced();
    return r.num_.depends_on(var) || r.den_.depends_on(var);
}

RatFunc RatFunc::reduced() const {
    RatFunc r = *this;
    r.normalize(/*force_gcd=*/true);
    return r;
}

std::size_t RatFunc::hash() const {
    RatFunc r = reduced();
    std::size_t h = r.num_.hash();
    h ^= r.den_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

namespace {

// Horner evaluation of p in the variable var at g
RatFunc subst_into_poly(const Polynomial& p, int var, const RatFunc& g) {
    const int d = p.deg_in(var);
    RatFunc acc{coeff_of_power(p, var, d)};
    for (int k = d - 1; k >= 0; --k) acc = acc * g + RatFunc(coeff_of_power(p, var, k));
    return acc;
}

} // namespace

RatFunc substitute(const RatFunc& f, int var, const RatFunc& g) {
    require(f.arity() == g.arity(), "ArityMismatch",
            "substitution mixes variable universes");
    return subst_into_poly(f.num(), var, g) / subst_into_poly(f.den(), var, g);
}

} // namespace wgeo
