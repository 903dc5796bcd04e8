#include "wgeo/polynomial.hpp"

#include <algorithm>

namespace wgeo {

Polynomial Polynomial::constant(int arity, const Rational& c) {
    Polynomial p(arity);
    if (!c.is_zero()) p.t_.push_back({Mono{}, c});
    return p;
}

Polynomial Polynomial::variable(int arity, int var) {
    require(var >= 0 && var < arity, "UnknownVariable", "variable index out of range");
    Polynomial p(arity);
    Mono m;
    m.e[var] = 1;
    p.t_.push_back({m, Rational(1)});
    return p;
}

Rational Polynomial::constant_value() const {
    if (t_.empty()) return Rational(0);
    return t_[0].second;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m.total_degree());
    return d;
}

int Polynomial::deg_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max<int>(d, m.e[var]);
    return d;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(arity_);
    r.t_.reserve(t_.size());
    for (const auto& [m, c] : t_) r.t_.push_back({m, -c});
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same(o);
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
        if (t_[i].first == o.t_[j].first) {
            Rational c = t_[i].second + o.t_[j].second;
            if (!c.is_zero()) out.push_back({t_[i].first, c});
            ++i, ++j;
        } else if (Mono::lex_greater(t_[i].first, o.t_[j].first)) {
            out.push_back(t_[i++]);
        } else {
            out.push_back(o.t_[j++]);
        }
    }
    for (; i < t_.size(); ++i) out.push_back(t_[i]);
    for (; j < o.t_.size(); ++j) out.push_back(o.t_[j]);
    t_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    return *this += -o;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r(a.arity_);
    if (a.t_.empty() || b.t_.empty()) return r;
    std::vector<Polynomial::Term> prod;
    prod.reserve(a.t_.size() * b.t_.size());
    for (const auto& [ma, ca] : a.t_) {
        for (const auto& [mb, cb] : b.t_) {
            Mono m;
            for (int k = 0; k < Vars::kMaxVars; ++k) {
                int e = ma.e[k] + mb.e[k];
                require(e <= 65535, "DegreeOverflow", "monomial exponent exceeds representation");
                m.e[k] = static_cast<std::uint16_t>(e);
            }
            prod.push_back({m, ca * cb});
        }
    }
    return Polynomial::from_terms(a.arity_, std::move(prod));
}

Polynomial Polynomial::from_terms(int arity, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
        return Mono::lex_greater(x.first, y.first);
    });
    Polynomial r(arity);
    for (auto& t : terms) {
        if (!r.t_.empty() && r.t_.back().first == t.first)
            r.t_.back().second += t.second;
        else
            r.t_.push_back(std::move(t));
    }
    std::erase_if(r.t_, [](const Term& t) { return t.second.is_zero(); });
    return r;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, co] : t_) co *= c;
    return *this;
}

Polynomial Polynomial::pow(int k) const {
    require(k >= 0, "UnsupportedParams", "negative polynomial power");
    Polynomial acc = Polynomial::constant(arity_, Rational(1));
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

Polynomial Polynomial::derivative(int var) const {
    require(var >= 0 && var < arity_, "UnknownVariable", "derivative variable out of range");
    // lowering the same slot in every surviving term keeps descending lex order
    Polynomial r(arity_);
    for (const auto& [m, c] : t_) {
        if (m.e[var] == 0) continue;
        Mono d = m;
        d.e[var] -= 1;
        r.t_.push_back({d, c * Rational(m.e[var])});
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    require(static_cast<int>(point.size()) == arity_, "ArityMismatch",
            "evaluation point arity mismatch");
    // cache powers per variable
    std::vector<std::vector<Rational>> pw(arity_);
    for (int v = 0; v < arity_; ++v) {
        int d = deg_in(v);
        pw[v].reserve(d + 1);
        pw[v].push_back(Rational(1));
        for (int k = 1; k <= d; ++k) pw[v].push_back(pw[v].back() * point[v]);
    }
    Rational acc(0);
    for (const auto& [m, c] : t_) {
        Rational term = c;
        for (int v = 0; v < arity_; ++v)
            if (m.e[v]) term *= pw[v][m.e[v]];
        acc += term;
    }
    return acc;
}

double Polynomial::eval_double(const std::vector<double>& point) const {
    double acc = 0;
    for (const auto& [m, c] : t_) {
        double term = c.to_double();
        for (int v = 0; v < arity_; ++v)
            for (int k = 0; k < m.e[v]; ++k) term *= point[v];
        acc += term;
    }
    return acc;
}

Rational Polynomial::content() const {
    Rational g(0);
    for (const auto& [m, c] : t_) g = rat_content_gcd(g, c);
    return g;
}

std::size_t Polynomial::hash() const {
    std::size_t h = 14695981039346656037ULL;
    auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ULL; };
    mix(static_cast<std::size_t>(arity_));
    for (const auto& [m, c] : t_) {
        for (auto e : m.e) mix(e);
        mix(c.hash());
    }
    return h;
}

Polynomial coeff_of_power(const Polynomial& p, int var, int k) {
    std::vector<Polynomial::Term> out;
    for (const auto& [m, c] : p.terms()) {
        if (m.e[var] == k) {
            Mono m2 = m;
            m2.e[var] = 0;
            out.push_back({m2, c});
        }
    }
    return Polynomial::from_terms(p.arity(), std::move(out));
}

Polynomial mul_by_var_pow(const Polynomial& p, int var, int k) {
    std::vector<Polynomial::Term> out;
    for (const auto& [m, c] : p.terms()) {
        Mono m2 = m;
        int e = m2.e[var] + k;
        require(e <= 65535, "DegreeOverflow", "monomial exponent exceeds representation");
        m2.e[var] = static_cast<std::uint16_t>(e);
        out.push_back({m2, c});
    }
    return Polynomial::from_terms(p.arity(), std::move(out));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    require(!b.is_zero(), "DivisionByZero", "polynomial division by zero");
    Polynomial rem = a;
    Polynomial quot(a.arity_);
    const Mono& lmb = b.leading_mono();
    const Rational& lcb = b.leading_coeff();
    while (!rem.is_zero()) {
        const Mono& lma = rem.leading_mono();
        Mono q;
        for (int k = 0; k < Vars::kMaxVars; ++k) {
            if (lma.e[k] < lmb.e[k]) return std::nullopt;
            q.e[k] = static_cast<std::uint16_t>(lma.e[k] - lmb.e[k]);
        }
        Polynomial t = Polynomial::from_terms(a.arity_, {{q, rem.leading_coeff() / lcb}});
        quot += t;
        rem -= t * b;
    }
    return quot;
}

namespace {

// primitive part w.r.t. full rational content with positive leading sign
Polynomial normalize_primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    Rational c = p.content();
    if (p.leading_sign() < 0) c = -c;
    Polynomial q = p;
    q *= c.inv();
    return q;
}

// content of p viewed as a polynomial in `var`: gcd of the coefficient
// polynomials in the remaining variables
Polynomial content_in(const Polynomial& p, int var) {
    Polynomial g(p.arity());
    for (int k = 0; k <= p.deg_in(var); ++k) {
        Polynomial c = coeff_of_power(p, var, k);
        if (!c.is_zero()) g = Polynomial::gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

// iterated pseudo-remainder of a by b in `var` (deg_var a >= deg_var b)
Polynomial prem(Polynomial a, const Polynomial& b, int var) {
    int db = b.deg_in(var);
    Polynomial lcb = coeff_of_power(b, var, db);
    while (!a.is_zero() && a.deg_in(var) >= db) {
        int da = a.deg_in(var);
        Polynomial lca = coeff_of_power(a, var, da);
        a = lcb * a - mul_by_var_pow(lca, var, da - db) * b;
        // degree in var strictly decreased; keep sizes tame
        if (!a.is_zero() && a.deg_in(var) == da) fail("Internal", "pseudo-division stalled");
    }
    return a;
}

// gcd of the integer coefficients (inputs here always have integer
// coefficients: gcd normalizes both operands primitive on entry and the
// heuristic keeps integrality through every step)
mpz_class int_content(const Polynomial& p) {
    mpz_class g = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_class n = abs(c.num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

mpz_class max_abs_coeff(const Polynomial& p) {
    mpz_class m = 0;
    for (const auto& [mo, c] : p.terms()) {
        mpz_class n = abs(c.num());
        if (n > m) m = n;
    }
    return m;
}

Polynomial eval_var_at(const Polynomial& p, int var, const mpz_class& xi) {
    std::vector<mpz_class> pw(static_cast<std::size_t>(p.deg_in(var)) + 1);
    pw[0] = 1;
    for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * xi;
    std::vector<Polynomial::Term> out;
    out.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        Mono m2 = m;
        int e = m2.e[var];
        m2.e[var] = 0;
        out.push_back({m2, c * Rational(pw[static_cast<std::size_t>(e)])});
    }
    return Polynomial::from_terms(p.arity(), std::move(out));
}

// coefficient-wise symmetric remainder mod xi, values in [-xi/2, xi/2)
Polynomial sym_mod(const Polynomial& p, const mpz_class& xi) {
    std::vector<Polynomial::Term> out;
    for (const auto& [m, c] : p.terms()) {
        mpz_class n = c.num(), r;
        mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), xi.get_mpz_t());
        if (r * 2 >= xi) r -= xi;
        if (r != 0) out.push_back({m, Rational(r)});
    }
    return Polynomial::from_terms(p.arity(), std::move(out));
}

Polynomial div_coeffs_exact(const Polynomial& p, const mpz_class& xi) {
    std::vector<Polynomial::Term> out;
    out.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        mpz_class n = c.num(), q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), xi.get_mpz_t());
        require(r == 0, "Internal", "digit division left a remainder");
        out.push_back({m, Rational(q)});
    }
    return Polynomial::from_terms(p.arity(), std::move(out));
}

// Heuristic gcd, integer content included: evaluate both operands at a large
// integer xi, gcd the images recursively (plain integer gcd once every
// variable is gone), then read the polynomial back off the base-xi digits of
// the image gcd. A candidate only survives if it exactly divides both
// operands, so a wrong guess costs a retry at a larger point, never a wrong
// answer. nullopt after the retries are exhausted; the caller then falls
// back to the remainder scheme.
std::optional<Polynomial> heu_gcd(const Polynomial& a, const Polynomial& b) {
    mpz_class ca = int_content(a), cb = int_content(b), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.is_constant() || b.is_constant())
        return Polynomial::constant(a.arity(), Rational(cg));

    Polynomial A = a, B = b;
    A *= Rational(ca).inv();
    B *= Rational(cb).inv();
    int var = -1;
    for (int k = 0; k < a.arity(); ++k)
        if (A.depends_on(k) || B.depends_on(k)) {
            var = k;
            break;
        }
    const int bound = std::min(A.deg_in(var), B.deg_in(var));

    mpz_class xi = 2 * std::min(max_abs_coeff(A), max_abs_coeff(B)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) > 200000) return std::nullopt;
        Polynomial ia = eval_var_at(A, var, xi);
        Polynomial ib = eval_var_at(B, var, xi);
        if (!ia.is_zero() && !ib.is_zero()) {
            auto gamma = heu_gcd(ia, ib);
            if (gamma) {
                Polynomial cand(a.arity());
                Polynomial rem = *gamma;
                bool built = true;
                for (int k = 0; !rem.is_zero(); ++k) {
                    if (k > bound) {
                        built = false;
                        break;
                    }
                    Polynomial dig = sym_mod(rem, xi);
                    if (!dig.is_zero()) cand += mul_by_var_pow(dig, var, k);
                    rem = div_coeffs_exact(rem - dig, xi);
                }
                if (built && !cand.is_zero()) {
                    cand = normalize_primitive(cand);
                    if (Polynomial::divide_exact(A, cand) && Polynomial::divide_exact(B, cand)) {
                        cand *= Rational(cg);
                        return cand;
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

} // namespace

Polynomial Polynomial::gcd(const Polynomial& a0, const Polynomial& b0) {
    a0.check_same(b0);
    if (a0.is_zero()) return normalize_primitive(b0);
    if (b0.is_zero()) return normalize_primitive(a0);

    Polynomial a = normalize_primitive(a0);
    Polynomial b = normalize_primitive(b0);
    if (a == b) return a;

    // split off the common monomial factor
    Mono mina, minb;
    for (int k = 0; k < Vars::kMaxVars; ++k) mina.e[k] = minb.e[k] = 65535;
    for (const auto& [m, c] : a.terms())
        for (int k = 0; k < Vars::kMaxVars; ++k) mina.e[k] = std::min(mina.e[k], m.e[k]);
    for (const auto& [m, c] : b.terms())
        for (int k = 0; k < Vars::kMaxVars; ++k) minb.e[k] = std::min(minb.e[k], m.e[k]);
    Mono shared;
    bool has_shared = false;
    for (int k = 0; k < Vars::kMaxVars; ++k) {
        shared.e[k] = std::min(mina.e[k], minb.e[k]);
        if (shared.e[k]) has_shared = true;
    }
    if (has_shared) {
        auto strip = [&](const Polynomial& p) {
            std::vector<Term> out;
            for (const auto& [m, c] : p.terms()) {
                Mono m2 = m;
                for (int k = 0; k < Vars::kMaxVars; ++k)
                    m2.e[k] = static_cast<std::uint16_t>(m2.e[k] - shared.e[k]);
                out.push_back({m2, c});
            }
            return from_terms(p.arity(), std::move(out));
        };
        Polynomial g = gcd(strip(a), strip(b));
        std::vector<Term> shift;
        for (const auto& [m, c] : g.terms()) {
            Mono m2 = m;
            for (int k = 0; k < Vars::kMaxVars; ++k)
                m2.e[k] = static_cast<std::uint16_t>(m2.e[k] + shared.e[k]);
            shift.push_back({m2, c});
        }
        return from_terms(g.arity(), std::move(shift));
    }

    if (a.is_constant() || b.is_constant()) return constant(a.arity(), Rational(1));

    // cheap wins: one divides the other
    if (auto q = divide_exact(a, b)) return b;
    if (auto q = divide_exact(b, a)) return a;

    // almost always lands on the first try; the remainder scheme below is
    // the rigorous fallback
    if (auto h = heu_gcd(a, b)) return normalize_primitive(*h);

    // main variable: first shared variable; if none, the gcd is constant
    int var = -1;
    for (int k = 0; k < a.arity(); ++k)
        if (a.deg_in(k) > 0 && b.deg_in(k) > 0) {
            var = k;
            break;
        }
    if (var < 0) return constant(a.arity(), Rational(1));

    Polynomial ca = content_in(a, var);
    Polynomial cb = content_in(b, var);
    Polynomial gc = gcd(ca, cb);
    Polynomial pa = *divide_exact(a, ca);
    Polynomial pb = *divide_exact(b, cb);

    if (pa.deg_in(var) < pb.deg_in(var)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        if (pb.deg_in(var) == 0) {
            // var-primitive operands admit no var-free common factor
            return normalize_primitive(gc);
        }
        Polynomial r = prem(pa, pb, var);
        pa = std::move(pb);
        if (r.is_zero()) {
            pb = Polynomial(a.arity());
        } else {
            r = normalize_primitive(r);
            pb = *divide_exact(r, content_in(r, var));
        }
    }
    Polynomial pp = *divide_exact(pa, content_in(pa, var));
    return normalize_primitive(gc * pp);
}

} // namespace wgeo
