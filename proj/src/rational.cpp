#include "wgeo/rational.hpp"

#include <ostream>

namespace wgeo {

Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class q(s, 10);
            q.canonicalize();
            return Rational(q);
        }
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den(s.substr(slash + 1), 10);
        require(den != 0, "DivisionByZero", "rational literal with zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    } catch (const std::invalid_argument&) {
        fail("BadNumber", "cannot parse rational '" + s + "'");
    }
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), k);
    if (neg) {
        require(n != 0, "DivisionByZero", "zero to negative power");
        std::swap(n, d);
    }
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t Rational::hash() const {
    auto mix = [](std::size_t h, std::size_t v) {
        return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    };
    std::size_t h = 1469598103934665603ULL;
    const mpz_srcptr n = q_.get_num().get_mpz_t();
    const mpz_srcptr d = q_.get_den().get_mpz_t();
    h = mix(h, static_cast<std::size_t>(mpz_sgn(n)));
    for (std::size_t i = 0; i < mpz_size(n); ++i)
        h = mix(h, static_cast<std::size_t>(mpz_getlimbn(n, i)));
    for (std::size_t i = 0; i < mpz_size(d); ++i)
        h = mix(h, static_cast<std::size_t>(mpz_getlimbn(d, i)));
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational rat_content_gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    mpz_class g, l;
    mpz_gcd(g.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    mpq_class q(g, l);
    q.canonicalize();
    return Rational(q);
}

} // namespace wgeo
