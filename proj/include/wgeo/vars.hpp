#pragma once

#include <string>

#include "wgeo/errors.hpp"

namespace wgeo {

// Variable universe for a Walker chart in n transverse dimensions:
// index 0 is v, indices 1..n are x1..xn, index n+1 is u.
// Polynomials over different universes never mix.
class Vars {
public:
    static constexpr int kMaxVars = 12;

    explicit Vars(int n) : n_(n) {
        require(n >= 0 && n + 2 <= kMaxVars, "UnsupportedParams",
                "transverse dimension out of range: " + std::to_string(n));
    }

    int n() const { return n_; }
    int arity() const { return n_ + 2; }
    int v() const { return 0; }
    int x(int i) const {  // 1-based transverse index
        require(i >= 1 && i <= n_, "UnknownVariable",
                "x" + std::to_string(i) + " out of range");
        return i;
    }
    int u() const { return n_ + 1; }

    std::string name(int idx) const {
        require(idx >= 0 && idx < arity(), "UnknownVariable", "variable index");
        if (idx == 0) return "v";
        if (idx == n_ + 1) return "u";
        return "x" + std::to_string(idx);
    }

    // -1 when the identifier is not a variable of this universe
    int index_of(const std::string& s) const;

    friend bool operator==(const Vars& a, const Vars& b) { return a.n_ == b.n_; }
    friend bool operator!=(const Vars& a, const Vars& b) { return a.n_ != b.n_; }

private:
    int n_;
};

inline int Vars::index_of(const std::string& s) const {
    if (s == "v") return 0;
    if (s == "u") return n_ + 1;
    if (s.size() >= 2 && s[0] == 'x') {
        int k = 0;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return -1;
            k = k * 10 + (s[i] - '0');
        }
        if (k >= 1 && k <= n_ && s == "x" + std::to_string(k)) return k;
    }
    return -1;
}

} // namespace wgeo
