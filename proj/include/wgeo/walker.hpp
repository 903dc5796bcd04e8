#pragma once

#include <string>
#include <vector>

#include "wgeo/linalg.hpp"
#include "wgeo/matrix.hpp"
#include "wgeo/parallel.hpp"
#include "wgeo/ratfunc.hpp"
#include "wgeo/vars.hpp"

namespace wgeo {

using FMat = Matrix<RatFunc>;
using FVec = std::vector<RatFunc>;

// Walker chart in dimension n+2: coordinates (v, x1..xn, u), metric
//   g = 2 dv du + h_ij dx^i dx^j + 2 A_i dx^i du + H (du)^2
// with h and A free of v. Coordinate indices follow Vars: 0 = v,
// 1..n = x_i, n+1 = u.
struct WalkerMetric {
    int n = 0;
    FMat h;     // n x n symmetric, entries in (x, u)
    FVec A;     // n entries in (x, u)
    RatFunc H;  // entry in (v, x, u)

    Vars vars() const { return Vars(n); }
    int dim() const { return n + 2; }

    // shape, symmetry, v-freeness; DegenerateMetric when det h = 0
    void validate() const;

    FMat metric() const;          // (n+2) x (n+2) coordinate components
    FMat inverse_metric() const;  // DegenerateMetric when h is singular

    static WalkerMetric minkowski(int n);

    // { "n": int, "h": [[expr]], "A": [expr], "H": expr }
    static WalkerMetric from_json(const std::string& text);
    std::string to_json() const;
};

bool operator==(const WalkerMetric& a, const WalkerMetric& b);
inline bool operator!=(const WalkerMetric& a, const WalkerMetric& b) { return !(a == b); }

// frame p = d_v, X_i = d_i - A_i d_v, q = d_u - (1/2) H d_v; one row of
// coordinate coefficients per frame vector, ordered (p, X_1..X_n, q)
struct FrameField {
    FMat rows;
    FMat gram(const WalkerMetric& g) const;
};
FrameField frame_field(const WalkerMetric& g);

// Levi-Civita symbols: result[c].at(a, b) = Gamma^c_{ab}
std::vector<FMat> christoffel(const WalkerMetric& g, Exec ex = Exec::par);

// Dense tensor of fixed rank with every index running over the chart
// dimension; entries are rational functions of the coordinates.
class CovTensor {
public:
    CovTensor() = default;
    CovTensor(int dim, int rank, const RatFunc& zero);

    int dim() const { return dim_; }
    int rank() const { return rank_; }

    template <class... I>
    RatFunc& at(I... is) {
        const int idx[] = {static_cast<int>(is)...};
        return d_[flat(idx, sizeof...(is))];
    }
    template <class... I>
    const RatFunc& at(I... is) const {
        const int idx[] = {static_cast<int>(is)...};
        return d_[flat(idx, sizeof...(is))];
    }

    bool is_zero() const;

    friend bool operator==(const CovTensor& a, const CovTensor& b) {
        return a.dim_ == b.dim_ && a.rank_ == b.rank_ && a.d_ == b.d_;
    }
    friend bool operator!=(const CovTensor& a, const CovTensor& b) { return !(a == b); }

private:
    std::size_t flat(const int* idx, std::size_t k) const;

    int dim_ = 0;
    int rank_ = 0;
    std::vector<RatFunc> d_;
};

// curvature operators per coordinate pair, with the convention
// R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]:
// result[pair_index(c,d,n+2)].at(a, b) = (R(d_c, d_d))^a_b
std::vector<FMat> riemann_op(const WalkerMetric& g, Exec ex = Exec::par);
// fully covariant grid: at(a,b,c,d) = g(R(d_c, d_d) d_b, d_a)
CovTensor riemann(const WalkerMetric& g, Exec ex = Exec::par);

FMat ricci(const WalkerMetric& g, Exec ex = Exec::par);
RatFunc scalar_curv(const WalkerMetric& g, Exec ex = Exec::par);
// conformal curvature, same layout as riemann
CovTensor weyl(const WalkerMetric& g, Exec ex = Exec::par);

// rank 5: at(e,a,b,c,d) = (nabla_e R)_{abcd}; rank 6 prepends the outer
// derivative index
CovTensor nabla_R(const WalkerMetric& g, Exec ex = Exec::par);
CovTensor nabla2_R(const WalkerMetric& g, Exec ex = Exec::par);

// geometry of the transverse family h(u): Levi-Civita symbols over the x
// variables, curvature operators per transverse pair k<l, Ricci, scalar
std::vector<FMat> transverse_christoffel(const WalkerMetric& g);
std::vector<FMat> transverse_curvature_op(const WalkerMetric& g);
FMat transverse_ricci(const WalkerMetric& g);
RatFunc transverse_scalar_curv(const WalkerMetric& g);

// Curvature through the frame: lambda = (1/2) d_v d_v H, the transverse
// vector field, P with h_il P^l_{jk} = g(R(X_k,q)X_j, X_i), T_ij =
// -g(R(X_i,q)q, X_j), and the curvature operators R0 of h(u). P and T are
// taken from the frame contractions; the closed-form transverse expressions
// are recomputed independently and any mismatch is flagged, not absorbed.
struct CurvatureComponents {
    RatFunc lambda;
    FVec vvec;               // contravariant transverse components
    std::vector<FMat> P;     // P[k].at(i, j) = P^i_{jk}
    FMat T;                  // covariant, symmetric
    std::vector<FMat> R0;    // per transverse pair (k<l): (R0(X_k,X_l))^i_j
    bool printed_P_agrees = true;
    bool printed_T_agrees = true;
};
CurvatureComponents extract_components(const WalkerMetric& g, Exec ex = Exec::par);

// the closed-form transverse expressions for P and T
std::vector<FMat> transverse_P_formula(const WalkerMetric& g);
FMat transverse_T_formula(const WalkerMetric& g);

// v |-> v - f(x,u): A_i += d_i f, H1 += 2 lambda f, H0 += H1 f + lambda f^2
// + 2 d_u f. Requires H = lambda v^2 + v H1 + H0 with constant lambda;
// NotQuadraticInV otherwise.
WalkerMetric shift_v(const WalkerMetric& g, const RatFunc& f);

// A = 0, h = identity, H independent of v
bool is_ppwave(const WalkerMetric& g);

} // namespace wgeo
