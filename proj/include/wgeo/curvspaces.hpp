#pragma once

#include <string>
#include <vector>

#include "wgeo/liealg.hpp"
#include "wgeo/linalg.hpp"
#include "wgeo/parallel.hpp"

namespace wgeo {

// Linear map P: R^n -> h subject to the cyclic identity
//   g(P(X)Y, Z) + g(P(Y)Z, X) + g(P(Z)X, Y) = 0,
// stored as coefficient rows over the basis of h, one row per direction.
struct WeakCurvTensor {
    LieAlgebraBasis h;        // euclidean
    std::vector<Vec> coeffs;  // h.n() rows of length h.dim()

    static WeakCurvTensor zero(const LieAlgebraBasis& h);
    static WeakCurvTensor from_flat(const LieAlgebraBasis& h, const Vec& flat);
    // decompose the given matrices over the basis of h; InvalidSpec when a
    // value falls outside the span
    static WeakCurvTensor from_values(const LieAlgebraBasis& h, const std::vector<Mat>& values);

    int n() const { return h.n(); }
    Mat value(int i) const;         // P(e_{i+1}), 0-based i
    Mat apply(const Vec& x) const;  // P(x)
    Vec flat() const;               // direction-major coefficients
    bool is_zero() const;
};

bool cyclic_identity_holds(const WeakCurvTensor& P);

// Bilinear skew map R: Lambda^2 R^N -> g, one coefficient row per basis pair.
struct AlgCurvTensor {
    LieAlgebraBasis g;        // euclidean, or lorentzian in the Witt basis
    std::vector<Vec> coeffs;  // pair_count(size()) rows of length g.dim()

    static AlgCurvTensor zero(const LieAlgebraBasis& g);
    static AlgCurvTensor from_flat(const LieAlgebraBasis& g, const Vec& flat);

    int size() const { return g.size; }
    Mat value(int a, int b) const;  // R(s_a, s_b), either order
    Mat eval(const Vec& u, const Vec& v) const;
    Vec flat() const;
    bool is_zero() const;
};

bool bianchi_holds(const AlgCurvTensor& R);
// (R(X,Y)Z, W) = (R(Z,W)X, Y) for the declared form
bool pair_symmetry_holds(const AlgCurvTensor& R);

// Ric(U,V) = tr(Z -> R(Z,U)V), and its trace against the inverse form
Mat ricci(const AlgCurvTensor& R);
Rational scalar_curv(const AlgCurvTensor& R);

// Constraint matrix of the cyclic identity: one row per triple i<j<k of
// directions, unknowns direction-major over the basis of h.
Mat pspace_constraints(const LieAlgebraBasis& h, Exec ex = Exec::par);
// all weak curvature tensors, as a subspace of flattened coefficients
Subspace pspace(const LieAlgebraBasis& h, Exec ex = Exec::par);

// First-Bianchi constraint matrix over Hom(Lambda^2 R^N, g): one row per
// triple a<b<c and ambient component.
Mat bianchi_constraints(const LieAlgebraBasis& g, Exec ex = Exec::par);
Subspace rspace(const LieAlgebraBasis& g, Exec ex = Exec::par);

Vec ric_tilde(const WeakCurvTensor& P);  // sum_i P(e_i) e_i
// the same contraction as a matrix on flattened weak tensors
Mat ric_tilde_matrix(const LieAlgebraBasis& h);

struct PSplit {
    Subspace p0;  // kernel of ric_tilde inside pspace
    Subspace p1;  // orthogonal complement of p0 in pspace, entrywise form
};
// The split is only meaningful for irreducibly acting algebras, and
// irreducibility is asserted by catalog provenance: the argument is a
// catalog name, not a basis. NotIrreducibleCatalog otherwise.
PSplit split_p0_p1(const std::string& catalog_name, Exec ex = Exec::par);

struct WeakBergerVerdict {
    bool is_weak_berger = false;
    Subspace L;  // span of all values P(e_i), inside flattened matrices
};
WeakBergerVerdict weak_berger(const LieAlgebraBasis& h, Exec ex = Exec::par);

// P(.) = R(., x) for a euclidean curvature tensor
WeakCurvTensor tau(const AlgCurvTensor& R, const Vec& x);

// ---- explicit constructions --------------------------------------------

// P(y) = Sy ^ x + y ^ Sx over so(n), S symmetric
WeakCurvTensor build_P_so_pair(const Mat& S, const Vec& x);
// P(y) = Sy ^ x with tr S = 0 and Sx = 0; lands in the ric_tilde kernel
WeakCurvTensor build_P_so_p0(const Mat& S, const Vec& x);
// P(y) = x ^ y
WeakCurvTensor build_P_so_p1(const Vec& x);
// P(y) = -1/2 g(Jx,y) J + 1/4 (x^y + Jx^Jy) over u(m), |x| = 2m
WeakCurvTensor build_P_u(int m, const Vec& x);
// the quaternionic analogue over sp(m)+sp(1), summed over J1, J2, J3
WeakCurvTensor build_P_spsp1(int m, const Vec& x);
// P(y) = [x, y] over the adjoint representation of h
WeakCurvTensor build_P_adjoint(const LieAlgebraBasis& h, const Vec& x);

// Complex three-index coefficients S_abc = S_cba, 1-based indices in 1..m.
// The associated direction-linear map sends e_a to the complex matrix with
// (c,b) entry S_acb, and the conjugate-built map sends e_a to the matrix
// with (c,b) entry conj(S_abc), antilinearly in the direction.
struct SymCubic {
    int m = 0;
    std::vector<Rational> re, im;  // m^3 entries each

    explicit SymCubic(int m);
    Rational& re_at(int a, int b, int c);
    Rational& im_at(int a, int b, int c);
    const Rational& re_at(int a, int b, int c) const;
    const Rational& im_at(int a, int b, int c) const;
};

enum class UnitaryFamily { u, su, sp };

// difference of the two maps above, realified: spans pspace of u(m) as S
// ranges over all symmetric coefficients; the su family adds the trace
// condition sum_b S_abb = 0, the sp family (even m) requires the values to
// be symplectic
WeakCurvTensor build_P_from_S(const SymCubic& S, UnitaryFamily fam);

// the committed generator-table maps into G2 in so(7) and spin(7) in so(8)
WeakCurvTensor build_P_g2();
WeakCurvTensor build_P_spin7();

// P + (1/(n-1)) ric_tilde(P) ^ . , retyped over the full so(n); annihilated
// by ric_tilde
WeakCurvTensor weyl_component(const WeakCurvTensor& P);

// ---- Lorentzian assembly ------------------------------------------------

// The five pieces determining a curvature tensor with values in a weakly
// irreducible subalgebra of sim(n).
struct CurvComponents {
    Rational lambda;
    Vec vvec;          // length n
    AlgCurvTensor R0;  // over h
    WeakCurvTensor P;  // over the same h
    Mat T;             // symmetric n x n
};

// Values in the Witt basis (p, e_1..e_n, q):
//   R(p,q) = -lambda p^q - p^v,   R(X,Y) = R0(X,Y) + p^(P(X)Y - P(Y)X),
//   R(X,q) = -g(v,X) p^q + P(X) - p^T(X),   R(p,X) = 0.
// The type conditions of the target embedding are enforced and named in
// ConstraintViolated errors.
AlgCurvTensor assemble_curvature(const CurvComponents& c, const SimSubalgebraSpec& spec);

// Columns of the frame change p -> mu p, X -> X - g(X,W) p,
// q -> (1/mu)(-g(W,W)/2 p + W + q); the new frame is again a Witt basis.
Mat witt_rebase_matrix(int n, const Rational& mu, const Vec& W);

// components of the same curvature tensor written in the rebased frame
CurvComponents rebase_witt(const CurvComponents& c, const Rational& mu, const Vec& W);

} // namespace wgeo
