#pragma once

#include <array>
#include <string>
#include <vector>

#include "wgeo/linalg.hpp"

namespace wgeo {

// Bilinear form a matrix algebra is skew with respect to: the identity form
// on R^n, or the degenerate-basis Lorentzian form on R^{1,n+1} with basis
// (p, e_1..e_n, q), g(p,q)=1, g(e_i,e_j)=delta_ij.
enum class Form { euclidean, lorentzian };

Vec flatten(const Mat& m);
Mat unflatten(const Vec& v, int size);
Mat witt_form(int n);                 // (n+2)x(n+2)
Mat form_matrix(Form f, int size);
bool is_skew_for(const Mat& m, const Mat& form);

Mat bracket(const Mat& a, const Mat& b);  // AB - BA

// skew matrix with +1 at (i,j), -1 at (j,i); 1-based indices, i != j
Mat e_skew(int size, int i, int j);

// bivector x ^ y as the matrix z |-> g(x,z) y - g(y,z) x
Mat wedge(const Vec& x, const Vec& y, const Mat& form);
Mat wedge(const Vec& x, const Vec& y);  // euclidean form

// real 2m x 2m image [[B, -C], [C, B]] of the complex matrix B + iC
Mat realify(const Mat& re, const Mat& im);

// Matrix Lie algebra given by an ordered, linearly independent basis. The
// basis order is meaningful (explicit constructions refer to elements by
// position), so it is preserved rather than canonicalized; span() provides
// the canonical subspace for equality tests.
struct LieAlgebraBasis {
    Form form = Form::euclidean;
    int size = 0;  // matrices are size x size
    std::vector<Mat> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    int n() const { return form == Form::euclidean ? size : size - 2; }
    Subspace span() const;
    bool contains(const Mat& m) const;
    // coordinates of m in this basis; throws InvalidSpec when m is outside
    Vec coords_of(const Mat& m) const;
    Mat from_coords(const Vec& c) const;
    // checks independence, skewness for the declared form, bracket closure
    void validate() const;
};

bool same_span(const LieAlgebraBasis& a, const LieAlgebraBasis& b);

// smallest bracket-closed subspace containing the seeds
LieAlgebraBasis generated_subalgebra(const std::vector<Mat>& seeds, Form form);
LieAlgebraBasis derived_algebra(const LieAlgebraBasis& h);  // [h,h]
LieAlgebraBasis center(const LieAlgebraBasis& h);

// block-diagonal action on R^{a.size + b.size}; basis of a first, both
// euclidean
LieAlgebraBasis direct_sum(const LieAlgebraBasis& a, const LieAlgebraBasis& b);

// adjoint representation ad: h -> so(h) written in the given basis. Needs a
// centerless h whose basis is orthogonal with equal norms for the trace form
// -tr(AB), so that the ad-matrices are skew without rescaling.
LieAlgebraBasis adjoint_rep(const LieAlgebraBasis& h);

// ---- catalog ----------------------------------------------------------

LieAlgebraBasis so_n(int n);
LieAlgebraBasis zero_algebra(int n);  // h = 0 inside so(n)

// complex structure (x,y) |-> (-y,x) on R^m + R^m, as a matrix in so(2m)
Mat complex_structure(int m);
LieAlgebraBasis u_m(int m);   // in so(2m)
LieAlgebraBasis su_m(int m);  // in so(2m)

// right multiplications by the imaginary quaternion units on H^m = R^{4m},
// returned as (J1, J2, J3) with J3 = J1 J2; they commute with sp_m
std::array<Mat, 3> quaternion_structures(int m);
LieAlgebraBasis sp_m(int m);      // in so(4m), left multiplications
LieAlgebraBasis sp_sp1_m(int m);  // sp(m) + sp(1) in so(4m)

LieAlgebraBasis g2_so7();
LieAlgebraBasis spin7_so8();

// (2k+1)-dimensional real irreducible representation of so(3), k = 1..4;
// images are exact integer skew matrices
LieAlgebraBasis so3_irrep(int k);

// adjoin the commuting complex structure of the realified model (u/su/sp
// families only); idempotent when the structure is already inside
LieAlgebraBasis adjoin_center(const LieAlgebraBasis& h, const std::string& family);

// "so:n", "u:m", "su:m", "sp:m", "spsp1:m", "g2", "spin7", "so3irrep:k",
// optional "+t" suffix, and "zero:n" for the trivial subalgebra
LieAlgebraBasis algebra_by_name(const std::string& name);

// ---- sim(n) matrix model ---------------------------------------------

// triple (a, A, X) <-> [[a, X^t, 0], [0, A, -X], [0, 0, -a]] in the Witt
// basis (p, e_1..e_n, q)
struct SimElement {
    Rational a;
    Mat A;  // n x n
    Vec X;  // length n
};

Mat sim_matrix(const SimElement& e);
SimElement sim_split(const Mat& m);  // NotInSimN when m is not of this shape

// One of the four weakly irreducible shapes inside sim(n):
//   type 1: (R + h) |x R^n
//   type 2: h |x R^n
//   type 3: {(phi(A), A, X)}, phi nonzero, phi vanishing on [h,h]
//   type 4: {(0, A, X + psi(A))}, h inside so(m) fixing the last n-m axes,
//           psi surjective onto R^{n-m}, vanishing on [h,h]
struct SimSubalgebraSpec {
    int type = 1;
    LieAlgebraBasis h;          // euclidean, size n
    std::vector<Rational> phi;  // type 3: phi(h.basis[i])
    int m = 0;                  // type 4
    std::vector<Vec> psi;       // type 4: psi(h.basis[i]) in R^{n-m}

    int n() const { return h.size; }
};

LieAlgebraBasis sim_embed(const SimSubalgebraSpec& spec);  // InvalidSpec
// inverse of sim_embed up to basis change of h; NotInSimN when some element
// moves the line R p, NotWeaklyIrreducibleShape when the translation part
// does not match any of the four shapes
SimSubalgebraSpec classify_sim_subalgebra(const LieAlgebraBasis& g);

} // namespace wgeo
