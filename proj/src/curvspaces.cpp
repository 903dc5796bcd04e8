#include "wgeo/curvspaces.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "wgeo/errors.hpp"

namespace wgeo {

namespace {

std::vector<std::array<int, 3>> index_triples(int n) {
    std::vector<std::array<int, 3>> t;
    t.reserve(static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) t.push_back({i, j, k});
    return t;
}

Mat vstack(const Mat& a, const Mat& b) {
    require(a.cols() == b.cols(), "ShapeMismatch", "vstack needs equal widths");
    Mat out(a.rows() + b.rows(), a.cols(), Rational(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
    return out;
}

Vec unit_vec(int n, int i) {
    Vec e(n, Rational(0));
    e[i] = Rational(1);
    return e;
}

Vec mat_col(const Mat& m, int j) {
    Vec c(m.rows(), Rational(0));
    for (int i = 0; i < m.rows(); ++i) c[i] = m.at(i, j);
    return c;
}

Vec apply_mat(const Mat& m, const Vec& x) {
    require(m.cols() == static_cast<int>(x.size()), "ShapeMismatch", "matrix-vector shape");
    Vec y(m.rows(), Rational(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero() && !x[j].is_zero()) y[i] += m.at(i, j) * x[j];
    return y;
}

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Rational dot(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), "ShapeMismatch", "dot product shape");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

// ---- WeakCurvTensor ------------------------------------------------------

WeakCurvTensor WeakCurvTensor::zero(const LieAlgebraBasis& h) {
    WeakCurvTensor P{h, {}};
    P.coeffs.assign(h.n(), Vec(h.dim(), Rational(0)));
    return P;
}

WeakCurvTensor WeakCurvTensor::from_flat(const LieAlgebraBasis& h, const Vec& flat) {
    const int n = h.n(), d = h.dim();
    require(static_cast<int>(flat.size()) == n * d, "ShapeMismatch",
            "flattened weak tensor has the wrong length");
    WeakCurvTensor P{h, {}};
    P.coeffs.assign(n, Vec(d, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a) P.coeffs[i][a] = flat[i * d + a];
    return P;
}

WeakCurvTensor WeakCurvTensor::from_values(const LieAlgebraBasis& h, const std::vector<Mat>& values) {
    require(static_cast<int>(values.size()) == h.n(), "ShapeMismatch",
            "one value per direction expected");
    WeakCurvTensor P{h, {}};
    P.coeffs.reserve(values.size());
    for (const auto& v : values) P.coeffs.push_back(h.coords_of(v));
    return P;
}

Mat WeakCurvTensor::value(int i) const { return h.from_coords(coeffs.at(i)); }

Mat WeakCurvTensor::apply(const Vec& x) const {
    require(static_cast<int>(x.size()) == n(), "ShapeMismatch", "direction of the wrong length");
    Vec c(h.dim(), Rational(0));
    for (int i = 0; i < n(); ++i)
        if (!x[i].is_zero())
            for (int a = 0; a < h.dim(); ++a) c[a] += x[i] * coeffs[i][a];
    return h.from_coords(c);
}

Vec WeakCurvTensor::flat() const {
    Vec f;
    f.reserve(static_cast<std::size_t>(n()) * h.dim());
    for (const auto& row : coeffs) f.insert(f.end(), row.begin(), row.end());
    return f;
}

bool WeakCurvTensor::is_zero() const {
    for (const auto& row : coeffs)
        if (!vec_is_zero(row)) return false;
    return true;
}

bool cyclic_identity_holds(const WeakCurvTensor& P) {
    const int n = P.n();
    std::vector<Mat> vals;
    vals.reserve(n);
    for (int i = 0; i < n; ++i) vals.push_back(P.value(i));
    // g(P(e_i)e_j, e_k) is entry (k,j); the sum is alternating in (i,j,k)
    // for skew values, so distinct unordered triples decide everything
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Rational s = vals[i].at(k, j) + vals[j].at(i, k) + vals[k].at(j, i);
                if (!s.is_zero()) return false;
            }
    return true;
}

// ---- AlgCurvTensor -------------------------------------------------------

AlgCurvTensor AlgCurvTensor::zero(const LieAlgebraBasis& g) {
    AlgCurvTensor R{g, {}};
    R.coeffs.assign(pair_count(g.size), Vec(g.dim(), Rational(0)));
    return R;
}

AlgCurvTensor AlgCurvTensor::from_flat(const LieAlgebraBasis& g, const Vec& flat) {
    const int p = pair_count(g.size), d = g.dim();
    require(static_cast<int>(flat.size()) == p * d, "ShapeMismatch",
            "flattened curvature tensor has the wrong length");
    AlgCurvTensor R{g, {}};
    R.coeffs.assign(p, Vec(d, Rational(0)));
    for (int i = 0; i < p; ++i)
        for (int a = 0; a < d; ++a) R.coeffs[i][a] = flat[i * d + a];
    return R;
}

Mat AlgCurvTensor::value(int a, int b) const {
    if (a == b) return Mat(size(), size(), Rational(0));
    if (a < b) return g.from_coords(coeffs.at(pair_index(a, b, size())));
    return -g.from_coords(coeffs.at(pair_index(b, a, size())));
}

Mat AlgCurvTensor::eval(const Vec& u, const Vec& v) const {
    const int N = size();
    require(static_cast<int>(u.size()) == N && static_cast<int>(v.size()) == N,
            "ShapeMismatch", "curvature arguments of the wrong length");
    Vec c(g.dim(), Rational(0));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
            Rational w = u[a] * v[b] - u[b] * v[a];
            if (w.is_zero()) continue;
            const Vec& row = coeffs[pair_index(a, b, N)];
            for (int k = 0; k < g.dim(); ++k) c[k] += w * row[k];
        }
    return g.from_coords(c);
}

Vec AlgCurvTensor::flat() const {
    Vec f;
    f.reserve(coeffs.size() * static_cast<std::size_t>(g.dim()));
    for (const auto& row : coeffs) f.insert(f.end(), row.begin(), row.end());
    return f;
}

bool AlgCurvTensor::is_zero() const {
    for (const auto& row : coeffs)
        if (!vec_is_zero(row)) return false;
    return true;
}

bool bianchi_holds(const AlgCurvTensor& R) {
    const int N = R.size();
    std::vector<Mat> vals;
    vals.reserve(pair_count(N));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) vals.push_back(R.value(a, b));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            for (int c = b + 1; c < N; ++c) {
                const Mat& ab = vals[pair_index(a, b, N)];
                const Mat& bc = vals[pair_index(b, c, N)];
                const Mat& ac = vals[pair_index(a, c, N)];
                for (int r = 0; r < N; ++r) {
                    Rational s = ab.at(r, c) + bc.at(r, a) - ac.at(r, b);
                    if (!s.is_zero()) return false;
                }
            }
    return true;
}

bool pair_symmetry_holds(const AlgCurvTensor& R) {
    const int N = R.size();
    const Mat G = form_matrix(R.g.form, N);
    // quad(a,b,c,d) = (R(s_a,s_b)s_c, s_d)
    std::vector<Mat> low;  // G * R(s_a,s_b), indexed by pair
    low.reserve(pair_count(N));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) low.push_back(G * R.value(a, b));
    for (int p = 0; p < pair_count(N); ++p)
        for (int q = p; q < pair_count(N); ++q) {
            // recover the index pairs
            int a = 0, b = 0, c = 0, d = 0, t = p, u = q;
            for (a = 0; t >= N - 1 - a; ++a) t -= N - 1 - a;
            b = a + 1 + t;
            for (c = 0; u >= N - 1 - c; ++c) u -= N - 1 - c;
            d = c + 1 + u;
            if (low[p].at(d, c) != low[q].at(b, a)) return false;
        }
    return true;
}

Mat ricci(const AlgCurvTensor& R) {
    const int N = R.size();
    std::vector<Mat> vals;
    vals.reserve(pair_count(N));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) vals.push_back(R.value(a, b));
    Mat ric(N, N, Rational(0));
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v) {
            Rational s(0);
            for (int a = 0; a < N; ++a) {
                if (a == u) continue;
                if (a < u)
                    s += vals[pair_index(a, u, N)].at(a, v);
                else
                    s -= vals[pair_index(u, a, N)].at(a, v);
            }
            ric.at(u, v) = s;
        }
    return ric;
}

Rational scalar_curv(const AlgCurvTensor& R) {
    // both supported forms are involutive, so the inverse form is the form
    const Mat G = form_matrix(R.g.form, R.size());
    const Mat ric = ricci(R);
    Rational s(0);
    for (int u = 0; u < R.size(); ++u)
        for (int v = 0; v < R.size(); ++v)
            if (!G.at(u, v).is_zero()) s += G.at(u, v) * ric.at(u, v);
    return s;
}

// ---- solution spaces -----------------------------------------------------

Mat pspace_constraints(const LieAlgebraBasis& h, Exec ex) {
    require(h.form == Form::euclidean, "UnsupportedParams",
            "weak curvature tensors live over euclidean algebras");
    const int n = h.n(), d = h.dim();
    const auto triples = index_triples(n);
    Mat sys(static_cast<int>(triples.size()), n * d, Rational(0));
    parallel_for(triples.size(), ex, [&](std::size_t t) {
        const auto [i, j, k] = triples[t];
        const int row = static_cast<int>(t);
        for (int a = 0; a < d; ++a) {
            const Mat& A = h.basis[a];
            sys.at(row, i * d + a) += A.at(k, j);
            sys.at(row, j * d + a) += A.at(i, k);
            sys.at(row, k * d + a) += A.at(j, i);
        }
    });
    return sys;
}

Subspace pspace(const LieAlgebraBasis& h, Exec ex) {
    if (h.n() * h.dim() == 0) return Subspace(h.n() * h.dim());
    return kernel(pspace_constraints(h, ex), ex);
}

Mat bianchi_constraints(const LieAlgebraBasis& g, Exec ex) {
    const int N = g.size, d = g.dim();
    const auto triples = index_triples(N);
    Mat sys(static_cast<int>(triples.size()) * N, pair_count(N) * d, Rational(0));
    parallel_for(triples.size(), ex, [&](std::size_t t) {
        const auto [a, b, c] = triples[t];
        const int ab = pair_index(a, b, N), bc = pair_index(b, c, N), ac = pair_index(a, c, N);
        for (int r = 0; r < N; ++r) {
            const int row = static_cast<int>(t) * N + r;
            for (int k = 0; k < d; ++k) {
                const Mat& B = g.basis[k];
                sys.at(row, ab * d + k) += B.at(r, c);
                sys.at(row, bc * d + k) += B.at(r, a);
                sys.at(row, ac * d + k) -= B.at(r, b);
            }
        }
    });
    return sys;
}

Subspace rspace(const LieAlgebraBasis& g, Exec ex) {
    const int unknowns = pair_count(g.size) * g.dim();
    if (unknowns == 0) return Subspace(unknowns);
    if (g.size < 3) return Subspace::full(unknowns);  // no triples to constrain
    return kernel(bianchi_constraints(g, ex), ex);
}

Vec ric_tilde(const WeakCurvTensor& P) {
    const int n = P.n();
    Vec r(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        Vec col = apply_mat(P.value(i), unit_vec(n, i));
        for (int k = 0; k < n; ++k) r[k] += col[k];
    }
    return r;
}

Mat ric_tilde_matrix(const LieAlgebraBasis& h) {
    const int n = h.n(), d = h.dim();
    Mat m(n, n * d, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a)
            for (int r = 0; r < n; ++r) m.at(r, i * d + a) = h.basis[a].at(r, i);
    return m;
}

namespace {

// irreducibility of the catalog actions; decided by provenance, not computed
bool catalog_acts_irreducibly(const std::string& name) {
    std::string base = name;
    if (base.size() > 2 && base.substr(base.size() - 2) == "+t") base = base.substr(0, base.size() - 2);
    std::string family = base;
    long param = 0;
    if (auto colon = base.find(':'); colon != std::string::npos) {
        family = base.substr(0, colon);
        param = std::strtol(base.c_str() + colon + 1, nullptr, 10);
    }
    if (family == "so") return param >= 2;
    if (family == "u") return param >= 1;
    if (family == "su") return param >= 2;
    if (family == "sp") return param >= 1;
    if (family == "spsp1") return param >= 1;
    if (family == "g2" || family == "spin7" || family == "so3irrep") return true;
    return false;
}

} // namespace

PSplit split_p0_p1(const std::string& catalog_name, Exec ex) {
    const LieAlgebraBasis h = algebra_by_name(catalog_name);
    require(catalog_acts_irreducibly(catalog_name), "NotIrreducibleCatalog",
            "the split needs an irreducibly acting catalog algebra, got " + catalog_name);
    const int n = h.n(), d = h.dim();
    const Mat sys = pspace_constraints(h, ex);
    const Mat ric = ric_tilde_matrix(h);
    PSplit out;
    out.p0 = kernel(vstack(sys, ric), ex);
    // Gram matrix of the basis of h under <A,B> = tr(A^t B)
    Mat gram(d, d, Rational(0));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Rational s(0);
            for (int r = 0; r < h.size; ++r)
                for (int c = 0; c < h.size; ++c) s += h.basis[a].at(r, c) * h.basis[b].at(r, c);
            gram.at(a, b) = s;
        }
    // rows demanding orthogonality to each element of p0 under the induced
    // entrywise form on flattened weak tensors
    Mat orth(out.p0.dim(), n * d, Rational(0));
    parallel_for(static_cast<std::size_t>(out.p0.dim()), ex, [&](std::size_t q) {
        const Vec row = out.p0.basis().row(static_cast<int>(q));
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < d; ++b) {
                Rational s(0);
                for (int a = 0; a < d; ++a)
                    if (!row[i * d + a].is_zero()) s += row[i * d + a] * gram.at(a, b);
                orth.at(static_cast<int>(q), i * d + b) = s;
            }
    });
    out.p1 = kernel(vstack(sys, orth), ex);
    require(out.p0.dim() + out.p1.dim() == pspace(h, ex).dim(), "InternalError",
            "orthogonal split lost dimensions");
    return out;
}

WeakBergerVerdict weak_berger(const LieAlgebraBasis& h, Exec ex) {
    const Subspace S = pspace(h, ex);
    SpanBuilder span(h.size * h.size);
    for (int r = 0; r < S.dim(); ++r) {
        const WeakCurvTensor P = WeakCurvTensor::from_flat(h, S.basis().row(r));
        for (int i = 0; i < P.n(); ++i) span.insert(flatten(P.value(i)));
    }
    WeakBergerVerdict v;
    v.L = span.subspace();
    v.is_weak_berger = (v.L == h.span());
    return v;
}

WeakCurvTensor tau(const AlgCurvTensor& R, const Vec& x) {
    require(R.g.form == Form::euclidean, "UnsupportedParams",
            "tau contracts a euclidean curvature tensor");
    const int n = R.size(), d = R.g.dim();
    require(static_cast<int>(x.size()) == n, "ShapeMismatch", "direction of the wrong length");
    WeakCurvTensor P = WeakCurvTensor::zero(R.g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || x[j].is_zero()) continue;
            const Vec& row = R.coeffs[pair_index(std::min(i, j), std::max(i, j), n)];
            const Rational w = i < j ? x[j] : -x[j];
            for (int a = 0; a < d; ++a) P.coeffs[i][a] += w * row[a];
        }
    return P;
}

// ---- explicit constructions ----------------------------------------------

WeakCurvTensor build_P_so_pair(const Mat& S, const Vec& x) {
    const int n = S.rows();
    require(S.cols() == n && static_cast<int>(x.size()) == n, "ShapeMismatch",
            "so_pair needs a square S and a matching direction");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(S.at(i, j) == S.at(j, i), "ConstraintViolated", "so_pair needs a symmetric S");
    std::vector<Mat> vals;
    const Vec Sx = apply_mat(S, x);
    for (int i = 0; i < n; ++i) {
        const Vec ei = unit_vec(n, i);
        vals.push_back(wedge(apply_mat(S, ei), x) + wedge(ei, Sx));
    }
    return WeakCurvTensor::from_values(so_n(n), vals);
}

WeakCurvTensor build_P_so_p0(const Mat& S, const Vec& x) {
    const int n = S.rows();
    require(S.cols() == n && static_cast<int>(x.size()) == n, "ShapeMismatch",
            "so_p0 needs a square S and a matching direction");
    Rational tr(0);
    for (int i = 0; i < n; ++i) {
        tr += S.at(i, i);
        for (int j = i + 1; j < n; ++j)
            require(S.at(i, j) == S.at(j, i), "ConstraintViolated", "so_p0 needs a symmetric S");
    }
    require(tr.is_zero(), "ConstraintViolated", "so_p0 needs tr S = 0");
    require(vec_is_zero(apply_mat(S, x)), "ConstraintViolated", "so_p0 needs Sx = 0");
    std::vector<Mat> vals;
    for (int i = 0; i < n; ++i) vals.push_back(wedge(apply_mat(S, unit_vec(n, i)), x));
    return WeakCurvTensor::from_values(so_n(n), vals);
}

WeakCurvTensor build_P_so_p1(const Vec& x) {
    const int n = static_cast<int>(x.size());
    std::vector<Mat> vals;
    for (int i = 0; i < n; ++i) vals.push_back(wedge(x, unit_vec(n, i)));
    return WeakCurvTensor::from_values(so_n(n), vals);
}

WeakCurvTensor build_P_u(int m, const Vec& x) {
    const int n = 2 * m;
    require(static_cast<int>(x.size()) == n, "ShapeMismatch", "direction must have length 2m");
    const Mat J = complex_structure(m);
    const Vec Jx = apply_mat(J, x);
    // the +1/2 coefficient on the J term is forced by the cyclic identity
    const Rational half(1, 2), quarter(1, 4);
    std::vector<Mat> vals;
    for (int i = 0; i < n; ++i) {
        const Vec ei = unit_vec(n, i);
        Mat v = J.scaled(half * Jx[i]) +
                (wedge(x, ei) + wedge(Jx, mat_col(J, i))).scaled(quarter);
        vals.push_back(std::move(v));
    }
    return WeakCurvTensor::from_values(u_m(m), vals);
}

WeakCurvTensor build_P_spsp1(int m, const Vec& x) {
    const int n = 4 * m;
    require(static_cast<int>(x.size()) == n, "ShapeMismatch", "direction must have length 4m");
    const auto Js = quaternion_structures(m);
    const Rational half(1, 2), quarter(1, 4);
    std::vector<Mat> vals;
    for (int i = 0; i < n; ++i) {
        const Vec ei = unit_vec(n, i);
        Mat v = wedge(x, ei).scaled(quarter);
        for (const Mat& J : Js) {
            const Vec Jx = apply_mat(J, x);
            v = v + J.scaled(half * Jx[i]) + wedge(Jx, mat_col(J, i)).scaled(quarter);
        }
        vals.push_back(std::move(v));
    }
    return WeakCurvTensor::from_values(sp_sp1_m(m), vals);
}

WeakCurvTensor build_P_adjoint(const LieAlgebraBasis& h, const Vec& x) {
    const LieAlgebraBasis had = adjoint_rep(h);
    require(static_cast<int>(x.size()) == h.dim(), "ShapeMismatch",
            "direction must live in the algebra itself");
    Mat z(h.size, h.size, Rational(0));
    for (int a = 0; a < h.dim(); ++a)
        if (!x[a].is_zero()) z = z + h.basis[a].scaled(x[a]);
    std::vector<Mat> vals;
    for (int b = 0; b < h.dim(); ++b)
        vals.push_back(had.from_coords(h.coords_of(bracket(z, h.basis[b]))));
    return WeakCurvTensor::from_values(had, vals);
}

// ---- unitary-family constructions ----------------------------------------

SymCubic::SymCubic(int m_) : m(m_) {
    require(m_ >= 1, "UnsupportedParams", "complex dimension must be positive");
    re.assign(static_cast<std::size_t>(m_) * m_ * m_, Rational(0));
    im.assign(static_cast<std::size_t>(m_) * m_ * m_, Rational(0));
}

namespace {
std::size_t cubic_index(int m, int a, int b, int c) {
    require(1 <= a && a <= m && 1 <= b && b <= m && 1 <= c && c <= m, "ShapeMismatch",
            "cubic index out of range");
    return (static_cast<std::size_t>(a - 1) * m + (b - 1)) * m + (c - 1);
}
} // namespace

Rational& SymCubic::re_at(int a, int b, int c) { return re[cubic_index(m, a, b, c)]; }
Rational& SymCubic::im_at(int a, int b, int c) { return im[cubic_index(m, a, b, c)]; }
const Rational& SymCubic::re_at(int a, int b, int c) const { return re[cubic_index(m, a, b, c)]; }
const Rational& SymCubic::im_at(int a, int b, int c) const { return im[cubic_index(m, a, b, c)]; }

WeakCurvTensor build_P_from_S(const SymCubic& S, UnitaryFamily fam) {
    const int m = S.m;
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b)
            for (int c = 1; c <= m; ++c)
                require(S.re_at(a, b, c) == S.re_at(c, b, a) && S.im_at(a, b, c) == S.im_at(c, b, a),
                        "ConstraintViolated", "coefficients must satisfy S_abc = S_cba");
    if (fam == UnitaryFamily::su || fam == UnitaryFamily::sp) {
        for (int a = 1; a <= m; ++a) {
            Rational sre(0), sim(0);
            for (int b = 1; b <= m; ++b) {
                sre += S.re_at(a, b, b);
                sim += S.im_at(a, b, b);
            }
            require(sre.is_zero() && sim.is_zero(), "ConstraintViolated",
                    "the su and sp families need sum_b S_abb = 0");
        }
    }
    // value of the direction-linear map on e_a, as a complex matrix with
    // row index the output and column index the argument
    auto M_re = [&](int a, int c, int b) { return S.re_at(a, c, b); };
    auto M_im = [&](int a, int c, int b) { return S.im_at(a, c, b); };
    if (fam == UnitaryFamily::sp) {
        require(m % 2 == 0, "ConstraintViolated", "the sp family needs an even complex dimension");
        const int k = m / 2;
        // M^t J + J M = 0 for the symplectic J with blocks [[0, I], [-I, 0]]
        auto omega = [&](int r, int c) {
            if (r < k && c == r + k) return Rational(1);
            if (r >= k && c == r - k) return Rational(-1);
            return Rational(0);
        };
        for (int a = 1; a <= m; ++a)
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    Rational sre(0), sim(0);
                    for (int t = 0; t < m; ++t) {
                        sre += M_re(a, t + 1, r + 1) * omega(t, c) + omega(r, t) * M_re(a, t + 1, c + 1);
                        sim += M_im(a, t + 1, r + 1) * omega(t, c) + omega(r, t) * M_im(a, t + 1, c + 1);
                    }
                    require(sre.is_zero() && sim.is_zero(), "ConstraintViolated",
                            "the sp family needs symplectic values");
                }
    }
    std::vector<Mat> vals;
    for (int a = 1; a <= m; ++a) {
        Mat re_lin(m, m, Rational(0)), im_lin(m, m, Rational(0));
        Mat re_bar(m, m, Rational(0)), im_bar(m, m, Rational(0));
        for (int c = 1; c <= m; ++c)
            for (int b = 1; b <= m; ++b) {
                re_lin.at(c - 1, b - 1) = M_re(a, c, b);
                im_lin.at(c - 1, b - 1) = M_im(a, c, b);
                re_bar.at(c - 1, b - 1) = S.re_at(a, b, c);
                im_bar.at(c - 1, b - 1) = -S.im_at(a, b, c);
            }
        // direction e_a: the difference of the two maps
        vals.push_back(realify(re_lin - re_bar, im_lin - im_bar));
        // direction i e_a: i(linear + conjugate-built), since the second
        // map is antilinear in the direction
        Mat re_sum = re_lin + re_bar, im_sum = im_lin + im_bar;
        vals.push_back(realify(-im_sum, re_sum));
    }
    // reorder: directions run (e_1..e_m, i e_1..i e_m)
    std::vector<Mat> ordered(2 * m, Mat(2 * m, 2 * m, Rational(0)));
    for (int a = 0; a < m; ++a) {
        ordered[a] = vals[2 * a];
        ordered[m + a] = vals[2 * a + 1];
    }
    return WeakCurvTensor::from_values(fam == UnitaryFamily::u ? u_m(m) : su_m(m), ordered);
}

WeakCurvTensor build_P_g2() {
    const LieAlgebraBasis h = g2_so7();
    const auto& B = h.basis;
    std::vector<Mat> vals = {B[5],        B[3] + B[4], B[0] + B[6], B[0],
                             B[3],        B[5] - B[4], B[6]};
    return WeakCurvTensor::from_values(h, vals);
}

WeakCurvTensor build_P_spin7() {
    const LieAlgebraBasis h = spin7_so8();
    const auto& B = h.basis;
    const Mat z(8, 8, Rational(0));
    std::vector<Mat> vals = {z,     -B[13], z,             B[20],
                             B[19], B[20] - B[17], B[14] - B[15], B[13] - B[16]};
    return WeakCurvTensor::from_values(h, vals);
}

WeakCurvTensor weyl_component(const WeakCurvTensor& P) {
    const int n = P.n();
    require(n >= 2, "ConstraintViolated", "the trace correction needs n >= 2");
    const Vec r = ric_tilde(P);
    const Rational w(1, n - 1);
    std::vector<Mat> vals;
    for (int i = 0; i < n; ++i)
        vals.push_back(P.value(i) + wedge(r, unit_vec(n, i)).scaled(w));
    return WeakCurvTensor::from_values(so_n(n), vals);
}

// ---- Lorentzian assembly ---------------------------------------------------

namespace {

void check_components(const CurvComponents& c) {
    const int n = c.P.n();
    require(c.R0.g.form == Form::euclidean && c.P.h.form == Form::euclidean, "ConstraintViolated",
            "components must be typed over a euclidean algebra");
    require(c.R0.g.size == c.P.h.size && c.R0.g.basis == c.P.h.basis, "ConstraintViolated",
            "R0 and P must be typed over the same algebra");
    require(static_cast<int>(c.vvec.size()) == n, "ShapeMismatch", "v must have length n");
    require(c.T.rows() == n && c.T.cols() == n, "ShapeMismatch", "T must be n x n");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(c.T.at(i, j) == c.T.at(j, i), "ConstraintViolated", "T must be symmetric");
    require(bianchi_holds(c.R0), "ConstraintViolated", "R0 violates the first Bianchi identity");
    require(cyclic_identity_holds(c.P), "ConstraintViolated", "P violates the cyclic identity");
}

// values in the Witt basis, indexed by pair
std::vector<Mat> curv_values(const CurvComponents& c) {
    const int n = c.P.n(), N = n + 2;
    std::vector<Mat> vals(pair_count(N), Mat(N, N, Rational(0)));
    const Mat zero_n(n, n, Rational(0));
    vals[pair_index(0, N - 1, N)] = sim_matrix({c.lambda, zero_n, c.vvec});
    std::vector<Mat> Pv;
    for (int i = 0; i < n; ++i) Pv.push_back(c.P.value(i));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Vec x(n, Rational(0));
            const Vec a = apply_mat(Pv[i], unit_vec(n, j));
            const Vec b = apply_mat(Pv[j], unit_vec(n, i));
            for (int k = 0; k < n; ++k) x[k] = b[k] - a[k];  // -(P(e_i)e_j - P(e_j)e_i)
            vals[pair_index(i + 1, j + 1, N)] = sim_matrix({Rational(0), c.R0.value(i, j), x});
        }
        vals[pair_index(i + 1, N - 1, N)] =
            sim_matrix({c.vvec[i], Pv[i], mat_col(c.T, i)});
    }
    return vals;
}

} // namespace

AlgCurvTensor assemble_curvature(const CurvComponents& c, const SimSubalgebraSpec& spec) {
    check_components(c);
    const int n = c.P.n();
    require(spec.h.size == n && spec.h.basis == c.P.h.basis, "ConstraintViolated",
            "components must be typed over the orthogonal part of the target");
    if (spec.type >= 2)
        require(c.lambda.is_zero(), "ConstraintViolated",
                "type " + std::to_string(spec.type) + " requires lambda = 0");
    if (spec.type == 2 || spec.type == 4)
        require(vec_is_zero(c.vvec), "ConstraintViolated",
                "type " + std::to_string(spec.type) + " requires v = 0");
    if (spec.type == 3) {
        for (int i = 0; i < n; ++i)
            require(c.vvec[i] == dot(c.P.coeffs[i], spec.phi), "ConstraintViolated",
                    "type 3 requires g(v,.) = phi(P(.))");
        for (const auto& row : c.R0.coeffs)
            require(dot(row, spec.phi).is_zero(), "ConstraintViolated",
                    "type 3 requires R0 valued in ker phi");
    }
    if (spec.type == 4) {
        const int tail = n - spec.m;
        for (const auto& row : c.R0.coeffs)
            for (int t = 0; t < tail; ++t) {
                Rational s(0);
                for (int a = 0; a < c.R0.g.dim(); ++a) s += row[a] * spec.psi[a][t];
                require(s.is_zero(), "ConstraintViolated", "type 4 requires R0 valued in ker psi");
            }
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < tail; ++t) {
                Rational s(0);
                for (int a = 0; a < c.P.h.dim(); ++a) s += c.P.coeffs[j][a] * spec.psi[a][t];
                require(c.T.at(spec.m + t, j) == s, "ConstraintViolated",
                        "type 4 requires pr o T = psi o P");
            }
    }
    const LieAlgebraBasis g = sim_embed(spec);
    const auto vals = curv_values(c);
    AlgCurvTensor R{g, {}};
    R.coeffs.reserve(vals.size());
    for (const auto& v : vals) R.coeffs.push_back(g.coords_of(v));
    return R;
}

Mat witt_rebase_matrix(int n, const Rational& mu, const Vec& W) {
    require(!mu.is_zero(), "ZeroMu", "the scale of the isotropic direction must be nonzero");
    require(static_cast<int>(W.size()) == n, "ShapeMismatch", "W must have length n");
    const int N = n + 2;
    Mat C(N, N, Rational(0));
    C.at(0, 0) = mu;
    Rational ww(0);
    for (int i = 0; i < n; ++i) {
        C.at(0, i + 1) = -W[i];
        C.at(i + 1, i + 1) = Rational(1);
        C.at(i + 1, N - 1) = W[i] / mu;
        ww += W[i] * W[i];
    }
    C.at(0, N - 1) = -ww / (Rational(2) * mu);
    C.at(N - 1, N - 1) = mu.inv();
    return C;
}

CurvComponents rebase_witt(const CurvComponents& c, const Rational& mu, const Vec& W) {
    require(!mu.is_zero(), "ZeroMu", "the scale of the isotropic direction must be nonzero");
    check_components(c);
    const int n = c.P.n(), N = n + 2;
    const Mat C = witt_rebase_matrix(n, mu, W);
    const Mat Cinv = C.inverse();
    const auto vals = curv_values(c);
    auto eval_pair = [&](int a, int b) {
        Mat M(N, N, Rational(0));
        for (int x = 0; x < N; ++x)
            for (int y = x + 1; y < N; ++y) {
                Rational w = C.at(x, a) * C.at(y, b) - C.at(x, b) * C.at(y, a);
                if (!w.is_zero()) M = M + vals[pair_index(x, y, N)].scaled(w);
            }
        return Cinv * M * C;
    };
    CurvComponents out{Rational(0), Vec(n, Rational(0)), AlgCurvTensor::zero(c.R0.g),
                       WeakCurvTensor::zero(c.P.h), Mat(n, n, Rational(0))};
    const SimElement pq = sim_split(eval_pair(0, N - 1));
    require(pq.A.is_zero(), "InternalError", "rebase produced a mixed value on the frame pair");
    out.lambda = pq.a;
    out.vvec = pq.X;
    for (int i = 0; i < n; ++i) {
        require(eval_pair(0, i + 1).is_zero(), "InternalError",
                "rebase broke the vanishing of R(p, .)");
        const SimElement e = sim_split(eval_pair(i + 1, N - 1));
        require(e.a == out.vvec[i], "InternalError", "rebase broke the scaling component");
        out.P.coeffs[i] = c.P.h.coords_of(e.A);
        for (int k = 0; k < n; ++k) out.T.at(k, i) = e.X[k];
        for (int j = i + 1; j < n; ++j) {
            const SimElement f = sim_split(eval_pair(i + 1, j + 1));
            require(f.a.is_zero(), "InternalError", "rebase broke the transverse block");
            out.R0.coeffs[pair_index(i, j, n)] = c.R0.g.coords_of(f.A);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(out.T.at(i, j) == out.T.at(j, i), "InternalError",
                    "rebase produced an asymmetric T");
    return out;
}

} // namespace wgeo
