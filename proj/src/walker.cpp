#include "wgeo/walker.hpp"

#include <json.hpp>

#include "wgeo/errors.hpp"
#include "wgeo/expr.hpp"

namespace wgeo {

namespace {

RatFunc rf_zero(int arity) { return RatFunc::constant(arity, Rational(0)); }
RatFunc rf_one(int arity) { return RatFunc::constant(arity, Rational(1)); }
RatFunc rf_half(int arity) { return RatFunc::constant(arity, Rational(1, 2)); }

FMat fmat_zero(int r, int c, int arity) { return FMat(r, c, rf_zero(arity)); }

FMat fmat_identity(int n, int arity) {
    return FMat::identity(n, rf_one(arity), rf_zero(arity));
}

// rethrow matrix singularity as the metric-level error
template <class F>
auto degenerate_guard(F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const error& e) {
        if (e.kind() == "SingularMatrix")
            fail("DegenerateMetric", "metric determinant is the zero function");
        throw;
    }
}

} // namespace

void WalkerMetric::validate() const {
    const int ar = n + 2;
    require(n >= 1 && ar <= Vars::kMaxVars, "ShapeMismatch",
            "transverse dimension out of range");
    require(h.rows() == n && h.cols() == n, "ShapeMismatch", "h must be n x n");
    require(static_cast<int>(A.size()) == n, "ShapeMismatch", "A must have n entries");
    require(H.arity() == ar, "ArityMismatch", "H lives in the wrong variable universe");
    const Vars vs = vars();
    for (int i = 0; i < n; ++i) {
        require(A[i].arity() == ar, "ArityMismatch", "A entry in the wrong variable universe");
        require(!A[i].depends_on(vs.v()), "ConstraintViolated", "A must be free of v");
        for (int j = 0; j < n; ++j) {
            require(h.at(i, j).arity() == ar, "ArityMismatch",
                    "h entry in the wrong variable universe");
            require(!h.at(i, j).depends_on(vs.v()), "ConstraintViolated", "h must be free of v");
            require(h.at(i, j) == h.at(j, i), "ShapeMismatch", "h must be symmetric");
        }
    }
    degenerate_guard([&] { return h.inverse(); });
}

FMat WalkerMetric::metric() const {
    const int N = dim(), ar = N;
    FMat m = fmat_zero(N, N, ar);
    m.at(0, N - 1) = rf_one(ar);
    m.at(N - 1, 0) = rf_one(ar);
    for (int i = 0; i < n; ++i) {
        m.at(i + 1, N - 1) = A[i];
        m.at(N - 1, i + 1) = A[i];
        for (int j = 0; j < n; ++j) m.at(i + 1, j + 1) = h.at(i, j);
    }
    m.at(N - 1, N - 1) = H;
    return m;
}

FMat WalkerMetric::inverse_metric() const {
    return degenerate_guard([&] { return metric().inverse(); });
}

WalkerMetric WalkerMetric::minkowski(int n) {
    WalkerMetric g;
    g.n = n;
    g.h = fmat_identity(n, n + 2);
    g.A.assign(n, rf_zero(n + 2));
    g.H = rf_zero(n + 2);
    return g;
}

bool operator==(const WalkerMetric& a, const WalkerMetric& b) {
    return a.n == b.n && a.h == b.h && a.A == b.A && a.H == b.H;
}

WalkerMetric WalkerMetric::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail("BadInput", std::string("metric file is not valid JSON: ") + e.what());
    }
    require(j.is_object() && j.contains("n") && j.contains("h") && j.contains("A") &&
                j.contains("H") && j["n"].is_number_integer(),
            "BadInput", "metric file needs integer n and fields h, A, H");
    WalkerMetric g;
    g.n = j["n"].get<int>();
    require(g.n >= 1 && g.n + 2 <= Vars::kMaxVars, "BadInput", "n out of range");
    const Vars vs = g.vars();
    auto expr_at = [&](const nlohmann::json& e, const char* where) {
        require(e.is_string(), "BadInput", std::string(where) + " entries must be expression strings");
        return parse_expr(e.get<std::string>(), vs);
    };
    require(j["h"].is_array() && static_cast<int>(j["h"].size()) == g.n, "BadInput",
            "h must be an n x n grid");
    g.h = fmat_zero(g.n, g.n, g.n + 2);
    for (int i = 0; i < g.n; ++i) {
        const auto& row = j["h"][i];
        require(row.is_array() && static_cast<int>(row.size()) == g.n, "BadInput",
                "h must be an n x n grid");
        for (int k = 0; k < g.n; ++k) g.h.at(i, k) = expr_at(row[k], "h");
    }
    require(j["A"].is_array() && static_cast<int>(j["A"].size()) == g.n, "BadInput",
            "A must have n entries");
    for (int i = 0; i < g.n; ++i) g.A.push_back(expr_at(j["A"][i], "A"));
    g.H = expr_at(j["H"], "H");
    g.validate();
    return g;
}

std::string WalkerMetric::to_json() const {
    const Vars vs = vars();
    nlohmann::json j;
    j["n"] = n;
    j["h"] = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < n; ++k) row.push_back(to_string(h.at(i, k), vs));
        j["h"].push_back(row);
    }
    j["A"] = nlohmann::json::array();
    for (int i = 0; i < n; ++i) j["A"].push_back(to_string(A[i], vs));
    j["H"] = to_string(H, vs);
    return j.dump(2) + "\n";
}

FrameField frame_field(const WalkerMetric& g) {
    const int N = g.dim(), ar = N;
    FrameField f;
    f.rows = fmat_zero(N, N, ar);
    f.rows.at(0, 0) = rf_one(ar);
    for (int i = 0; i < g.n; ++i) {
        f.rows.at(i + 1, i + 1) = rf_one(ar);
        f.rows.at(i + 1, 0) = -g.A[i];
    }
    f.rows.at(N - 1, N - 1) = rf_one(ar);
    f.rows.at(N - 1, 0) = -(rf_half(ar) * g.H);
    return f;
}

FMat FrameField::gram(const WalkerMetric& g) const {
    return rows * g.metric() * rows.transposed();
}

std::vector<FMat> christoffel(const WalkerMetric& g, Exec ex) {
    const int N = g.dim(), ar = N;
    const FMat gm = g.metric();
    const FMat gi = g.inverse_metric();
    std::vector<FMat> dg(N, fmat_zero(N, N, ar));
    for (int e = 0; e < N; ++e)
        for (int a = 0; a < N; ++a)
            for (int b = a; b < N; ++b) {
                dg[e].at(a, b) = gm.at(a, b).derivative(e);
                dg[e].at(b, a) = dg[e].at(a, b);
            }
    std::vector<FMat> out(N, fmat_zero(N, N, ar));
    const RatFunc half = rf_half(ar);
    parallel_for(N, ex, [&](std::size_t c) {
        for (int a = 0; a < N; ++a)
            for (int b = a; b < N; ++b) {
                RatFunc s = rf_zero(ar);
                for (int d = 0; d < N; ++d) {
                    if (gi.at(static_cast<int>(c), d).is_zero()) continue;
                    s += gi.at(static_cast<int>(c), d) *
                         (dg[a].at(d, b) + dg[b].at(d, a) - dg[d].at(a, b));
                }
                out[c].at(a, b) = half * s;
                out[c].at(b, a) = out[c].at(a, b);
            }
    });
    return out;
}

std::vector<FMat> riemann_op(const WalkerMetric& g, Exec ex) {
    const int N = g.dim(), ar = N;
    const std::vector<FMat> gam = christoffel(g, ex);
    // repackage: G[a].at(e, b) = Gamma^e_{ab}
    std::vector<FMat> G(N, fmat_zero(N, N, ar));
    for (int a = 0; a < N; ++a)
        for (int e = 0; e < N; ++e)
            for (int b = 0; b < N; ++b) G[a].at(e, b) = gam[e].at(a, b);
    std::vector<FMat> out(pair_count(N), fmat_zero(N, N, ar));
    parallel_for(out.size(), ex, [&](std::size_t pi) {
        int c = 0, d = 1;
        for (c = 0; c < N; ++c) {
            const int row = c * N - c * (c + 1) / 2;
            if (static_cast<int>(pi) < row + N - c - 1) {
                d = static_cast<int>(pi) - row + c + 1;
                break;
            }
        }
        FMat m = G[c] * G[d] - G[d] * G[c];
        for (int e = 0; e < N; ++e)
            for (int b = 0; b < N; ++b)
                m.at(e, b) += G[d].at(e, b).derivative(c) - G[c].at(e, b).derivative(d);
        out[pi] = std::move(m);
    });
    return out;
}

CovTensor riemann(const WalkerMetric& g, Exec ex) {
    const int N = g.dim(), ar = N;
    const std::vector<FMat> ops = riemann_op(g, ex);
    const FMat gm = g.metric();
    CovTensor R(N, 4, rf_zero(ar));
    for (int c = 0; c < N; ++c)
        for (int d = c + 1; d < N; ++d) {
            const FMat low = gm * ops[pair_index(c, d, N)];
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    R.at(a, b, c, d) = low.at(a, b);
                    R.at(a, b, d, c) = -low.at(a, b);
                }
        }
    return R;
}

namespace {

FMat ricci_from_ops(const std::vector<FMat>& ops, int N, int ar) {
    FMat ric = fmat_zero(N, N, ar);
    for (int b = 0; b < N; ++b)
        for (int d = 0; d < N; ++d) {
            RatFunc s = rf_zero(ar);
            for (int a = 0; a < N; ++a) {
                if (a == d) continue;
                const FMat& m = ops[pair_index(std::min(a, d), std::max(a, d), N)];
                s += a < d ? m.at(a, b) : -m.at(a, b);
            }
            ric.at(b, d) = s;
        }
    return ric;
}

} // namespace

FMat ricci(const WalkerMetric& g, Exec ex) {
    return ricci_from_ops(riemann_op(g, ex), g.dim(), g.dim());
}

RatFunc scalar_curv(const WalkerMetric& g, Exec ex) {
    const int N = g.dim();
    const FMat ric = ricci(g, ex);
    const FMat gi = g.inverse_metric();
    RatFunc s = rf_zero(N);
    for (int b = 0; b < N; ++b)
        for (int d = 0; d < N; ++d) {
            if (gi.at(b, d).is_zero()) continue;
            s += gi.at(b, d) * ric.at(b, d);
        }
    return s;
}

CovTensor weyl(const WalkerMetric& g, Exec ex) {
    const int N = g.dim(), ar = N;
    require(N >= 3, "ShapeMismatch", "conformal curvature needs dimension >= 3");
    const CovTensor R = riemann(g, ex);
    const FMat ric = ricci(g, ex);
    const FMat gm = g.metric();
    const FMat gi = g.inverse_metric();
    RatFunc s = rf_zero(ar);
    for (int b = 0; b < N; ++b)
        for (int d = 0; d < N; ++d)
            if (!gi.at(b, d).is_zero()) s += gi.at(b, d) * ric.at(b, d);
    const RatFunc c1 = RatFunc::constant(ar, Rational(1, N - 2));
    const RatFunc c2 = RatFunc::constant(ar, Rational(1, (N - 1) * (N - 2)));
    CovTensor W(N, 4, rf_zero(ar));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = c + 1; d < N; ++d) {
                    if (pair_index(c, d, N) < pair_index(a, b, N)) continue;
                    RatFunc w = R.at(a, b, c, d);
                    w -= c1 * (gm.at(a, c) * ric.at(b, d) - gm.at(a, d) * ric.at(b, c) +
                               gm.at(b, d) * ric.at(a, c) - gm.at(b, c) * ric.at(a, d));
                    w += c2 * s * (gm.at(a, c) * gm.at(b, d) - gm.at(a, d) * gm.at(b, c));
                    W.at(a, b, c, d) = w;
                    W.at(b, a, c, d) = -w;
                    W.at(a, b, d, c) = -w;
                    W.at(b, a, d, c) = w;
                    W.at(c, d, a, b) = w;
                    W.at(d, c, a, b) = -w;
                    W.at(c, d, b, a) = -w;
                    W.at(d, c, b, a) = w;
                }
    return W;
}

CovTensor::CovTensor(int dim, int rank, const RatFunc& zero) : dim_(dim), rank_(rank) {
    std::size_t total = 1;
    for (int i = 0; i < rank; ++i) total *= static_cast<std::size_t>(dim);
    d_.assign(total, zero);
}

std::size_t CovTensor::flat(const int* idx, std::size_t k) const {
    require(static_cast<int>(k) == rank_, "ShapeMismatch", "tensor index arity mismatch");
    std::size_t f = 0;
    for (std::size_t i = 0; i < k; ++i) {
        require(0 <= idx[i] && idx[i] < dim_, "ShapeMismatch", "tensor index out of range");
        f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx[i]);
    }
    return f;
}

bool CovTensor::is_zero() const {
    for (const auto& x : d_)
        if (!x.is_zero()) return false;
    return true;
}

CovTensor nabla_R(const WalkerMetric& g, Exec ex) {
    const int N = g.dim(), ar = N;
    const CovTensor R = riemann(g, ex);
    const std::vector<FMat> gam = christoffel(g, ex);
    CovTensor D(N, 5, rf_zero(ar));
    parallel_for(N, ex, [&](std::size_t e) {
        const int ei = static_cast<int>(e);
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                for (int c = 0; c < N; ++c)
                    for (int d = c + 1; d < N; ++d) {
                        if (pair_index(c, d, N) < pair_index(a, b, N)) continue;
                        RatFunc w = R.at(a, b, c, d).derivative(ei);
                        for (int f = 0; f < N; ++f) {
                            if (!gam[f].at(ei, a).is_zero())
                                w -= gam[f].at(ei, a) * R.at(f, b, c, d);
                            if (!gam[f].at(ei, b).is_zero())
                                w -= gam[f].at(ei, b) * R.at(a, f, c, d);
                            if (!gam[f].at(ei, c).is_zero())
                                w -= gam[f].at(ei, c) * R.at(a, b, f, d);
                            if (!gam[f].at(ei, d).is_zero())
                                w -= gam[f].at(ei, d) * R.at(a, b, c, f);
                        }
                        D.at(ei, a, b, c, d) = w;
                        D.at(ei, b, a, c, d) = -w;
                        D.at(ei, a, b, d, c) = -w;
                        D.at(ei, b, a, d, c) = w;
                        D.at(ei, c, d, a, b) = w;
                        D.at(ei, d, c, a, b) = -w;
                        D.at(ei, c, d, b, a) = -w;
                        D.at(ei, d, c, b, a) = w;
                    }
    });
    return D;
}

CovTensor nabla2_R(const WalkerMetric& g, Exec ex) {
    const int N = g.dim(), ar = N;
    const CovTensor D = nabla_R(g, ex);
    const std::vector<FMat> gam = christoffel(g, ex);
    CovTensor D2(N, 6, rf_zero(ar));
    parallel_for(static_cast<std::size_t>(N) * N, ex, [&](std::size_t fe) {
        const int f = static_cast<int>(fe) / N, e = static_cast<int>(fe) % N;
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                for (int c = 0; c < N; ++c)
                    for (int d = c + 1; d < N; ++d) {
                        if (pair_index(c, d, N) < pair_index(a, b, N)) continue;
                        RatFunc w = D.at(e, a, b, c, d).derivative(f);
                        for (int m = 0; m < N; ++m) {
                            if (!gam[m].at(f, e).is_zero())
                                w -= gam[m].at(f, e) * D.at(m, a, b, c, d);
                            if (!gam[m].at(f, a).is_zero())
                                w -= gam[m].at(f, a) * D.at(e, m, b, c, d);
                            if (!gam[m].at(f, b).is_zero())
                                w -= gam[m].at(f, b) * D.at(e, a, m, c, d);
                            if (!gam[m].at(f, c).is_zero())
                                w -= gam[m].at(f, c) * D.at(e, a, b, m, d);
                            if (!gam[m].at(f, d).is_zero())
                                w -= gam[m].at(f, d) * D.at(e, a, b, c, m);
                        }
                        D2.at(f, e, a, b, c, d) = w;
                        D2.at(f, e, b, a, c, d) = -w;
                        D2.at(f, e, a, b, d, c) = -w;
                        D2.at(f, e, b, a, d, c) = w;
                        D2.at(f, e, c, d, a, b) = w;
                        D2.at(f, e, d, c, a, b) = -w;
                        D2.at(f, e, c, d, b, a) = -w;
                        D2.at(f, e, d, c, b, a) = w;
                    }
    });
    return D2;
}

// ---- transverse geometry of h(u) ---------------------------------------

namespace {

FMat h_inverse(const WalkerMetric& g) {
    return degenerate_guard([&] { return g.h.inverse(); });
}

// chart variable index of the i-th transverse coordinate
int xv(const WalkerMetric& g, int i) { return g.vars().x(i + 1); }

} // namespace

std::vector<FMat> transverse_christoffel(const WalkerMetric& g) {
    const int n = g.n, ar = g.dim();
    const FMat hi = h_inverse(g);
    std::vector<FMat> dh(n, fmat_zero(n, n, ar));
    for (int e = 0; e < n; ++e)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                dh[e].at(a, b) = g.h.at(a, b).derivative(xv(g, e));
                dh[e].at(b, a) = dh[e].at(a, b);
            }
    const RatFunc half = rf_half(ar);
    std::vector<FMat> out(n, fmat_zero(n, n, ar));
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                RatFunc s = rf_zero(ar);
                for (int d = 0; d < n; ++d) {
                    if (hi.at(c, d).is_zero()) continue;
                    s += hi.at(c, d) * (dh[a].at(d, b) + dh[b].at(d, a) - dh[d].at(a, b));
                }
                out[c].at(a, b) = half * s;
                out[c].at(b, a) = out[c].at(a, b);
            }
    return out;
}

std::vector<FMat> transverse_curvature_op(const WalkerMetric& g) {
    const int n = g.n, ar = g.dim();
    const std::vector<FMat> gam = transverse_christoffel(g);
    std::vector<FMat> G(n, fmat_zero(n, n, ar));
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < n; ++e)
            for (int b = 0; b < n; ++b) G[a].at(e, b) = gam[e].at(a, b);
    std::vector<FMat> out;
    out.reserve(pair_count(n));
    for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
            FMat m = G[c] * G[d] - G[d] * G[c];
            for (int e = 0; e < n; ++e)
                for (int b = 0; b < n; ++b)
                    m.at(e, b) += G[d].at(e, b).derivative(xv(g, c)) -
                                  G[c].at(e, b).derivative(xv(g, d));
            out.push_back(std::move(m));
        }
    return out;
}

FMat transverse_ricci(const WalkerMetric& g) {
    return ricci_from_ops(transverse_curvature_op(g), g.n, g.dim());
}

RatFunc transverse_scalar_curv(const WalkerMetric& g) {
    const FMat ric = transverse_ricci(g);
    const FMat hi = h_inverse(g);
    RatFunc s = rf_zero(g.dim());
    for (int b = 0; b < g.n; ++b)
        for (int d = 0; d < g.n; ++d) {
            if (hi.at(b, d).is_zero()) continue;
            s += hi.at(b, d) * ric.at(b, d);
        }
    return s;
}

// ---- frame components ----------------------------------------------------

namespace {

// operator value of the curvature on two frame vectors, in coordinates
FMat op_on(const std::vector<FMat>& ops, const FVec& a, const FVec& b, int N, int ar) {
    FMat m = fmat_zero(N, N, ar);
    for (int c = 0; c < N; ++c)
        for (int d = c + 1; d < N; ++d) {
            const RatFunc w = a[c] * b[d] - a[d] * b[c];
            if (w.is_zero()) continue;
            m += ops[pair_index(c, d, N)].scaled(w);
        }
    return m;
}

FVec frame_row(const FMat& rows, int i) {
    FVec r(rows.cols());
    for (int j = 0; j < rows.cols(); ++j) r[j] = rows.at(i, j);
    return r;
}

FVec mat_apply(const FMat& m, const FVec& x) {
    FVec r(m.rows(), rf_zero(x.empty() ? 0 : x[0].arity()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero() || x[j].is_zero()) continue;
            r[i] += m.at(i, j) * x[j];
        }
    return r;
}

RatFunc pair_with(const FMat& gm, const FVec& a, const FVec& b) {
    RatFunc s = rf_zero(gm.rows());
    for (int i = 0; i < gm.rows(); ++i)
        for (int j = 0; j < gm.cols(); ++j) {
            if (a[i].is_zero() || gm.at(i, j).is_zero() || b[j].is_zero()) continue;
            s += a[i] * gm.at(i, j) * b[j];
        }
    return s;
}

} // namespace

CurvatureComponents extract_components(const WalkerMetric& g, Exec ex) {
    const int n = g.n, N = g.dim(), ar = N;
    const Vars vs = g.vars();
    const RatFunc half = rf_half(ar);
    const FMat hi = h_inverse(g);

    CurvatureComponents out;
    const RatFunc Hv = g.H.derivative(vs.v());
    const RatFunc Hvv = Hv.derivative(vs.v());
    out.lambda = half * Hvv;

    out.vvec.assign(n, rf_zero(ar));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const RatFunc t = Hv.derivative(xv(g, i)) - g.A[i] * Hvv;
            if (t.is_zero() || hi.at(i, j).is_zero()) continue;
            out.vvec[j] += half * hi.at(i, j) * t;
        }

    const std::vector<FMat> ops = riemann_op(g, ex);
    const FMat gm = g.metric();
    const FrameField fr = frame_field(g);
    const FVec q = frame_row(fr.rows, N - 1);
    std::vector<FVec> X(n);
    for (int i = 0; i < n; ++i) X[i] = frame_row(fr.rows, i + 1);

    out.P.assign(n, fmat_zero(n, n, ar));
    out.T = fmat_zero(n, n, ar);
    for (int k = 0; k < n; ++k) {
        const FMat M = op_on(ops, X[k], q, N, ar);
        FMat lowered = fmat_zero(n, n, ar);  // (i,j) = g(R(X_k,q)X_j, X_i)
        for (int j = 0; j < n; ++j) {
            const FVec w = mat_apply(M, X[j]);
            for (int i = 0; i < n; ++i) lowered.at(i, j) = pair_with(gm, w, X[i]);
        }
        out.P[k] = hi * lowered;
        const FVec wq = mat_apply(M, q);
        for (int j = 0; j < n; ++j) out.T.at(k, j) = -pair_with(gm, wq, X[j]);
    }
    out.R0 = transverse_curvature_op(g);

    out.printed_P_agrees = transverse_P_formula(g) == out.P;
    out.printed_T_agrees = transverse_T_formula(g) == out.T;
    return out;
}

std::vector<FMat> transverse_P_formula(const WalkerMetric& g) {
    const int n = g.n, ar = g.dim();
    const Vars vs = g.vars();
    const RatFunc half = rf_half(ar);
    const FMat hi = h_inverse(g);
    const std::vector<FMat> gam = transverse_christoffel(g);

    FMat F = fmat_zero(n, n, ar);
    FMat hdot = fmat_zero(n, n, ar);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            F.at(i, j) = g.A[j].derivative(xv(g, i)) - g.A[i].derivative(xv(g, j));
            hdot.at(i, j) = g.h.at(i, j).derivative(vs.u());
        }
    std::vector<FMat> gamdot(n, fmat_zero(n, n, ar));
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) gamdot[l].at(a, b) = gam[l].at(a, b).derivative(vs.u());

    auto cov_deriv = [&](const FMat& t, int k) {
        FMat d = fmat_zero(n, n, ar);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RatFunc w = t.at(i, j).derivative(xv(g, k));
                for (int m = 0; m < n; ++m) {
                    if (!gam[m].at(k, i).is_zero()) w -= gam[m].at(k, i) * t.at(m, j);
                    if (!gam[m].at(k, j).is_zero()) w -= gam[m].at(k, j) * t.at(i, m);
                }
                d.at(i, j) = w;
            }
        return d;
    };

    std::vector<FMat> out(n, fmat_zero(n, n, ar));
    for (int k = 0; k < n; ++k) {
        const FMat dF = cov_deriv(F, k);
        const FMat dhdot = cov_deriv(hdot, k);
        FMat rhs = fmat_zero(n, n, ar);  // (i,j) = h_il P^l_{jk}
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RatFunc w = half * (dhdot.at(i, j) - dF.at(i, j));
                for (int l = 0; l < n; ++l) {
                    if (gamdot[l].at(k, j).is_zero()) continue;
                    w -= gamdot[l].at(k, j) * g.h.at(l, i);
                }
                rhs.at(i, j) = w;
            }
        out[k] = hi * rhs;
    }
    return out;
}

FMat transverse_T_formula(const WalkerMetric& g) {
    const int n = g.n, ar = g.dim();
    const Vars vs = g.vars();
    const RatFunc half = rf_half(ar);
    const RatFunc quarter = RatFunc::constant(ar, Rational(1, 4));
    const FMat hi = h_inverse(g);
    const std::vector<FMat> gam = transverse_christoffel(g);

    const RatFunc Hv = g.H.derivative(vs.v());
    const RatFunc Hvv = Hv.derivative(vs.v());
    FMat F = fmat_zero(n, n, ar);
    FMat hdot = fmat_zero(n, n, ar);
    FMat hddot = fmat_zero(n, n, ar);
    FVec Adot(n, rf_zero(ar));
    for (int i = 0; i < n; ++i) {
        Adot[i] = g.A[i].derivative(vs.u());
        for (int j = 0; j < n; ++j) {
            F.at(i, j) = g.A[j].derivative(xv(g, i)) - g.A[i].derivative(xv(g, j));
            hdot.at(i, j) = g.h.at(i, j).derivative(vs.u());
            hddot.at(i, j) = hdot.at(i, j).derivative(vs.u());
        }
    }

    // covariant Hessian of H in the transverse directions
    auto hessian = [&](const RatFunc& f) {
        FMat d = fmat_zero(n, n, ar);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RatFunc w = f.derivative(xv(g, i)).derivative(xv(g, j));
                for (int m = 0; m < n; ++m)
                    if (!gam[m].at(i, j).is_zero()) w -= gam[m].at(i, j) * f.derivative(xv(g, m));
                d.at(i, j) = w;
            }
        return d;
    };
    // symmetrized covariant derivative of a transverse covector
    auto sym_cov = [&](const FVec& a) {
        FMat d = fmat_zero(n, n, ar);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RatFunc w = a[j].derivative(xv(g, i)) + a[i].derivative(xv(g, j));
                for (int m = 0; m < n; ++m)
                    if (!gam[m].at(i, j).is_zero())
                        w -= RatFunc::constant(ar, Rational(2)) * gam[m].at(i, j) * a[m];
                d.at(i, j) = w;
            }
        return d;
    };

    const FMat hessH = hessian(g.H);
    const FMat symA = sym_cov(g.A);
    const FMat symAdot = sym_cov(Adot);
    const FMat K = F + hdot;

    FMat T = fmat_zero(n, n, ar);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatFunc w = half * hessH.at(i, j);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (K.at(i, k).is_zero() || K.at(j, l).is_zero() || hi.at(k, l).is_zero())
                        continue;
                    w -= quarter * K.at(i, k) * K.at(j, l) * hi.at(k, l);
                }
            w -= quarter * Hv * symA.at(i, j);
            w -= half * (g.A[i] * Hv.derivative(xv(g, j)) + g.A[j] * Hv.derivative(xv(g, i)));
            w -= half * symAdot.at(i, j);
            w += half * g.A[i] * g.A[j] * Hvv;
            w += half * hddot.at(i, j);
            w += quarter * hdot.at(i, j) * Hv;
            T.at(i, j) = w;
        }
    return T;
}

WalkerMetric shift_v(const WalkerMetric& g, const RatFunc& f) {
    const Vars vs = g.vars();
    const int ar = g.dim();
    require(f.arity() == ar, "ArityMismatch", "shift function in the wrong variable universe");
    require(!f.depends_on(vs.v()), "InvalidSpec", "shift function must be free of v");
    require(!g.H.den().depends_on(vs.v()), "NotQuadraticInV",
            "H has v in a denominator");
    const Polynomial& num = g.H.num();
    require(num.deg_in(vs.v()) <= 2, "NotQuadraticInV", "H has degree > 2 in v");
    const RatFunc den{g.H.den()};
    const RatFunc lam = RatFunc(coeff_of_power(num, vs.v(), 2)) / den;
    require(lam.is_constant(), "NotQuadraticInV", "the v^2 coefficient of H must be constant");
    const RatFunc H1 = RatFunc(coeff_of_power(num, vs.v(), 1)) / den;
    const RatFunc H0 = RatFunc(coeff_of_power(num, vs.v(), 0)) / den;

    WalkerMetric out = g;
    for (int i = 0; i < g.n; ++i) out.A[i] = g.A[i] + f.derivative(xv(g, i));
    const RatFunc two = RatFunc::constant(ar, Rational(2));
    const RatFunc nH1 = H1 + two * lam * f;
    const RatFunc nH0 = H0 + H1 * f + lam * f * f + two * f.derivative(vs.u());
    const RatFunc v = RatFunc::variable(ar, vs.v());
    out.H = lam * v * v + v * nH1 + nH0;
    return out;
}

bool is_ppwave(const WalkerMetric& g) {
    if (!g.H.derivative(g.vars().v()).is_zero()) return false;
    for (int i = 0; i < g.n; ++i)
        if (!g.A[i].is_zero()) return false;
    return g.h == fmat_identity(g.n, g.dim());
}

} // namespace wgeo
