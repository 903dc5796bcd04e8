#include "wgeo/liealg.hpp"

namespace wgeo {

Vec flatten(const Mat& m) {
    Vec v;
    v.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

Mat unflatten(const Vec& v, int size) {
    require(static_cast<int>(v.size()) == size * size, "ShapeMismatch",
            "flattened length is not a square");
    Mat m(size, size, Rational(0));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m.at(i, j) = v[static_cast<std::size_t>(i) * size + j];
    return m;
}

Mat witt_form(int n) {
    Mat g(n + 2, n + 2, Rational(0));
    g.at(0, n + 1) = Rational(1);
    g.at(n + 1, 0) = Rational(1);
    for (int i = 1; i <= n; ++i) g.at(i, i) = Rational(1);
    return g;
}

Mat form_matrix(Form f, int size) {
    if (f == Form::euclidean) return Mat::identity(size, Rational(1), Rational(0));
    require(size >= 2, "ShapeMismatch", "Lorentzian form needs size >= 2");
    return witt_form(size - 2);
}

bool is_skew_for(const Mat& m, const Mat& form) {
    return (m.transposed() * form + form * m).is_zero();
}

Mat bracket(const Mat& a, const Mat& b) {
    require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
            "ShapeMismatch", "bracket needs square matrices of equal size");
    return a * b - b * a;
}

Mat e_skew(int size, int i, int j) {
    require(i >= 1 && j >= 1 && i <= size && j <= size && i != j, "UnsupportedParams",
            "basis rotation indices out of range");
    Mat m(size, size, Rational(0));
    m.at(i - 1, j - 1) = Rational(1);
    m.at(j - 1, i - 1) = Rational(-1);
    return m;
}

Mat wedge(const Vec& x, const Vec& y, const Mat& form) {
    const int s = form.rows();
    require(static_cast<int>(x.size()) == s && static_cast<int>(y.size()) == s,
            "ShapeMismatch", "wedge arguments must match the form size");
    Vec gx(s, Rational(0)), gy(s, Rational(0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            gx[i] += form.at(i, j) * x[j];
            gy[i] += form.at(i, j) * y[j];
        }
    // z |-> g(x,z) y - g(y,z) x, i.e. y (Gx)^t - x (Gy)^t
    Mat m(s, s, Rational(0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m.at(i, j) = y[i] * gx[j] - x[i] * gy[j];
    return m;
}

Mat wedge(const Vec& x, const Vec& y) {
    const int s = static_cast<int>(x.size());
    require(x.size() == y.size(), "ShapeMismatch", "wedge arguments of equal length");
    Mat m(s, s, Rational(0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m.at(i, j) = y[i] * x[j] - x[i] * y[j];
    return m;
}

Mat realify(const Mat& re, const Mat& im) {
    const int m = re.rows();
    require(re.cols() == m && im.rows() == m && im.cols() == m, "ShapeMismatch",
            "realify needs square blocks of equal size");
    Mat out(2 * m, 2 * m, Rational(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            out.at(i, j) = re.at(i, j);
            out.at(i + m, j + m) = re.at(i, j);
            out.at(i, j + m) = -im.at(i, j);
            out.at(i + m, j) = im.at(i, j);
        }
    return out;
}

Subspace LieAlgebraBasis::span() const {
    std::vector<Vec> rows;
    rows.reserve(basis.size());
    for (const auto& m : basis) rows.push_back(flatten(m));
    return Subspace::from_rows(size * size, rows);
}

bool LieAlgebraBasis::contains(const Mat& m) const {
    SpanBuilder sb(size * size);
    for (const auto& b : basis) sb.insert(flatten(b));
    return sb.contains(flatten(m));
}

Vec LieAlgebraBasis::coords_of(const Mat& m) const {
    std::vector<Vec> rows;
    rows.reserve(basis.size());
    for (const auto& b : basis) rows.push_back(flatten(b));
    Vec c;
    require(solve_in_span(rows, flatten(m), c), "InvalidSpec",
            "matrix is not in the span of the algebra basis");
    return c;
}

Mat LieAlgebraBasis::from_coords(const Vec& c) const {
    require(c.size() == basis.size(), "ShapeMismatch", "coordinate vector length mismatch");
    Mat m(size, size, Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!c[i].is_zero()) m += basis[i].scaled(c[i]);
    return m;
}

void LieAlgebraBasis::validate() const {
    const Mat g = form_matrix(form, size);
    SpanBuilder sb(size * size);
    for (const auto& b : basis) {
        require(b.rows() == size && b.cols() == size, "InvalidSpec",
                "basis matrix has wrong size");
        require(is_skew_for(b, g), "InvalidSpec",
                "basis matrix is not skew for the declared form");
        require(sb.insert(flatten(b)), "InvalidSpec", "basis matrices are dependent");
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            require(sb.contains(flatten(bracket(basis[i], basis[j]))), "InvalidSpec",
                    "basis span is not closed under bracket");
}

bool same_span(const LieAlgebraBasis& a, const LieAlgebraBasis& b) {
    return a.size == b.size && a.span() == b.span();
}

LieAlgebraBasis generated_subalgebra(const std::vector<Mat>& seeds, Form form) {
    int size = seeds.empty() ? 0 : seeds[0].rows();
    LieAlgebraBasis out{form, size, {}};
    if (seeds.empty()) return out;
    SpanBuilder sb(size * size);
    std::vector<Mat> indep;
    auto add = [&](const Mat& m) {
        require(m.rows() == size && m.cols() == size, "ShapeMismatch",
                "seed matrices have mixed sizes");
        if (sb.insert(flatten(m))) indep.push_back(m);
    };
    for (const auto& s : seeds) add(s);
    // bracket-close: new elements only need pairing against everything once
    for (std::size_t i = 0; i < indep.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) add(bracket(indep[i], indep[j]));
    out.basis = std::move(indep);
    return out;
}

LieAlgebraBasis derived_algebra(const LieAlgebraBasis& h) {
    LieAlgebraBasis out{h.form, h.size, {}};
    SpanBuilder sb(h.size * h.size);
    for (std::size_t i = 0; i < h.basis.size(); ++i)
        for (std::size_t j = i + 1; j < h.basis.size(); ++j) {
            Mat b = bracket(h.basis[i], h.basis[j]);
            if (sb.insert(flatten(b))) out.basis.push_back(std::move(b));
        }
    return out;
}

LieAlgebraBasis center(const LieAlgebraBasis& h) {
    LieAlgebraBasis out{h.form, h.size, {}};
    const int d = h.dim();
    if (d == 0) return out;
    // rows: one block of equations per fixed basis element
    Mat sys(d * h.size * h.size, d, Rational(0));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            Vec b = flatten(bracket(h.basis[i], h.basis[j]));
            for (std::size_t k = 0; k < b.size(); ++k)
                sys.at(j * h.size * h.size + static_cast<int>(k), i) = b[k];
        }
    Subspace ker = kernel(sys);
    for (int i = 0; i < ker.dim(); ++i) out.basis.push_back(h.from_coords(ker.basis().row(i)));
    return out;
}

LieAlgebraBasis direct_sum(const LieAlgebraBasis& a, const LieAlgebraBasis& b) {
    require(a.form == Form::euclidean && b.form == Form::euclidean, "UnsupportedParams",
            "direct_sum is defined for euclidean algebras");
    LieAlgebraBasis out{Form::euclidean, a.size + b.size, {}};
    for (const auto& m : a.basis) {
        Mat big(out.size, out.size, Rational(0));
        for (int i = 0; i < a.size; ++i)
            for (int j = 0; j < a.size; ++j) big.at(i, j) = m.at(i, j);
        out.basis.push_back(std::move(big));
    }
    for (const auto& m : b.basis) {
        Mat big(out.size, out.size, Rational(0));
        for (int i = 0; i < b.size; ++i)
            for (int j = 0; j < b.size; ++j) big.at(a.size + i, a.size + j) = m.at(i, j);
        out.basis.push_back(std::move(big));
    }
    return out;
}

LieAlgebraBasis adjoint_rep(const LieAlgebraBasis& h) {
    require(h.form == Form::euclidean, "UnsupportedParams",
            "adjoint_rep is defined for euclidean algebras");
    const int d = h.dim();
    require(center(h).dim() == 0, "UnsupportedParams",
            "adjoint representation of an algebra with center is not faithful");
    // the invariant metric must reduce to a single scale on this basis,
    // otherwise the ad-matrices below would need an orthonormalization that
    // could leave the rationals
    Rational norm(0);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Rational tr(0);
            for (int r = 0; r < h.size; ++r)
                for (int c = 0; c < h.size; ++c) tr += h.basis[i].at(r, c) * h.basis[j].at(c, r);
            if (i == j) {
                if (norm.is_zero()) norm = -tr;
                require(-tr == norm, "UnsupportedParams",
                        "adjoint_rep needs equal trace-form norms on the basis");
            } else {
                require(tr.is_zero(), "UnsupportedParams",
                        "adjoint_rep needs a trace-orthogonal basis");
            }
        }
    LieAlgebraBasis out{Form::euclidean, d, {}};
    for (int a = 0; a < d; ++a) {
        Mat ad(d, d, Rational(0));
        for (int b = 0; b < d; ++b) {
            Vec c = h.coords_of(bracket(h.basis[a], h.basis[b]));
            for (int g = 0; g < d; ++g) ad.at(g, b) = c[g];
        }
        out.basis.push_back(std::move(ad));
    }
    return out;
}

// ---- sim(n) matrix model ----------------------------------------------

Mat sim_matrix(const SimElement& e) {
    const int n = e.A.rows();
    require(e.A.cols() == n && static_cast<int>(e.X.size()) == n, "ShapeMismatch",
            "triple with inconsistent sizes");
    Mat m(n + 2, n + 2, Rational(0));
    m.at(0, 0) = e.a;
    m.at(n + 1, n + 1) = -e.a;
    for (int i = 0; i < n; ++i) {
        m.at(0, 1 + i) = e.X[i];
        m.at(1 + i, n + 1) = -e.X[i];
        for (int j = 0; j < n; ++j) m.at(1 + i, 1 + j) = e.A.at(i, j);
    }
    return m;
}

SimElement sim_split(const Mat& m) {
    const int s = m.rows();
    require(s == m.cols() && s >= 2, "ShapeMismatch", "not a Lorentzian-size matrix");
    const int n = s - 2;
    require(is_skew_for(m, witt_form(n)), "NotInSimN",
            "matrix is not skew for the Witt form");
    for (int i = 1; i < s; ++i)
        require(m.at(i, 0).is_zero(), "NotInSimN", "matrix moves the isotropic line");
    SimElement e;
    e.a = m.at(0, 0);
    e.A = Mat(n, n, Rational(0));
    e.X = Vec(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        e.X[i] = m.at(0, 1 + i);
        for (int j = 0; j < n; ++j) e.A.at(i, j) = m.at(1 + i, 1 + j);
    }
    return e;
}

namespace {

Vec basis_vector(int n, int i) {
    Vec v(n, Rational(0));
    v[i] = Rational(1);
    return v;
}

// phi (as values on the basis of h) must vanish on all brackets
void check_vanishes_on_derived(const LieAlgebraBasis& h, const std::vector<Rational>& vals,
                               const char* what) {
    for (std::size_t i = 0; i < h.basis.size(); ++i)
        for (std::size_t j = i + 1; j < h.basis.size(); ++j) {
            Vec c = h.coords_of(bracket(h.basis[i], h.basis[j]));
            Rational acc(0);
            for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * vals[k];
            require(acc.is_zero(), "InvalidSpec",
                    std::string(what) + " does not vanish on the derived algebra");
        }
}

} // namespace

LieAlgebraBasis sim_embed(const SimSubalgebraSpec& spec) {
    require(spec.type >= 1 && spec.type <= 4, "InvalidSpec", "type tag must be 1..4");
    require(spec.h.form == Form::euclidean, "InvalidSpec",
            "orthogonal part must be a euclidean algebra");
    const int n = spec.h.size;
    require(n >= 1, "InvalidSpec", "transverse dimension must be positive");
    spec.h.validate();

    const int d = spec.h.dim();
    const Mat zero_n(n, n, Rational(0));
    const Vec zero_v(n, Rational(0));
    std::vector<Mat> out;

    switch (spec.type) {
        case 1:
            require(spec.phi.empty() && spec.psi.empty() && spec.m == 0, "InvalidSpec",
                    "type 1 takes no phi/psi data");
            out.push_back(sim_matrix({Rational(1), zero_n, zero_v}));
            for (const auto& A : spec.h.basis) out.push_back(sim_matrix({Rational(0), A, zero_v}));
            for (int i = 0; i < n; ++i)
                out.push_back(sim_matrix({Rational(0), zero_n, basis_vector(n, i)}));
            break;
        case 2:
            require(spec.phi.empty() && spec.psi.empty() && spec.m == 0, "InvalidSpec",
                    "type 2 takes no phi/psi data");
            for (const auto& A : spec.h.basis) out.push_back(sim_matrix({Rational(0), A, zero_v}));
            for (int i = 0; i < n; ++i)
                out.push_back(sim_matrix({Rational(0), zero_n, basis_vector(n, i)}));
            break;
        case 3: {
            require(static_cast<int>(spec.phi.size()) == d, "InvalidSpec",
                    "phi needs one value per basis element");
            bool nonzero = false;
            for (const auto& c : spec.phi) nonzero = nonzero || !c.is_zero();
            require(nonzero, "InvalidSpec", "phi must be nonzero");
            check_vanishes_on_derived(spec.h, spec.phi, "phi");
            for (int i = 0; i < d; ++i)
                out.push_back(sim_matrix({spec.phi[i], spec.h.basis[i], zero_v}));
            for (int i = 0; i < n; ++i)
                out.push_back(sim_matrix({Rational(0), zero_n, basis_vector(n, i)}));
            break;
        }
        case 4: {
            const int m = spec.m;
            require(m >= 1 && m < n, "InvalidSpec", "type 4 needs 0 < m < n");
            require(static_cast<int>(spec.psi.size()) == d, "InvalidSpec",
                    "psi needs one vector per basis element");
            for (const auto& A : spec.h.basis)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        require((i < m && j < m) || A.at(i, j).is_zero(), "InvalidSpec",
                                "orthogonal part must act only on the first m axes");
            SpanBuilder image(n - m);
            std::vector<std::vector<Rational>> comps(n - m, std::vector<Rational>(d));
            for (int i = 0; i < d; ++i) {
                require(static_cast<int>(spec.psi[i].size()) == n - m, "InvalidSpec",
                        "psi vectors must have length n-m");
                image.insert(spec.psi[i]);
                for (int j = 0; j < n - m; ++j) comps[j][i] = spec.psi[i][j];
            }
            require(image.dim() == n - m, "InvalidSpec", "psi must be surjective");
            for (int j = 0; j < n - m; ++j)
                check_vanishes_on_derived(spec.h, comps[j], "psi");
            require(center(spec.h).dim() >= n - m, "InvalidSpec",
                    "center of the orthogonal part is too small for type 4");
            for (int i = 0; i < d; ++i) {
                Vec X = zero_v;
                for (int j = 0; j < n - m; ++j) X[m + j] = spec.psi[i][j];
                out.push_back(sim_matrix({Rational(0), spec.h.basis[i], X}));
            }
            for (int i = 0; i < m; ++i)
                out.push_back(sim_matrix({Rational(0), zero_n, basis_vector(n, i)}));
            break;
        }
    }
    LieAlgebraBasis g{Form::lorentzian, n + 2, std::move(out)};
    g.validate();
    return g;
}

SimSubalgebraSpec classify_sim_subalgebra(const LieAlgebraBasis& g) {
    require(g.form == Form::lorentzian, "NotInSimN", "expected a Lorentzian algebra");
    const int n = g.n();
    std::vector<SimElement> elems;
    elems.reserve(g.basis.size());
    for (const auto& m : g.basis) elems.push_back(sim_split(m));

    // orthogonal projection pr_so(n): a canonical basis for h
    std::vector<Vec> arows;
    for (const auto& e : elems) arows.push_back(flatten(e.A));
    Subspace hspan = Subspace::from_rows(n * n, arows);
    LieAlgebraBasis h{Form::euclidean, n, {}};
    for (int i = 0; i < hspan.dim(); ++i) h.basis.push_back(unflatten(hspan.basis().row(i), n));

    // translation part: solve for combinations with zero (a, A) projection
    const int d = g.dim();
    Mat proj(1 + n * n, d, Rational(0));
    for (int i = 0; i < d; ++i) {
        proj.at(0, i) = elems[i].a;
        Vec f = flatten(elems[i].A);
        for (std::size_t k = 0; k < f.size(); ++k) proj.at(1 + static_cast<int>(k), i) = f[k];
    }
    Subspace combos = kernel(proj);
    std::vector<Vec> trows;
    for (int i = 0; i < combos.dim(); ++i) {
        Vec c = combos.basis().row(i);
        Vec X(n, Rational(0));
        for (int e = 0; e < d; ++e)
            for (int j = 0; j < n; ++j) X[j] += c[e] * elems[e].X[j];
        trows.push_back(std::move(X));
    }
    Subspace trans = Subspace::from_rows(n, trows);

    bool has_a = false;
    for (const auto& e : elems) has_a = has_a || !e.a.is_zero();

    SimSubalgebraSpec spec;
    spec.h = h;

    if (has_a) {
        require(trans.dim() == n, "NotWeaklyIrreducibleShape",
                "nonzero scaling part requires a full translation ideal");
        // does some pure-(a, X) element carry a != 0? then the scaling
        // generator itself is present: type 1
        Mat aproj(n * n, d, Rational(0));
        for (int i = 0; i < d; ++i) {
            Vec f = flatten(elems[i].A);
            for (std::size_t k = 0; k < f.size(); ++k) aproj.at(static_cast<int>(k), i) = f[k];
        }
        Subspace akernel = kernel(aproj);
        bool scaling_alone = false;
        for (int i = 0; i < akernel.dim() && !scaling_alone; ++i) {
            Vec c = akernel.basis().row(i);
            Rational a(0);
            for (int e = 0; e < d; ++e) a += c[e] * elems[e].a;
            scaling_alone = !a.is_zero();
        }
        if (scaling_alone) {
            require(g.dim() == 1 + h.dim() + n, "NotWeaklyIrreducibleShape",
                    "dimension does not match the scaling shape");
            spec.type = 1;
            return spec;
        }
        // a is induced by a functional on h: recover phi on the h basis
        spec.type = 3;
        std::vector<Vec> lift_rows;
        for (const auto& e : elems) lift_rows.push_back(flatten(e.A));
        for (int i = 0; i < h.dim(); ++i) {
            Vec c;
            bool ok = solve_in_span(lift_rows, flatten(h.basis[i]), c);
            require(ok, "InternalError", "projection basis failed to lift");
            Rational a(0);
            for (int e = 0; e < d; ++e) a += c[e] * elems[e].a;
            spec.phi.push_back(a);
        }
        require(g.dim() == h.dim() + n, "NotWeaklyIrreducibleShape",
                "dimension does not match the graph shape");
        return spec;
    }

    if (trans.dim() == n) {
        require(g.dim() == h.dim() + n, "NotWeaklyIrreducibleShape",
                "dimension does not match the semidirect shape");
        spec.type = 2;
        return spec;
    }

    // partial translations: the remaining shape carries psi into the
    // annihilated axes, and the translation block must sit on the leading
    // coordinates exactly
    const int m = trans.dim();
    require(m >= 1, "NotWeaklyIrreducibleShape", "no translation part at all");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            require(trans.basis().at(i, j) == ((j == i) ? Rational(1) : Rational(0)),
                    "NotWeaklyIrreducibleShape",
                    "translation part is not aligned with the leading axes");
    for (const auto& A : h.basis)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                require((i < m && j < m) || A.at(i, j).is_zero(),
                        "NotWeaklyIrreducibleShape",
                        "orthogonal part does not fix the annihilated axes");

    spec.type = 4;
    spec.m = m;
    std::vector<Vec> lift_rows;
    for (const auto& e : elems) lift_rows.push_back(flatten(e.A));
    SpanBuilder image(n - m);
    for (int i = 0; i < h.dim(); ++i) {
        Vec c;
        bool ok = solve_in_span(lift_rows, flatten(h.basis[i]), c);
        require(ok, "InternalError", "projection basis failed to lift");
        Vec tail(n - m, Rational(0));
        for (int e = 0; e < d; ++e)
            for (int j = 0; j < n - m; ++j) tail[j] += c[e] * elems[e].X[m + j];
        image.insert(tail);
        spec.psi.push_back(std::move(tail));
    }
    require(image.dim() == n - m, "NotWeaklyIrreducibleShape",
            "annihilated axes are not fully reached by the translation tails");
    require(g.dim() == h.dim() + m, "NotWeaklyIrreducibleShape",
            "dimension does not match the partial-translation shape");
    return spec;
}

} // namespace wgeo
