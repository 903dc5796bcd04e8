#include "wgeo/linalg.hpp"

#include <algorithm>

namespace wgeo {

namespace {

// exact division with verification; fraction-free elimination guarantees
// divisibility, so a nonzero remainder means a logic error upstream
mpz_class div_exact(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    require(r == 0, "InternalError", "fraction-free elimination lost exactness");
    return q;
}

} // namespace

RrefResult rref(const Mat& m, Exec ex) {
    const int nr = m.rows();
    const int nc = m.cols();
    RrefResult res;
    res.R = Mat(nr, nc, Rational(0));
    if (nr == 0 || nc == 0) return res;

    // clear denominators row by row so the forward phase is pure integer work
    std::vector<std::vector<mpz_class>> a(nr, std::vector<mpz_class>(nc));
    parallel_for(static_cast<std::size_t>(nr), ex, [&](std::size_t i) {
        mpz_class l = 1;
        for (int j = 0; j < nc; ++j) l = lcm(l, m.at(static_cast<int>(i), j).den());
        for (int j = 0; j < nc; ++j) {
            mpq_class q = m.at(static_cast<int>(i), j).raw() * l;
            a[i][j] = q.get_num();
        }
    });

    // Bareiss one-step fraction-free forward elimination; entries stay
    // integer and each update divides exactly by the previous pivot
    std::vector<int> piv;
    mpz_class prev = 1;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        const mpz_class pivot = a[r][c];
        parallel_for(static_cast<std::size_t>(nr - r - 1), ex, [&](std::size_t k) {
            auto& row = a[r + 1 + k];
            const mpz_class f = row[c];
            row[c] = 0;
            for (int j = c + 1; j < nc; ++j)
                row[j] = div_exact(row[j] * pivot - f * a[r][j], prev);
        });
        prev = pivot;
        piv.push_back(c);
        ++r;
    }

    // back substitution over the rationals
    std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(nc));
    parallel_for(static_cast<std::size_t>(r), ex, [&](std::size_t i) {
        Rational pv{a[i][piv[i]]};
        for (int j = piv[i]; j < nc; ++j) rows[i][j] = Rational(a[i][j]) / pv;
    });
    for (int i = r - 1; i >= 0; --i) {
        const int pc = piv[i];
        parallel_for(static_cast<std::size_t>(i), ex, [&](std::size_t k) {
            const Rational f = rows[k][pc];
            if (f.is_zero()) return;
            for (int j = pc; j < nc; ++j) rows[k][j] -= f * rows[i][j];
        });
    }

    for (int i = 0; i < r; ++i)
        for (int j = piv[i]; j < nc; ++j) res.R.at(i, j) = rows[i][j];
    res.pivots = std::move(piv);
    res.rank = r;
    return res;
}

Subspace kernel(const Mat& m, Exec ex) {
    RrefResult rr = rref(m, ex);
    const int nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (int c : rr.pivots) is_pivot[c] = true;

    Subspace s(nc);
    std::vector<Vec> gens;
    for (int f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        Vec v(nc, Rational(0));
        v[f] = Rational(1);
        for (int i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.R.at(i, f);
        gens.push_back(std::move(v));
    }
    return Subspace::from_rows(nc, gens, ex);
}

Subspace Subspace::from_rows(int ambient, const std::vector<Vec>& rows, Exec ex) {
    Subspace s(ambient);
    if (rows.empty()) {
        s.basis_ = Mat(0, ambient, Rational(0));
        return s;
    }
    Mat m(static_cast<int>(rows.size()), ambient, Rational(0));
    for (int i = 0; i < m.rows(); ++i) {
        require(static_cast<int>(rows[i].size()) == ambient, "ShapeMismatch",
                "subspace generator has wrong length");
        for (int j = 0; j < ambient; ++j) m.at(i, j) = rows[i][j];
    }
    RrefResult rr = rref(m, ex);
    Mat b(rr.rank, ambient, Rational(0));
    for (int i = 0; i < rr.rank; ++i)
        for (int j = 0; j < ambient; ++j) b.at(i, j) = rr.R.at(i, j);
    s.basis_ = std::move(b);
    return s;
}

Subspace Subspace::full(int ambient) {
    Subspace s(ambient);
    s.basis_ = Mat::identity(ambient, Rational(1), Rational(0));
    return s;
}

bool Subspace::contains(const Vec& v) const {
    require(static_cast<int>(v.size()) == ambient_, "AmbientMismatch",
            "vector length does not match ambient dimension");
    Vec w = v;
    for (int i = 0; i < basis_.rows(); ++i) {
        int pc = -1;
        for (int j = 0; j < ambient_; ++j)
            if (!basis_.at(i, j).is_zero()) {
                pc = j;
                break;
            }
        const Rational f = w[pc];
        if (f.is_zero()) continue;
        for (int j = pc; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
    }
    for (const auto& x : w)
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& o) const {
    require(ambient_ == o.ambient_, "AmbientMismatch", "subspaces in different ambient spaces");
    for (int i = 0; i < o.basis_.rows(); ++i)
        if (!contains(o.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& o) const {
    require(ambient_ == o.ambient_, "AmbientMismatch", "subspaces in different ambient spaces");
    std::vector<Vec> rows;
    for (int i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
    for (int i = 0; i < o.basis_.rows(); ++i) rows.push_back(o.basis_.row(i));
    return from_rows(ambient_, rows);
}

// Zassenhaus: row-reduce [A | A; B | 0]; rows with zero left half carry an
// intersection basis in the right half.
Subspace Subspace::intersect(const Subspace& o) const {
    require(ambient_ == o.ambient_, "AmbientMismatch", "subspaces in different ambient spaces");
    const int da = basis_.rows();
    const int db = o.basis_.rows();
    if (da == 0 || db == 0) return Subspace(ambient_);
    Mat m(da + db, 2 * ambient_, Rational(0));
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < ambient_; ++j) {
            m.at(i, j) = basis_.at(i, j);
            m.at(i, ambient_ + j) = basis_.at(i, j);
        }
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < ambient_; ++j) m.at(da + i, j) = o.basis_.at(i, j);
    RrefResult rr = rref(m);
    std::vector<Vec> rows;
    for (int i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] < ambient_) continue;
        Vec v(ambient_);
        for (int j = 0; j < ambient_; ++j) v[j] = rr.R.at(i, ambient_ + j);
        rows.push_back(std::move(v));
    }
    return from_rows(ambient_, rows);
}

void SpanBuilder::reduce(Vec& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational f = v[pivcol_[i]];
        if (f.is_zero()) continue;
        for (int j = pivcol_[i]; j < ambient_; ++j) v[j] -= f * rows_[i][j];
    }
}

bool SpanBuilder::insert(Vec v) {
    require(static_cast<int>(v.size()) == ambient_, "ShapeMismatch",
            "vector length does not match ambient dimension");
    reduce(v);
    int pc = -1;
    for (int j = 0; j < ambient_; ++j)
        if (!v[j].is_zero()) {
            pc = j;
            break;
        }
    if (pc < 0) return false;
    const Rational pv = v[pc];
    for (int j = pc; j < ambient_; ++j) v[j] /= pv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational f = rows_[i][pc];
        if (f.is_zero()) continue;
        for (int j = pc; j < ambient_; ++j) rows_[i][j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivcol_.begin(), pivcol_.end(), pc);
    const auto idx = pos - pivcol_.begin();
    pivcol_.insert(pos, pc);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

bool SpanBuilder::contains(Vec v) const {
    require(static_cast<int>(v.size()) == ambient_, "ShapeMismatch",
            "vector length does not match ambient dimension");
    reduce(v);
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Subspace SpanBuilder::subspace() const {
    std::vector<Vec> rows(rows_.begin(), rows_.end());
    return Subspace::from_rows(ambient_, rows);
}

bool solve_in_span(const std::vector<Vec>& rows, const Vec& target, Vec& coords_out) {
    const int k = static_cast<int>(rows.size());
    const int n = static_cast<int>(target.size());
    Mat m(n, k + 1, Rational(0));
    for (int j = 0; j < k; ++j) {
        require(static_cast<int>(rows[j].size()) == n, "ShapeMismatch",
                "span generator has wrong length");
        for (int i = 0; i < n; ++i) m.at(i, j) = rows[j][i];
    }
    for (int i = 0; i < n; ++i) m.at(i, k) = target[i];
    RrefResult rr = rref(m);
    coords_out.assign(k, Rational(0));
    for (int i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] == k) return false;  // target outside the span
        coords_out[rr.pivots[i]] = rr.R.at(i, k);
    }
    return true;
}

int pair_count(int size) { return size * (size - 1) / 2; }

int pair_index(int a, int b, int size) {
    require(0 <= a && a < b && b < size, "ShapeMismatch", "pair index out of order");
    return a * size - a * (a + 1) / 2 + (b - a - 1);
}

} // namespace wgeo
