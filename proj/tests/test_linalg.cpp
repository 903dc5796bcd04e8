#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wgeo/linalg.hpp"

using namespace wgeo;

namespace {

// Independent oracle: plain rational Gauss-Jordan, no fraction-free tricks.
Mat naive_rref(Mat m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        m.swap_rows(r, p);
        Rational pv = m.at(r, c);
        for (int j = 0; j < m.cols(); ++j) m.at(r, j) /= pv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return m;
}

struct Rng {
    std::mt19937 g{20260815};
    Rational rat() {
        std::uniform_int_distribution<int> num(-10, 10), den(1, 6);
        return Rational(num(g), den(g));
    }
    Mat mat(int r, int c) {
        Mat m(r, c, Rational(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = rat();
        return m;
    }
    // rank-deficient by construction
    Mat low_rank(int r, int c, int rk) { return mat(r, rk) * mat(rk, c); }
};

Vec matvec_cols(const Mat& m, const Vec& v) {
    Vec out(m.rows(), Rational(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
    return out;
}

bool all_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("rref agrees with a naive Gauss-Jordan oracle") {
    Rng rng;
    for (int trial = 0; trial < 12; ++trial) {
        Mat m = (trial % 3 == 0) ? rng.low_rank(5, 7, 2) : rng.mat(4 + trial % 3, 5);
        Mat expect = naive_rref(m);
        RrefResult got = rref(m);
        CHECK(got.R == expect);
        int rk = 0;
        for (int i = 0; i < expect.rows(); ++i) {
            bool nz = false;
            for (int j = 0; j < expect.cols(); ++j) nz = nz || !expect.at(i, j).is_zero();
            rk += nz ? 1 : 0;
        }
        CHECK(got.rank == rk);
        CHECK(static_cast<int>(got.pivots.size()) == rk);
        for (int i = 0; i < got.rank; ++i) CHECK(got.R.at(i, got.pivots[i]).is_one());
    }
}

TEST_CASE("rref serial and parallel paths agree") {
    Rng rng;
    for (int trial = 0; trial < 8; ++trial) {
        Mat m = (trial % 2 == 0) ? rng.mat(6, 9) : rng.low_rank(8, 6, 3);
        RrefResult s = rref(m, Exec::serial);
        RrefResult p = rref(m, Exec::par);
        CHECK(s.R == p.R);
        CHECK(s.pivots == p.pivots);
    }
}

TEST_CASE("rref is idempotent") {
    Rng rng;
    Mat m = rng.low_rank(6, 8, 4);
    Mat r1 = rref(m).R;
    CHECK(rref(r1).R == r1);
}

TEST_CASE("rref handles degenerate shapes") {
    Mat z(3, 4, Rational(0));
    RrefResult rr = rref(z);
    CHECK(rr.rank == 0);
    CHECK(rr.R == z);
    CHECK(rref(Mat(0, 0, Rational(0))).rank == 0);
    Mat col(3, 1, Rational(2));
    RrefResult rc = rref(col);
    CHECK(rc.rank == 1);
    CHECK(rc.R.at(0, 0).is_one());
}

TEST_CASE("kernel vectors annihilate and rank-nullity holds") {
    Rng rng;
    for (int trial = 0; trial < 6; ++trial) {
        Mat m = rng.low_rank(5, 8, 3);
        RrefResult rr = rref(m);
        Subspace k = kernel(m);
        CHECK(rr.rank + k.dim() == m.cols());
        for (int i = 0; i < k.dim(); ++i) CHECK(all_zero(matvec_cols(m, k.basis().row(i))));
    }
    CHECK(kernel(Mat::identity(4, Rational(1), Rational(0))).dim() == 0);
}

TEST_CASE("subspace canonical form makes equality structural") {
    Vec a = {Rational(1), Rational(2), Rational(0), Rational(-1)};
    Vec b = {Rational(0), Rational(1), Rational(1), Rational(1)};
    Vec a2 = {Rational(2), Rational(4), Rational(0), Rational(-2)};
    Vec ab = {Rational(1), Rational(3), Rational(1), Rational(0)};
    Subspace s1 = Subspace::from_rows(4, {a, b});
    Subspace s2 = Subspace::from_rows(4, {ab, a2});
    CHECK(s1 == s2);
    CHECK(s1.dim() == 2);
    CHECK(s1.contains(ab));
    CHECK_FALSE(s1.contains({Rational(0), Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("subspace sum and intersection satisfy the dimension identity") {
    Rng rng;
    for (int trial = 0; trial < 6; ++trial) {
        int amb = 7;
        std::vector<Vec> ra, rb;
        for (int i = 0; i < 3; ++i) ra.push_back(rng.mat(1, amb).row(0));
        for (int i = 0; i < 4; ++i) rb.push_back(rng.mat(1, amb).row(0));
        // force a shared direction
        rb.push_back(ra[0]);
        Subspace A = Subspace::from_rows(amb, ra);
        Subspace B = Subspace::from_rows(amb, rb);
        Subspace S = A.sum(B);
        Subspace I = A.intersect(B);
        CHECK(A.dim() + B.dim() == S.dim() + I.dim());
        CHECK(S.contains(A));
        CHECK(S.contains(B));
        CHECK(A.contains(I));
        CHECK(B.contains(I));
        CHECK(I.contains(ra[0]));
    }
}

TEST_CASE("subspace trivial cases") {
    Subspace empty(5);
    CHECK(empty.dim() == 0);
    CHECK(Subspace::full(5).dim() == 5);
    CHECK(Subspace::full(5).contains(empty));
    CHECK(empty.intersect(Subspace::full(5)) == empty);
    CHECK(empty.sum(Subspace::full(5)) == Subspace::full(5));
    CHECK(empty.contains(Vec(5, Rational(0))));
}

TEST_CASE("span builder tracks independence incrementally") {
    Rng rng;
    SpanBuilder sb(6);
    Vec v1 = rng.mat(1, 6).row(0);
    Vec v2 = rng.mat(1, 6).row(0);
    CHECK(sb.insert(v1));
    CHECK(sb.insert(v2));
    CHECK(sb.dim() == 2);

    // dependent combination is recognized, not inserted
    Vec combo(6, Rational(0));
    for (int j = 0; j < 6; ++j) combo[j] = v1[j] * Rational(3) - v2[j] * Rational(1, 2);
    CHECK_FALSE(sb.insert(combo));
    CHECK(sb.dim() == 2);
    CHECK(sb.contains(combo));
    CHECK(sb.subspace() == Subspace::from_rows(6, {v1, v2}));

    Vec v3 = rng.mat(1, 6).row(0);
    if (!sb.contains(v3)) {
        CHECK(sb.insert(v3));
        CHECK(sb.dim() == 3);
    }
}

TEST_CASE("solve_in_span recovers combination coefficients") {
    Rng rng;
    std::vector<Vec> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(rng.mat(1, 5).row(0));
    Vec target(5, Rational(0));
    Rational c[3] = {Rational(2), Rational(-1, 3), Rational(7)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) target[j] += c[i] * gens[i][j];

    Vec coords;
    REQUIRE(solve_in_span(gens, target, coords));
    Vec rebuilt(5, Rational(0));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < 5; ++j) rebuilt[j] += coords[i] * gens[i][j];
    CHECK(rebuilt == target);

    Subspace span = Subspace::from_rows(5, gens);
    Vec outside = rng.mat(1, 5).row(0);
    if (!span.contains(outside)) CHECK_FALSE(solve_in_span(gens, outside, coords));
}
