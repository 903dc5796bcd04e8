#include <cstdlib>

#include "wgeo/liealg.hpp"

namespace wgeo {

namespace {

Mat from_ints(const std::vector<std::vector<long>>& rows) {
    const int n = static_cast<int>(rows.size());
    Mat m(n, n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Rational(rows[i][j]);
    return m;
}

// place an m x m block at offset (r, c) of a size x size matrix
void put_block(Mat& dst, const Mat& blk, int r, int c, const Rational& scale) {
    for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j)
            if (!blk.at(i, j).is_zero()) dst.at(r + i, c + j) = blk.at(i, j) * scale;
}

Mat sym_unit(int m, int r, int s) {  // E_rs + E_sr (0-based), or E_rr
    Mat e(m, m, Rational(0));
    e.at(r, s) = Rational(1);
    e.at(s, r) = Rational(1);
    if (r == s) e.at(r, r) = Rational(1);
    return e;
}

Mat skew_unit(int m, int r, int s) {  // 0-based
    Mat e(m, m, Rational(0));
    e.at(r, s) = Rational(1);
    e.at(s, r) = Rational(-1);
    return e;
}

// left multiplication by the quaternionic matrix A0 + A1 i + A2 j + A3 k on
// H^m = R^{4m} with block coordinates (re, i, j, k)
Mat quat_left(const Mat& A0, const Mat& A1, const Mat& A2, const Mat& A3) {
    const int m = A0.rows();
    Mat out(4 * m, 4 * m, Rational(0));
    const Mat* blocks[4][4] = {
        {&A0, &A1, &A2, &A3},
        {&A1, &A0, &A3, &A2},
        {&A2, &A3, &A0, &A1},
        {&A3, &A2, &A1, &A0},
    };
    const long sign[4][4] = {
        {1, -1, -1, -1},
        {1, 1, -1, 1},
        {1, 1, 1, -1},
        {1, -1, 1, 1},
    };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            put_block(out, *blocks[r][c], r * m, c * m, Rational(sign[r][c]));
    return out;
}

Mat zero_mat(int m) { return Mat(m, m, Rational(0)); }

} // namespace

LieAlgebraBasis so_n(int n) {
    require(n >= 0, "UnsupportedParams", "negative dimension");
    LieAlgebraBasis h{Form::euclidean, n, {}};
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) h.basis.push_back(e_skew(n, i, j));
    return h;
}

LieAlgebraBasis zero_algebra(int n) {
    require(n >= 0, "UnsupportedParams", "negative dimension");
    return LieAlgebraBasis{Form::euclidean, n, {}};
}

Mat complex_structure(int m) {
    require(m >= 1, "UnsupportedParams", "complex structure needs m >= 1");
    return realify(zero_mat(m), Mat::identity(m, Rational(1), Rational(0)));
}

LieAlgebraBasis u_m(int m) {
    require(m >= 1, "UnsupportedParams", "u(m) needs m >= 1");
    LieAlgebraBasis h{Form::euclidean, 2 * m, {}};
    for (int r = 0; r < m; ++r)
        for (int s = r + 1; s < m; ++s) h.basis.push_back(realify(skew_unit(m, r, s), zero_mat(m)));
    for (int r = 0; r < m; ++r)
        for (int s = r; s < m; ++s) h.basis.push_back(realify(zero_mat(m), sym_unit(m, r, s)));
    return h;
}

LieAlgebraBasis su_m(int m) {
    require(m >= 1, "UnsupportedParams", "su(m) needs m >= 1");
    LieAlgebraBasis h{Form::euclidean, 2 * m, {}};
    for (int r = 0; r < m; ++r)
        for (int s = r + 1; s < m; ++s) h.basis.push_back(realify(skew_unit(m, r, s), zero_mat(m)));
    for (int r = 0; r < m; ++r)
        for (int s = r + 1; s < m; ++s) h.basis.push_back(realify(zero_mat(m), sym_unit(m, r, s)));
    // traceless diagonal imaginary part
    for (int r = 0; r + 1 < m; ++r) {
        Mat d = sym_unit(m, r, r);
        d.at(r + 1, r + 1) = Rational(-1);
        h.basis.push_back(realify(zero_mat(m), d));
    }
    return h;
}

std::array<Mat, 3> quaternion_structures(int m) {
    require(m >= 1, "UnsupportedParams", "quaternionic structure needs m >= 1");
    const int n = 4 * m;
    auto blockperm = [&](int a, int b, int c, int d, long sa, long sb, long sc, long sd) {
        // column block of each row block together with its sign
        Mat J(n, n, Rational(0));
        int cols[4] = {a, b, c, d};
        long sgn[4] = {sa, sb, sc, sd};
        for (int r = 0; r < 4; ++r)
            for (int i = 0; i < m; ++i) J.at(r * m + i, cols[r] * m + i) = Rational(sgn[r]);
        return J;
    };
    // right multiplications: x -> x i and x -> x j
    Mat J1 = blockperm(1, 0, 3, 2, -1, 1, 1, -1);
    Mat J2 = blockperm(2, 3, 0, 1, -1, -1, 1, 1);
    Mat J3 = J1 * J2;
    return {J1, J2, J3};
}

LieAlgebraBasis sp_m(int m) {
    require(m >= 1, "UnsupportedParams", "sp(m) needs m >= 1");
    LieAlgebraBasis h{Form::euclidean, 4 * m, {}};
    const Mat z = zero_mat(m);
    for (int r = 0; r < m; ++r)
        for (int s = r + 1; s < m; ++s) h.basis.push_back(quat_left(skew_unit(m, r, s), z, z, z));
    for (int part = 1; part <= 3; ++part)
        for (int r = 0; r < m; ++r)
            for (int s = r; s < m; ++s) {
                Mat e = sym_unit(m, r, s);
                h.basis.push_back(quat_left(z, part == 1 ? e : z, part == 2 ? e : z,
                                            part == 3 ? e : z));
            }
    return h;
}

LieAlgebraBasis sp_sp1_m(int m) {
    LieAlgebraBasis h = sp_m(m);
    auto J = quaternion_structures(m);
    h.basis.push_back(J[0]);
    h.basis.push_back(J[1]);
    h.basis.push_back(J[2]);
    return h;
}

LieAlgebraBasis g2_so7() {
    auto E = [](int i, int j) { return e_skew(7, i, j); };
    LieAlgebraBasis h{Form::euclidean, 7, {}};
    h.basis = {
        E(1, 2) - E(3, 4), E(1, 2) - E(5, 6), E(1, 3) + E(2, 4), E(1, 3) - E(6, 7),
        E(1, 4) - E(2, 3), E(1, 4) - E(5, 7), E(1, 5) + E(2, 6), E(1, 5) + E(4, 7),
        E(1, 6) - E(2, 5), E(1, 6) + E(3, 7), E(1, 7) - E(3, 6), E(1, 7) - E(4, 5),
        E(2, 7) - E(3, 5), E(2, 7) + E(4, 6),
    };
    return h;
}

LieAlgebraBasis spin7_so8() {
    auto E = [](int i, int j) { return e_skew(8, i, j); };
    LieAlgebraBasis h{Form::euclidean, 8, {}};
    h.basis = {
        E(1, 2) + E(3, 4),  E(1, 3) - E(2, 4),  E(1, 4) + E(2, 3),  E(5, 6) + E(7, 8),
        -E(5, 7) + E(6, 8), E(5, 8) + E(6, 7),  -E(1, 5) + E(2, 6), E(1, 2) + E(5, 6),
        E(1, 6) + E(2, 5),  E(3, 7) - E(4, 8),  E(3, 8) + E(4, 7),  E(1, 7) + E(2, 8),
        E(1, 8) - E(2, 7),  E(3, 5) + E(4, 6),  E(3, 6) - E(4, 5),  E(1, 8) + E(3, 6),
        E(1, 7) + E(3, 5),  E(2, 6) - E(4, 8),  E(2, 5) + E(3, 8),  E(2, 3) + E(6, 7),
        E(2, 4) + E(5, 7),
    };
    return h;
}

// Images of a standard so(3) basis under the (2k+1)-dimensional real
// irreducible representation, rescaled to a common integer matrix model
// that is skew with respect to the identity form. Generated offline by
// scripts/gen_so3_irrep.py (diagonalize the invariant pairing on harmonic
// polynomials over Q and conjugate into an orthonormal frame); verified
// there against the defining structure constants, and the scalar Casimir
// is re-verified in the test suite.
LieAlgebraBasis so3_irrep(int k) {
    LieAlgebraBasis h{Form::euclidean, 2 * k + 1, {}};
    switch (k) {
        case 1:
            h.basis = {e_skew(3, 2, 3), e_skew(3, 3, 1), e_skew(3, 1, 2)};
            return h;
        case 2:
            h.basis = {
                from_ints({{0, 0, 3, -3, 3},
                           {0, 0, -2, 2, 1},
                           {-3, 2, 0, -1, 2},
                           {3, -2, 1, 0, 2},
                           {-3, -1, -2, -2, 0}}),
                from_ints({{0, -3, -3, 0, 3},
                           {3, 0, -1, -2, 2},
                           {3, 1, 0, -2, -2},
                           {0, 2, 2, 0, 1},
                           {-3, -2, 2, -1, 0}}),
                from_ints({{0, 0, 0, 0, 0},
                           {0, 0, 1, 5, 1},
                           {0, -1, 0, -1, -4},
                           {0, -5, 1, 0, -1},
                           {0, -1, 4, 1, 0}}),
            };
            return h;
        case 3:
            h.basis = {
                from_ints({{0, 0, 0, 0, 8, -4, -4},
                           {0, 0, 3, -3, 2, -1, 5},
                           {0, -3, 0, 0, 1, 4, -2},
                           {0, 3, 0, 0, -5, 0, -2},
                           {-8, -2, -1, 5, 0, -5, 1},
                           {4, 1, -4, 0, 5, 0, -2},
                           {4, -5, 2, 2, -1, 2, 0}}),
                from_ints({{0, 0, 0, -8, 0, -4, 4},
                           {0, 0, 3, 1, 2, -5, -3},
                           {0, -3, 0, 2, -1, 0, 4},
                           {8, -1, -2, 0, -3, -6, 2},
                           {0, -2, 1, 3, 0, 1, 3},
                           {4, 5, 0, 6, -1, 0, 0},
                           {-4, 3, -4, -2, -3, 0, 0}}),
                from_ints({{0, 0, 0, 0, 0, 0, 0},
                           {0, 0, -6, -2, 4, 6, 2},
                           {0, 6, 0, 4, 4, 0, 8},
                           {0, 2, -4, 0, -4, 0, 0},
                           {0, -4, -4, 4, 0, 0, 0},
                           {0, -6, 0, 0, 0, 0, 4},
                           {0, -2, -8, 0, 0, -4, 0}}),
            };
            return h;
        case 4:
            h.basis = {
                from_ints({{0, 0, 0, 2550, -850, 0, 0, 0, 0},
                           {0, 0, 0, -1785, -255, 510, 1360, -647, -21},
                           {0, 0, 0, 255, -1785, 1020, 170, 1171, -297},
                           {-2550, 1785, -255, 0, 0, 0, 0, 0, 0},
                           {850, 255, 1785, 0, 0, 0, 0, 0, 0},
                           {0, -510, -1020, 0, 0, 0, -680, 554, 822},
                           {0, -1360, -170, 0, 0, 680, 0, -822, 554},
                           {0, 647, -1171, 0, 0, -554, 822, 0, 680},
                           {0, 21, 297, 0, 0, -822, -554, -680, 0}}),
                from_ints({{0, 0, 0, -850, -2550, 0, 0, 0, 0},
                           {0, 0, 0, 255, -1785, -1020, -170, -1171, 297},
                           {0, 0, 0, 1785, 255, 510, 1360, -647, -21},
                           {850, -255, -1785, 0, 0, 0, 0, 0, 0},
                           {2550, 1785, -255, 0, 0, 0, 0, 0, 0},
                           {0, 1020, -510, 0, 0, 0, -680, -986, 102},
                           {0, 170, -1360, 0, 0, 680, 0, -102, -986},
                           {0, 1171, 647, 0, 0, 986, 102, 0, 680},
                           {0, -297, 21, 0, 0, -102, 986, -680, 0}}),
                from_ints({{0, 0, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 1700, 0, 0, 0, 0, 0, 0},
                           {0, -1700, 0, 0, 0, 0, 0, 0, 0},
                           {0, 0, 0, 0, 850, 0, 0, 0, 0},
                           {0, 0, 0, -850, 0, 0, 0, 0, 0},
                           {0, 0, 0, 0, 0, 0, -1020, 1806, 2158},
                           {0, 0, 0, 0, 0, 1020, 0, 1542, -2094},
                           {0, 0, 0, 0, 0, -1806, -1542, 0, -1530},
                           {0, 0, 0, 0, 0, -2158, 2094, 1530, 0}}),
            };
            return h;
        default:
            fail("UnsupportedParams",
                 "so(3) irreducible model available for k = 1..4, got k = " + std::to_string(k));
    }
}

LieAlgebraBasis adjoin_center(const LieAlgebraBasis& h, const std::string& family) {
    Mat J(0, 0, Rational(0));
    if (family == "u" || family == "su") {
        require(h.size % 2 == 0, "UnsupportedParams", "complex model needs even size");
        J = complex_structure(h.size / 2);
    } else if (family == "sp") {
        require(h.size % 4 == 0, "UnsupportedParams", "quaternionic model needs size 4m");
        J = quaternion_structures(h.size / 4)[0];
    } else {
        // the remaining families centralize nothing usable: so(n) and the
        // exceptional models have trivial centralizer, and sp(1) has no
        // center of its own
        fail("UnsupportedParams",
             "no commuting complex structure to adjoin for family '" + family + "'");
    }
    for (const auto& b : h.basis)
        require(bracket(J, b).is_zero(), "InternalError",
                "adjoined structure fails to commute");
    LieAlgebraBasis out = h;
    if (!out.contains(J)) out.basis.push_back(J);
    return out;
}

LieAlgebraBasis algebra_by_name(const std::string& name) {
    std::string base = name;
    bool with_t = false;
    if (base.size() > 2 && base.substr(base.size() - 2) == "+t") {
        with_t = true;
        base = base.substr(0, base.size() - 2);
    }
    std::string family = base;
    long param = -1;
    auto colon = base.find(':');
    if (colon != std::string::npos) {
        family = base.substr(0, colon);
        const std::string ps = base.substr(colon + 1);
        require(!ps.empty(), "UnsupportedParams", "missing parameter in '" + name + "'");
        char* end = nullptr;
        param = std::strtol(ps.c_str(), &end, 10);
        require(end && *end == '\0' && param >= 0, "UnsupportedParams",
                "bad parameter in '" + name + "'");
    }

    LieAlgebraBasis h;
    if (family == "so" && param >= 0)
        h = so_n(static_cast<int>(param));
    else if (family == "zero" && param >= 0)
        h = zero_algebra(static_cast<int>(param));
    else if (family == "u" && param >= 1)
        h = u_m(static_cast<int>(param));
    else if (family == "su" && param >= 1)
        h = su_m(static_cast<int>(param));
    else if (family == "sp" && param >= 1)
        h = sp_m(static_cast<int>(param));
    else if (family == "spsp1" && param >= 1)
        h = sp_sp1_m(static_cast<int>(param));
    else if (family == "g2" && param < 0)
        h = g2_so7();
    else if (family == "spin7" && param < 0)
        h = spin7_so8();
    else if (family == "so3irrep" && param >= 1)
        h = so3_irrep(static_cast<int>(param));
    else
        fail("UnsupportedParams", "unknown algebra name '" + name + "'");

    if (with_t) h = adjoin_center(h, family);
    return h;
}

} // namespace wgeo
