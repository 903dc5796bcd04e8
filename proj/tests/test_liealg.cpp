#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wgeo/liealg.hpp"

using namespace wgeo;

namespace {

template <class F>
std::string thrown_kind(F&& f) {
    try {
        f();
    } catch (const error& e) {
        return e.kind();
    }
    return "";
}

bool is_scalar_matrix(const Mat& m, Rational* value = nullptr) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (i != j && !m.at(i, j).is_zero()) return false;
            if (i != j) continue;
            if (m.at(i, j) != m.at(0, 0)) return false;
        }
    if (value) *value = m.at(0, 0);
    return true;
}

// dimension of {M : [M, b] = 0 for all basis elements b}
int commutant_dim(const LieAlgebraBasis& h) {
    const int n = h.size;
    Mat sys(h.dim() * n * n, n * n, Rational(0));
    for (int e = 0; e < h.dim(); ++e) {
        const Mat& B = h.basis[e];
        // rows of [M, B] as linear functions of the entries of M
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int row = e * n * n + i * n + j;
                for (int k = 0; k < n; ++k) {
                    // (MB)_ij = M_ik B_kj ; (BM)_ij = B_ik M_kj
                    sys.at(row, i * n + k) += B.at(k, j);
                    sys.at(row, k * n + j) -= B.at(i, k);
                }
            }
    }
    return kernel(sys).dim();
}

SimElement triple(const Rational& a, const Mat& A, const Vec& X) { return SimElement{a, A, X}; }

} // namespace

TEST_CASE("bracket basics") {
    Mat a = e_skew(4, 1, 2) - e_skew(4, 3, 4);
    CHECK(bracket(a, a).is_zero());
    CHECK(bracket(e_skew(3, 1, 2), e_skew(3, 1, 3)) == -e_skew(3, 2, 3));
    CHECK(thrown_kind([] { bracket(Mat(2, 2, Rational(0)), Mat(3, 3, Rational(0))); }) ==
          "ShapeMismatch");
}

TEST_CASE("triple bracket matches the semidirect product rule") {
    // [(a,A,0),(0,0,X)] = (0,0,aX+AX)
    const int n = 3;
    Mat A = e_skew(n, 1, 2) + e_skew(n, 2, 3).scaled(Rational(2));
    Rational a(5, 2);
    Vec X = {Rational(1), Rational(-1), Rational(3)};
    Mat lhs = bracket(sim_matrix(triple(a, A, Vec(n, Rational(0)))),
                      sim_matrix(triple(Rational(0), Mat(n, n, Rational(0)), X)));
    Vec aXAX(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        aXAX[i] = a * X[i];
        for (int j = 0; j < n; ++j) aXAX[i] += A.at(i, j) * X[j];
    }
    CHECK(lhs == sim_matrix(triple(Rational(0), Mat(n, n, Rational(0)), aXAX)));
}

TEST_CASE("sim matrix layout and round trip") {
    const int n = 2;
    Mat A = e_skew(n, 1, 2).scaled(Rational(3));
    Vec X = {Rational(1, 2), Rational(-2)};
    SimElement e = triple(Rational(7), A, X);
    Mat m = sim_matrix(e);
    CHECK(m.at(0, 0) == Rational(7));
    CHECK(m.at(3, 3) == Rational(-7));
    CHECK(m.at(0, 1) == Rational(1, 2));
    CHECK(m.at(1, 3) == Rational(-1, 2));
    CHECK(is_skew_for(m, witt_form(n)));
    SimElement back = sim_split(m);
    CHECK(back.a == e.a);
    CHECK(back.A == e.A);
    CHECK(back.X == e.X);
}

TEST_CASE("catalog dimensions match the classical formulas") {
    CHECK(so_n(5).dim() == 10);
    CHECK(so_n(2).dim() == 1);
    CHECK(u_m(2).dim() == 4);
    CHECK(u_m(3).dim() == 9);
    CHECK(su_m(2).dim() == 3);
    CHECK(su_m(3).dim() == 8);
    CHECK(sp_m(1).dim() == 3);
    CHECK(sp_m(2).dim() == 10);
    CHECK(sp_sp1_m(2).dim() == 13);
    CHECK(g2_so7().dim() == 14);
    CHECK(spin7_so8().dim() == 21);
    for (int k = 1; k <= 4; ++k) CHECK(so3_irrep(k).dim() == 3);
    CHECK(zero_algebra(4).dim() == 0);
}

TEST_CASE("catalog algebras are independent, skew and bracket-closed") {
    for (const char* name : {"so:4", "u:2", "su:3", "sp:2", "spsp1:2", "g2", "spin7",
                             "so3irrep:1", "so3irrep:2", "so3irrep:3", "so3irrep:4"})
        algebra_by_name(name).validate();
}

TEST_CASE("partial generator sets close up to the full exceptional algebras") {
    auto g2 = g2_so7();
    std::vector<Mat> seeds = {g2.basis[0], g2.basis[3], g2.basis[4], g2.basis[5], g2.basis[6]};
    LieAlgebraBasis closed = generated_subalgebra(seeds, Form::euclidean);
    CHECK(closed.dim() == 14);
    CHECK(same_span(closed, g2));

    auto s7 = spin7_so8();
    std::vector<Mat> seeds7 = {s7.basis[13], s7.basis[14] - s7.basis[15], s7.basis[16],
                               s7.basis[17], s7.basis[19], s7.basis[20]};
    LieAlgebraBasis closed7 = generated_subalgebra(seeds7, Form::euclidean);
    CHECK(closed7.dim() == 21);
    CHECK(same_span(closed7, s7));

    // a single plane rotation generates an abelian line
    CHECK(generated_subalgebra({e_skew(4, 1, 2)}, Form::euclidean).dim() == 1);
}

TEST_CASE("complex and quaternionic structures") {
    Mat J = complex_structure(3);
    CHECK((J * J) == Mat::identity(6, Rational(-1), Rational(0)));
    for (const auto& b : u_m(3).basis) CHECK(bracket(J, b).is_zero());

    auto Q = quaternion_structures(2);
    for (const auto& Ji : Q) CHECK((Ji * Ji) == Mat::identity(8, Rational(-1), Rational(0)));
    CHECK(Q[2] == Q[0] * Q[1]);
    CHECK((Q[0] * Q[1] + Q[1] * Q[0]).is_zero());
    CHECK((Q[1] * Q[2] + Q[2] * Q[1]).is_zero());
    for (const auto& b : sp_m(2).basis)
        for (const auto& Ji : Q) CHECK(bracket(Ji, b).is_zero());
}

TEST_CASE("so(3) irreducible models have scalar Casimir and trivial commutant") {
    for (int k = 1; k <= 4; ++k) {
        CAPTURE(k);
        LieAlgebraBasis h = so3_irrep(k);
        CHECK(h.size == 2 * k + 1);
        Mat cas(h.size, h.size, Rational(0));
        for (const auto& b : h.basis) cas += b * b;
        Rational val;
        CHECK(is_scalar_matrix(cas, &val));
        CHECK(val < Rational(0));
        CHECK(commutant_dim(h) == 1);
    }
    CHECK(thrown_kind([] { so3_irrep(5); }) == "UnsupportedParams");
}

TEST_CASE("adjoined center") {
    CHECK(same_span(algebra_by_name("su:2+t"), u_m(2)));
    CHECK(algebra_by_name("sp:2+t").dim() == 11);
    CHECK(same_span(algebra_by_name("u:2+t"), u_m(2)));  // already inside
    algebra_by_name("sp:2+t").validate();
    CHECK(thrown_kind([] { algebra_by_name("so:4+t"); }) == "UnsupportedParams");
    CHECK(thrown_kind([] { algebra_by_name("g2+t"); }) == "UnsupportedParams");
    // sp(1) inside sp(m)+sp(1) centralizes nothing further to adjoin
    CHECK(thrown_kind([] { algebra_by_name("spsp1:2+t"); }) == "UnsupportedParams");
}

TEST_CASE("algebra names") {
    CHECK(algebra_by_name("so:7").dim() == 21);
    CHECK(algebra_by_name("zero:5").size == 5);
    CHECK(algebra_by_name("so3irrep:3").size == 7);
    CHECK(thrown_kind([] { algebra_by_name("e8"); }) == "UnsupportedParams");
    CHECK(thrown_kind([] { algebra_by_name("so:x"); }) == "UnsupportedParams");
    CHECK(thrown_kind([] { algebra_by_name("u:0"); }) == "UnsupportedParams");
    CHECK(thrown_kind([] { algebra_by_name("g2:3"); }) == "UnsupportedParams");
}

TEST_CASE("embedding dimension counts by type") {
    SimSubalgebraSpec t1{1, so_n(2), {}, 0, {}};
    CHECK(sim_embed(t1).dim() == 4);

    SimSubalgebraSpec t2{2, g2_so7(), {}, 0, {}};
    CHECK(sim_embed(t2).dim() == 21);

    // so(2) fixing the third axis inside so(3)
    LieAlgebraBasis so2in3{Form::euclidean, 3, {e_skew(3, 1, 2)}};
    SimSubalgebraSpec t4{4, so2in3, {}, 2, {Vec{Rational(1)}}};
    LieAlgebraBasis g4 = sim_embed(t4);
    CHECK(g4.dim() == 3);
    for (const auto& m : g4.basis) CHECK(sim_split(m).a.is_zero());
}

TEST_CASE("embedded types scale or annihilate the isotropic direction as expected") {
    auto has_scaling = [](const LieAlgebraBasis& g) {
        for (const auto& m : g.basis)
            if (!sim_split(m).a.is_zero()) return true;
        return false;
    };
    CHECK(has_scaling(sim_embed({1, so_n(3), {}, 0, {}})));
    CHECK_FALSE(has_scaling(sim_embed({2, so_n(3), {}, 0, {}})));
    SimSubalgebraSpec t3{3, so_n(2), {Rational(1)}, 0, {}};
    CHECK(has_scaling(sim_embed(t3)));
    LieAlgebraBasis so2in3{Form::euclidean, 3, {e_skew(3, 1, 2)}};
    CHECK_FALSE(has_scaling(sim_embed({4, so2in3, {}, 2, {Vec{Rational(1)}}})));
}

TEST_CASE("invalid embedding data is refused") {
    // phi on a semisimple algebra cannot avoid the derived algebra
    CHECK(thrown_kind([] {
              sim_embed({3, so_n(3), {Rational(1), Rational(0), Rational(0)}, 0, {}});
          }) == "InvalidSpec");
    CHECK(thrown_kind([] {
              sim_embed({3, so_n(2), {Rational(0)}, 0, {}});
          }) == "InvalidSpec");  // phi = 0
    // psi must be surjective
    LieAlgebraBasis so2in3{Form::euclidean, 3, {e_skew(3, 1, 2)}};
    CHECK(thrown_kind([&] {
              sim_embed({4, so2in3, {}, 2, {Vec{Rational(0)}}});
          }) == "InvalidSpec");
    // orthogonal part must fix the annihilated axes
    CHECK(thrown_kind([] {
              sim_embed({4, so_n(3), {}, 2,
                         {Vec{Rational(1)}, Vec{Rational(0)}, Vec{Rational(0)}}});
          }) == "InvalidSpec");
    CHECK(thrown_kind([] { sim_embed({5, so_n(2), {}, 0, {}}); }) == "InvalidSpec");
}

TEST_CASE("classification round-trips the embedding") {
    std::vector<LieAlgebraBasis> hs = {zero_algebra(2), so_n(2), so_n(3), u_m(2)};
    for (const auto& h : hs) {
        CAPTURE(h.size);
        for (int type = 1; type <= 4; ++type) {
            SimSubalgebraSpec spec;
            spec.type = type;
            spec.h = h;
            if (type == 3) {
                // a functional vanishing on [h,h]: supported on the center
                LieAlgebraBasis z = center(h);
                if (z.dim() == 0) continue;  // no valid phi for this h
                // use the pairing with a central element as the functional
                bool nonzero = false;
                spec.phi.assign(h.dim(), Rational(0));
                for (int i = 0; i < h.dim(); ++i) {
                    Rational acc(0);
                    for (int r = 0; r < h.size; ++r)
                        for (int s = 0; s < h.size; ++s)
                            acc += z.basis[0].at(r, s) * h.basis[i].at(r, s);
                    spec.phi[i] = acc;
                    nonzero = nonzero || !acc.is_zero();
                }
                if (!nonzero) continue;
            }
            if (type == 4) {
                if (h.dim() == 0 || center(h).dim() == 0) continue;
                // re-embed h into so(n+1) fixing the last axis
                LieAlgebraBasis wide{Form::euclidean, h.size + 1, {}};
                for (const auto& b : h.basis) {
                    Mat w(h.size + 1, h.size + 1, Rational(0));
                    for (int i = 0; i < h.size; ++i)
                        for (int j = 0; j < h.size; ++j) w.at(i, j) = b.at(i, j);
                    wide.basis.push_back(w);
                }
                spec.h = wide;
                spec.m = h.size;
                LieAlgebraBasis z = center(h);
                spec.psi.assign(wide.dim(), Vec{Rational(0)});
                bool nonzero = false;
                for (int i = 0; i < wide.dim(); ++i) {
                    Rational acc(0);
                    for (int r = 0; r < h.size; ++r)
                        for (int s = 0; s < h.size; ++s)
                            acc += z.basis[0].at(r, s) * h.basis[i].at(r, s);
                    spec.psi[i] = Vec{acc};
                    nonzero = nonzero || !acc.is_zero();
                }
                if (!nonzero) continue;
            }
            LieAlgebraBasis g = sim_embed(spec);
            SimSubalgebraSpec back = classify_sim_subalgebra(g);
            CHECK(back.type == type);
            CHECK(same_span(back.h, spec.h));
            if (type == 4) CHECK(back.m == spec.m);
            // re-embedding the recovered spec reproduces the same subalgebra
            CHECK(same_span(sim_embed(back), g));
        }
    }
}

TEST_CASE("pure translations classify as the semidirect type with trivial orthogonal part") {
    const int n = 2;
    std::vector<Mat> gens;
    for (int i = 0; i < n; ++i) {
        Vec X(n, Rational(0));
        X[i] = Rational(1);
        gens.push_back(sim_matrix(triple(Rational(0), Mat(n, n, Rational(0)), X)));
    }
    SimSubalgebraSpec spec = classify_sim_subalgebra({Form::lorentzian, n + 2, gens});
    CHECK(spec.type == 2);
    CHECK(spec.h.dim() == 0);
}

TEST_CASE("classification refusals") {
    // an element moving the isotropic line
    Mat bad(4, 4, Rational(0));
    bad.at(1, 0) = Rational(1);
    bad.at(3, 1) = Rational(-1);
    CHECK(is_skew_for(bad, witt_form(2)));
    CHECK(thrown_kind([&] {
              classify_sim_subalgebra({Form::lorentzian, 4, {bad}});
          }) == "NotInSimN");

    // rotation with no translation ideal at all
    Mat lone = sim_matrix(triple(Rational(0), e_skew(2, 1, 2), Vec(2, Rational(0))));
    CHECK(thrown_kind([&] {
              classify_sim_subalgebra({Form::lorentzian, 4, {lone}});
          }) == "NotWeaklyIrreducibleShape");

    // translations sitting on the wrong axis
    Vec X = {Rational(0), Rational(1)};
    Mat t2 = sim_matrix(triple(Rational(0), Mat(2, 2, Rational(0)), X));
    CHECK(thrown_kind([&] {
              classify_sim_subalgebra({Form::lorentzian, 4, {t2}});
          }) == "NotWeaklyIrreducibleShape");

    // scaling part without full translations
    Mat s = sim_matrix(triple(Rational(1), Mat(2, 2, Rational(0)), Vec(2, Rational(0))));
    CHECK(thrown_kind([&] {
              classify_sim_subalgebra({Form::lorentzian, 4, {s}});
          }) == "NotWeaklyIrreducibleShape");
}

TEST_CASE("derived algebra and center of catalog algebras") {
    CHECK(derived_algebra(so_n(3)).dim() == 3);   // semisimple
    CHECK(derived_algebra(u_m(2)).dim() == 3);    // su(2)
    CHECK(same_span(derived_algebra(u_m(2)), su_m(2)));
    CHECK(center(u_m(2)).dim() == 1);
    CHECK(center(so_n(2)).dim() == 1);
    CHECK(center(so_n(4)).dim() == 0);
    CHECK(center(g2_so7()).dim() == 0);
}
