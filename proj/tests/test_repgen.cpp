#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toda/repgen.hpp"

#include <set>

using namespace toda;

namespace {

// Chevalley relations, triangularity, weight bookkeeping -- everything a
// correctly assembled MatrixRep must satisfy regardless of type.
void check_rep(const MatrixRep& rep, int fundamental_index /* 1-based, 0 = skip */) {
    auto a = cartan_matrix(rep.lie_type);
    int n = rep.lie_type.rank;
    int d = rep.dim;
    REQUIRE((int)rep.gen_lower.size() == n);
    REQUIRE((int)rep.weights.size() == d);
    CHECK(rep.hw_index == 0);

    for (int i = 0; i < n; i++) {
        const MatQ& e = rep.gen_upper[i];
        const MatQ& f = rep.gen_lower[i];
        const MatQ& h = rep.gen_cartan[i];

        CHECK(f == e.conj_transpose());

        // h is diagonal with the recorded weights, and traceless
        Rational tr(0);
        for (int r = 0; r < d; r++) {
            for (int c = 0; c < d; c++)
                if (r != c) CHECK(h.at(r, c).is_zero());
            CHECK(h.at(r, r) == GaussQ(rep.weights[r][i]));
            tr += rep.weights[r][i];
        }
        CHECK(tr == 0);

        // lowering operators strictly lower triangular; hw killed by raising
        for (int r = 0; r < d; r++)
            for (int c = r; c < d; c++) CHECK(f.at(r, c).is_zero());
        for (int r = 0; r < d; r++) CHECK(e.at(r, rep.hw_index).is_zero());

        // [e_i, f_j] = delta_ij h_i, [h_i, e_j] = a_ji e_j
        for (int j = 0; j < n; j++) {
            MatQ ef = comm(e, rep.gen_lower[j]);
            CHECK(ef == (i == j ? h : MatQ(d)));
            CHECK(comm(h, rep.gen_upper[j]) == rep.gen_upper[j].scaled(GaussQ(Rational(a[j][i]))));
            CHECK(comm(h, rep.gen_lower[j]) == rep.gen_lower[j].scaled(GaussQ(Rational(-a[j][i]))));
            CHECK(comm(h, rep.gen_cartan[j]).is_zero());
        }
    }

    // drops: nonnegative, zero exactly at hw, consistent with the weights
    std::set<RootCoords> seen;
    for (int v = 0; v < d; v++) {
        CHECK(seen.insert(rep.drops[v]).second);  // multiplicity-free weights here
        long h = 0;
        for (int k = 0; k < n; k++) {
            CHECK(rep.drops[v][k] >= 0);
            h += rep.drops[v][k];
        }
        CHECK((h == 0) == (v == rep.hw_index));
        for (int i = 0; i < n; i++) {
            Rational expect = rep.weights[rep.hw_index][i];
            for (int k = 0; k < n; k++) expect -= Rational(rep.drops[v][k] * a[k][i]);
            CHECK(rep.weights[v][i] == expect);
        }
    }

    if (fundamental_index > 0)
        for (int i = 0; i < n; i++)
            CHECK(rep.weights[rep.hw_index][i] == (i + 1 == fundamental_index ? 1 : 0));
}

MatQ antidiag_kappa(int d) {
    MatQ k(d);
    for (int i = 0; i < d; i++) k.at(i, d - 1 - i) = GaussQ(1);
    return k;
}

MatQ transpose(const MatQ& m) {
    MatQ t(m.dim());
    for (int r = 0; r < m.dim(); r++)
        for (int c = 0; c < m.dim(); c++) t.at(c, r) = m.at(r, c);
    return t;
}

void check_form(const MatrixRep& rep, const MatQ& form) {
    for (const auto* gens : {&rep.gen_lower, &rep.gen_upper, &rep.gen_cartan})
        for (const MatQ& x : *gens) CHECK((transpose(x) * form + form * x).is_zero());
}

}  // namespace

TEST_CASE("standard representations across the classical families") {
    check_rep(standard_rep({Family::A, 1}), 1);
    check_rep(standard_rep({Family::A, 3}), 1);
    check_rep(standard_rep({Family::B, 2}), 1);
    check_rep(standard_rep({Family::B, 3}), 1);
    check_rep(standard_rep({Family::C, 2}), 1);
    check_rep(standard_rep({Family::C, 3}), 1);
    check_rep(standard_rep({Family::D, 3}), 1);
    check_rep(standard_rep({Family::D, 4}), 1);
    check_rep(standard_rep({Family::D, 5}), 1);
    CHECK(standard_rep({Family::A, 3}).dim == 4);
    CHECK(standard_rep({Family::B, 3}).dim == 7);
    CHECK(standard_rep({Family::C, 3}).dim == 6);
    CHECK(standard_rep({Family::D, 4}).dim == 8);
}

TEST_CASE("orthogonal generators preserve the antidiagonal form") {
    check_form(standard_rep({Family::B, 2}), antidiag_kappa(5));
    check_form(standard_rep({Family::B, 3}), antidiag_kappa(7));
    check_form(standard_rep({Family::D, 4}), antidiag_kappa(8));
}

TEST_CASE("symplectic generators preserve the antidiagonal symplectic form") {
    for (int n : {2, 3}) {
        MatQ omega(2 * n);
        for (int i = 0; i < n; i++) {
            omega.at(i, 2 * n - 1 - i) = GaussQ(1);
            omega.at(2 * n - 1 - i, i) = GaussQ(-1);
        }
        check_form(standard_rep({Family::C, n}), omega);
    }
}

TEST_CASE("spin representations") {
    MatrixRep b2 = spin_rep({Family::B, 2}, SpinKind::spin);
    CHECK(b2.dim == 4);
    check_rep(b2, 2);

    MatrixRep b3 = spin_rep({Family::B, 3}, SpinKind::spin);
    CHECK(b3.dim == 8);
    check_rep(b3, 3);

    MatrixRep d4p = spin_rep({Family::D, 4}, SpinKind::half_plus);
    MatrixRep d4m = spin_rep({Family::D, 4}, SpinKind::half_minus);
    CHECK(d4p.dim == 8);
    CHECK(d4m.dim == 8);
    check_rep(d4p, 4);
    check_rep(d4m, 3);

    MatrixRep d3p = spin_rep({Family::D, 3}, SpinKind::half_plus);
    CHECK(d3p.dim == 4);
    check_rep(d3p, 3);
    check_rep(spin_rep({Family::D, 5}, SpinKind::half_minus), 4);
}

TEST_CASE("the 7-dimensional G2 representation") {
    MatrixRep g2 = g2_rep();
    CHECK(g2.dim == 7);
    check_rep(g2, 1);
}

TEST_CASE("nonsimple root vectors in A2 are the expected commutators") {
    MatrixRep rep = standard_rep({Family::A, 2});
    RootSystem rs = root_system({Family::A, 2});
    MatQ low = nonsimple_root_vector(rep, rs, {1, 1});
    CHECK(low == comm(rep.gen_lower[0], rep.gen_lower[1]));
    CHECK(low == MatQ::unit(3, 2, 0, GaussQ(-1)));  // [E21, E32] = -E31

    MatQ up = nonsimple_root_vector_upper(rep, rs, {1, 1});
    CHECK(up == comm(rep.gen_upper[0], rep.gen_upper[1]));
    CHECK(up == MatQ::unit(3, 0, 2));
}

TEST_CASE("nonsimple root vectors reject simple roots and non-roots") {
    MatrixRep rep = standard_rep({Family::A, 2});
    RootSystem rs = root_system({Family::A, 2});
    CHECK_THROWS(nonsimple_root_vector(rep, rs, {1, 0}));
    CHECK_THROWS(nonsimple_root_vector(rep, rs, {2, 1}));
    CHECK_THROWS(nonsimple_root_vector_upper(rep, rs, {0, 1}));
}

TEST_CASE("root vectors are ad-h eigenvectors with the right eigenvalue") {
    for (const auto& t : {LieType{Family::B, 2}, LieType{Family::D, 4}, LieType{Family::G, 2}}) {
        MatrixRep rep = t.family == Family::G ? g2_rep() : standard_rep(t);
        RootSystem rs = root_system(t);
        for (size_t k = t.rank; k < rs.positive_roots.size(); k++) {
            const RootCoords& alpha = rs.positive_roots[k];
            MatQ x = nonsimple_root_vector(rep, rs, alpha);
            CHECK_FALSE(x.is_zero());
            for (int i = 0; i < t.rank; i++) {
                long eig = 0;
                for (int j = 0; j < t.rank; j++) eig -= alpha[j] * rs.cartan[j][i];
                CHECK(comm(rep.gen_cartan[i], x) == x.scaled(GaussQ(Rational(eig))));
            }
            // raising and lowering sides are adjoint to each other
            CHECK_FALSE(nonsimple_root_vector_upper(rep, rs, alpha).is_zero());
        }
    }
}

TEST_CASE("B2 alpha1 + 2 alpha2 spot check") {
    MatrixRep rep = standard_rep({Family::B, 2});
    RootSystem rs = root_system({Family::B, 2});
    MatQ x = nonsimple_root_vector(rep, rs, {1, 2});
    CHECK_FALSE(x.is_zero());
    // eigenvalue of ad h_1 on e_{-(a1+2a2)} is -(a_11 + 2 a_21) = -(2 - 2) = 0
    CHECK(comm(rep.gen_cartan[0], x).is_zero());
    CHECK(comm(rep.gen_cartan[1], x) == x.scaled(GaussQ(Rational(-(rs.cartan[0][1] + 2 * rs.cartan[1][1])))));
}

TEST_CASE("highest coefficient strategy table") {
    for (int i = 1; i <= 3; i++) {
        CoeffStrategy s = highest_coeff_rep({Family::A, 3}, i);
        CHECK(s.kind == CoeffKind::minor);
        CHECK(s.minor_order == i);
        CHECK(s.rep.dim == 4);
    }
    CHECK(highest_coeff_rep({Family::C, 2}, 2).kind == CoeffKind::minor);

    CoeffStrategy b3 = highest_coeff_rep({Family::B, 3}, 3);
    CHECK(b3.kind == CoeffKind::rep);
    CHECK(b3.rep.dim == 8);
    CHECK(b3.rep.weights[b3.rep.hw_index] == std::vector<Rational>{0, 0, 1});

    CHECK(highest_coeff_rep({Family::D, 4}, 2).kind == CoeffKind::minor);
    CoeffStrategy d4m = highest_coeff_rep({Family::D, 4}, 3);
    CoeffStrategy d4p = highest_coeff_rep({Family::D, 4}, 4);
    CHECK(d4m.kind == CoeffKind::rep);
    CHECK(d4p.kind == CoeffKind::rep);
    CHECK(d4m.rep.weights[0] == std::vector<Rational>{0, 0, 1, 0});
    CHECK(d4p.rep.weights[0] == std::vector<Rational>{0, 0, 0, 1});

    for (int i = 1; i <= 2; i++) {
        CoeffStrategy g = highest_coeff_rep({Family::G, 2}, i);
        CHECK(g.kind == CoeffKind::minor);
        CHECK(g.minor_order == i);
        CHECK(g.rep.dim == 7);
    }
}

TEST_CASE("MatQ basics used throughout") {
    MatQ a = MatQ::unit(2, 1, 0, GaussQ(0, 1));  // i E_21
    MatQ ah = a.conj_transpose();
    CHECK(ah == MatQ::unit(2, 0, 1, GaussQ(0, -1)));
    CHECK((a * a).is_zero());
    CHECK(MatQ::identity(3) * MatQ::unit(3, 2, 1) == MatQ::unit(3, 2, 1));
}
