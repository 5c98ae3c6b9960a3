#include "msw/symplectic.hpp"

#include <catch_amalgamated.hpp>

using namespace msw;

namespace {

template <class F>
Matrix<F> mat(const F& field, std::vector<std::vector<std::int64_t>> rows) {
    Matrix<F> m(field, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = field.from_int(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("lagrangians, canonical form, transversality") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    CHECK(transverse(sp, L, Ls));
    CHECK(!transverse(sp, L, L));
    auto diag = Lagrangian<Rationals>(sp, mat(Q, {{1}, {1}}));
    CHECK(transverse(sp, L, diag));
    // canonical form: any basis of the same span compares equal bit-exactly
    auto diag2 = Lagrangian<Rationals>(sp, mat(Q, {{5}, {5}}));
    CHECK(diag == diag2);
    CHECK_THROWS_AS(Lagrangian<Rationals>(sp, mat(Q, {{1}, {0}, {0}})), std::domain_error);

    SymplecticSpace<Rationals> sp2(Q, 2);
    // not isotropic: omega(e1, eps1) != 0
    CHECK_THROWS_AS(Lagrangian<Rationals>(sp2, mat(Q, {{1, 0}, {0, 0}, {0, 1}, {0, 0}})),
                    std::domain_error);
    CHECK_THROWS_AS(SymplecticSpace<Rationals>(Q, 0), std::domain_error);
}

TEST_CASE("beta: pinned matrix, antisymmetry, kernel = intersection") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    CHECK(beta(sp, L, Ls) == mat(Q, {{-1}}));
    CHECK(beta(sp, L, L).is_zero());
    CHECK(try_inverse(beta(sp, L, Ls)).has_value());

    Rng rng(7);
    PrimeField F5(5);
    SymplecticSpace<PrimeField> sp5(F5, 2);
    for (int i = 0; i < 60; ++i) {
        auto w1 = random_symmetric(F5, 2, rng, 4), w2 = random_symmetric(F5, 2, rng, 4);
        auto A = act(sp5, generator_lower(sp5, w1), standard_L(sp5));
        auto B = act(sp5, generator_upper(sp5, w2), standard_L_dual(sp5));
        CHECK(beta(sp5, A, B) == beta(sp5, B, A).transpose().negated());
        CHECK(try_inverse(beta(sp5, A, B)).has_value() == transverse(sp5, A, B));
    }
}

TEST_CASE("affine differences follow the fixed sign convention") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 2);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    auto q = mat(Q, {{1, 2}, {2, -3}});
    // lower(q) L is the translation of L along -q
    CHECK(affine_diff(sp, Ls, L, graph_of(sp, q)).gram == q.negated());
    // upper(p) L* is the translation of L* along +p
    auto upperL = act(sp, generator_upper(sp, q), Ls);
    CHECK(affine_diff(sp, L, Ls, upperL).gram == q);
    CHECK(affine_diff(sp, Ls, L, L).gram.is_zero());

    SymplecticSpace<Rationals> sp1(Q, 1);
    auto g1 = graph_of(sp1, mat(Q, {{1}}));
    CHECK(affine_diff(sp1, standard_L_dual(sp1), standard_L(sp1), g1).gram == mat(Q, {{-1}}));
    CHECK_THROWS_AS(affine_diff(sp1, standard_L(sp1), standard_L(sp1), g1), std::domain_error);
}

TEST_CASE("projections along a transverse pair") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    auto X = Lagrangian<Rationals>(sp, mat(Q, {{1}, {1}}));
    auto [p1, p2] = project_along(sp, X, L, Ls);
    CHECK(p1 == mat(Q, {{1}}));
    CHECK(p2 == mat(Q, {{1}}));
    CHECK(L.basis * p1 + Ls.basis * p2 == X.basis);

    auto [q1, q2] = project_along(sp, L, L, Ls);
    CHECK(q1 == Matrix<Rationals>::identity(Q, 1));
    CHECK(q2.is_zero());
    CHECK_THROWS_AS(project_along(sp, X, L, L), std::domain_error);
}

TEST_CASE("fundamental relation on random configurations") {
    PrimeField F7(7);
    SymplecticSpace<PrimeField> sp(F7, 2);
    Rng rng(13);
    int done = 0;
    while (done < 60) {
        auto l1 = act(sp, generator_lower(sp, random_symmetric(F7, 2, rng, 6)), standard_L(sp));
        auto l2 = act(sp, generator_upper(sp, random_symmetric(F7, 2, rng, 6)), standard_L_dual(sp));
        auto l3 = act(sp, generator_lower(sp, random_symmetric(F7, 2, rng, 6)), standard_L(sp));
        if (!transverse(sp, l1, l2) || !transverse(sp, l2, l3)) continue;
        auto x = act(sp, generator_upper(sp, random_symmetric(F7, 2, rng, 6)), standard_L_dual(sp));
        auto lhs = inverse(beta(sp, l2, l1)).negated() * beta(sp, x, l1) +
                   affine_diff(sp, l2, l1, l3).gram * beta(sp, x, l2) +
                   inverse(beta(sp, l2, l3)) * beta(sp, x, l3);
        CHECK(lhs.is_zero());
        ++done;
    }
}

TEST_CASE("generators: shapes, symplecticity, m and h relations") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    CHECK(generator_upper(sp, mat(Q, {{0}})).matrix == Matrix<Rationals>::identity(Q, 2));
    CHECK(generator_m(sp, mat(Q, {{1}})).matrix == mat(Q, {{0, -1}, {1, 0}}));

    SymplecticSpace<Rationals> sp2(Q, 2);
    auto p = mat(Q, {{2, 1}, {1, 1}});
    auto q = mat(Q, {{1, 0}, {0, 3}});
    CHECK(is_symplectic(sp2, generator_m(sp2, p).matrix));
    CHECK(generator_m(sp2, p.negated()).matrix * generator_m(sp2, q).matrix ==
          generator_h(sp2, inverse(p) * q).matrix);
    auto qi = inverse(q);
    CHECK(generator_m(sp2, q).matrix ==
          generator_lower(sp2, q).matrix * generator_upper(sp2, qi.negated()).matrix *
              generator_lower(sp2, q).matrix);

    CHECK_THROWS_AS(generator_upper(sp2, mat(Q, {{0, 1}, {2, 0}})), std::domain_error);
    CHECK_THROWS_AS(generator_m(sp2, mat(Q, {{0, 0}, {0, 1}})), std::domain_error);
    CHECK_THROWS_AS(generator_h(sp2, mat(Q, {{1, 0}, {2, 0}})), std::domain_error);
    CHECK_THROWS_AS(SymplecticMap<Rationals>(sp2, mat(Q, {{1, 0, 0, 0}, {0, 1, 0, 0},
                                                          {0, 0, 2, 0}, {0, 0, 0, 1}})),
                    std::domain_error);
}

TEST_CASE("action: identity, graphs, naturality of beta") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 2);
    auto L = standard_L(sp);
    SymplecticMap<Rationals> id(sp, Matrix<Rationals>::identity(Q, 4));
    CHECK(act(sp, id, L) == L);
    auto q = mat(Q, {{1, 2}, {2, 0}});
    auto g = act(sp, generator_lower(sp, q), L);
    Matrix<Rationals> expected(Q, 4, 2);
    expected.set_block(0, 0, Matrix<Rationals>::identity(Q, 2));
    expected.set_block(2, 0, q);
    CHECK(g.basis == expected);
}

TEST_CASE("common transverse: ladder order reproduces the pinned examples") {
    PrimeField F3(3);
    SymplecticSpace<PrimeField> sp3(F3, 1);
    auto L = standard_L(sp3), Ls = standard_L_dual(sp3);
    auto g1 = graph_of(sp3, scalar_matrix(sp3, 1));
    auto found = common_transverse(sp3, {L, Ls, g1});
    CHECK(found == graph_of(sp3, scalar_matrix(sp3, 2)));

    Rationals Q;
    SymplecticSpace<Rationals> spq(Q, 1);
    auto c = common_transverse(
        spq, {graph_of(spq, scalar_matrix(spq, 0)), graph_of(spq, scalar_matrix(spq, 1)),
              graph_of(spq, scalar_matrix(spq, 2))});
    CHECK(c == graph_of(spq, scalar_matrix(spq, 3)));

    auto only = common_transverse(spq, {standard_L(spq)});
    CHECK(transverse(spq, only, standard_L(spq)));

    // every Lagrangian over F_3, g=1: no common transverse can exist, and the
    // failure is reported distinctly for a list of more than three inputs
    std::vector<Lagrangian<PrimeField>> all{L, Ls, g1, graph_of(sp3, scalar_matrix(sp3, 2))};
    CHECK_THROWS_AS(common_transverse(sp3, all), std::runtime_error);
}
