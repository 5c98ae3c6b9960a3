#include "msw/maslov.hpp"

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

template <class F>
LagrangianPath<F> random_anchored_path(const SymplecticSpace<F>& sp, Rng& rng, int len) {
    // alternate lower/upper translates; consecutive transversality is structural
    std::vector<Lagrangian<F>> nodes{standard_L(sp), standard_L_dual(sp)};
    auto m = Matrix<F>::identity(sp.field, 2 * sp.g);
    for (int k = 0; k < len; ++k) {
        auto q = random_symmetric(sp.field, sp.g, rng, 5);
        m = m * (k % 2 == 0 ? generator_lower(sp, q).matrix : generator_upper(sp, q).matrix);
        nodes.push_back(act(sp, SymplecticMap<F>(sp, m),
                            k % 2 == 0 ? standard_L(sp) : standard_L_dual(sp)));
    }
    return LagrangianPath<F>(sp, std::move(nodes));
}

}  // namespace

TEST_CASE("path construction enforces consecutive transversality") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    CHECK_NOTHROW(LagrangianPath<Rationals>(sp, {L, Ls, L}));
    CHECK_THROWS_AS(LagrangianPath<Rationals>(sp, {L, L}), std::domain_error);
    CHECK_THROWS_AS(LagrangianPath<Rationals>(sp, {L}), std::domain_error);
}

TEST_CASE("sylvester matrices of short paths") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    auto g1 = graph_of(sp, scalar_matrix(sp, 1));

    auto s0 = sylvester_matrix(sp, LagrangianPath<Rationals>(sp, {L, Ls, L}));
    CHECK(s0.gram == mat(Q, {{0}}));

    auto s1 = sylvester_matrix(sp, LagrangianPath<Rationals>(sp, {L, Ls}));
    CHECK(s1.support_dim() == 0);

    auto s2 = sylvester_matrix(sp, LagrangianPath<Rationals>(sp, {L, Ls, g1}));
    CHECK(s2.gram == mat(Q, {{-1}}));
}

TEST_CASE("nondegenerate iff endpoints transverse") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    auto both = nondegenerate_iff_transverse(sp, LagrangianPath<Rationals>(sp, {L, Ls, L}));
    CHECK(both == std::pair{false, false});
    auto open = nondegenerate_iff_transverse(sp, LagrangianPath<Rationals>(sp, {L, Ls}));
    CHECK(open == std::pair{true, true});

    PrimeField F5(5);
    SymplecticSpace<PrimeField> sp5(F5, 2);
    Rng rng(41);
    for (int i = 0; i < 60; ++i) {
        auto p = random_anchored_path(sp5, rng, 4);
        auto [nd, tv] = nondegenerate_iff_transverse(sp5, p);
        CHECK(nd == tv);
    }
}

TEST_CASE("transversality witness identity and truncation") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    auto g1 = graph_of(sp, scalar_matrix(sp, 1));
    auto w1 = transversality_witness(sp, LagrangianPath<Rationals>(sp, {L, Ls, g1}));
    CHECK(w1.identity_holds);
    CHECK(w1.truncation_invertible);

    Rng rng(43);
    for (int i = 0; i < 30; ++i) {
        auto p = random_anchored_path(sp, rng, 3);
        auto w = transversality_witness(sp, p);
        CHECK(w.identity_holds);
        CHECK(w.truncation_invertible);
    }
    CHECK_THROWS_AS(transversality_witness(sp, LagrangianPath<Rationals>(sp, {L, Ls})),
                    std::domain_error);
}

TEST_CASE("shortcut: boundary case, neutral split, random isometry") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    Rng rng(47);
    auto p = random_anchored_path(sp, rng, 3);
    // j = i + 1: the sub-path is trivial and the shortened path is p itself
    auto [sub, shortened] = shortcut(sp, p, 1, 2);
    CHECK(sub.length() == -0);
    CHECK(sub.nodes.size() == 2);
    CHECK(shortened.nodes.size() == p.nodes.size());
    CHECK_THROWS_AS(shortcut(sp, p, 0, 0), std::domain_error);

    // loop plus tail: S(L0...Ln L0 M) splits off a neutral block
    PrimeField F7(7);
    SymplecticSpace<PrimeField> sp7(F7, 1);
    auto L = standard_L(sp7), Ls = standard_L_dual(sp7);
    auto g1 = graph_of(sp7, scalar_matrix(sp7, 1));
    LagrangianPath<PrimeField> loop_tail(sp7, {L, Ls, g1, Ls, L, Ls});
    auto [loop_part, tail_part] = shortcut(sp7, loop_tail, 0, 3);
    auto whole = sylvester_matrix(sp7, loop_tail);
    auto split = sylvester_matrix(sp7, loop_part).orthogonal_sum(sylvester_matrix(sp7, tail_part));
    CHECK(isometric(whole, split));
    CHECK(witt_class(sylvester_matrix(sp7, tail_part)).is_zero(F7));

    SymplecticSpace<PrimeField> sp72(F7, 2);
    int done = 0;
    while (done < 25) {
        auto path = random_anchored_path(sp72, rng, static_cast<int>(rng.int_in(2, 4)));
        int top = path.length() + 1;
        bool tested = false;
        for (int i = 0; i <= top && !tested; ++i)
            for (int j = i + 2; j <= top && !tested; ++j) {
                if (!transverse(sp72, path.nodes[i], path.nodes[j])) continue;
                auto [s1, s2] = shortcut(sp72, path, i, j);
                CHECK(isometric(sylvester_matrix(sp72, path),
                                sylvester_matrix(sp72, s1).orthogonal_sum(sylvester_matrix(sp72, s2))));
                tested = true;
            }
        if (tested) ++done;
    }
}

TEST_CASE("maslov index of paths and loops") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    LagrangianPath<Rationals> loop(sp, {L, Ls, L});
    CHECK(maslov_of_loop(sp, loop).is_zero(Q));
    CHECK_THROWS_AS(maslov_of_loop(sp, LagrangianPath<Rationals>(sp, {L, Ls})), std::domain_error);

    Rng rng(53);
    for (int i = 0; i < 20; ++i) {
        auto alpha = random_anchored_path(sp, rng, 2);
        // inverse path negates the index
        CHECK(maslov_of_path(sp, alpha.reversed(sp)) ==
              witt_neg(Q, maslov_of_path(sp, alpha)));
        // concatenating an interior loop adds its index
        auto mid = alpha.nodes[1];
        auto detour = common_transverse(sp, {mid}, 77 + i);
        LagrangianPath<Rationals> omega(sp, {mid, detour, mid});
        LagrangianPath<Rationals> first(sp, {alpha.nodes[0], alpha.nodes[1]});
        std::vector<Lagrangian<Rationals>> rest_nodes(alpha.nodes.begin() + 1, alpha.nodes.end());
        LagrangianPath<Rationals> rest(sp, rest_nodes);
        auto spliced = first.concat(sp, omega).concat(sp, rest);
        CHECK(maslov_of_path(sp, spliced) ==
              witt_add(Q, maslov_of_loop(sp, omega), maslov_of_path(sp, alpha)));
    }
}

TEST_CASE("maslov triple: pinned g=1 example against the block formula") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    auto g1 = graph_of(sp, scalar_matrix(sp, 1));
    auto lp = common_transverse(sp, {L, Ls, g1}, 0);
    // independent route: the diagonal of the three affine differences
    auto d02 = affine_diff(sp, lp, L, g1).gram(0, 0);
    auto d01 = affine_diff(sp, lp, L, Ls).gram(0, 0);
    auto d12 = affine_diff(sp, lp, Ls, g1).gram(0, 0);
    auto expected =
        witt_class(SymmetricForm<Rationals>::diagonal(Q, {d02, Q.neg(d01), Q.neg(d12)}));
    CHECK(maslov_triple(sp, L, Ls, g1, 0) == expected);

    // degenerate triples vanish; a transposition negates
    CHECK(maslov_triple(sp, L, L, g1).is_zero(Q));
    CHECK(maslov_triple(sp, Ls, L, g1) == witt_neg(Q, maslov_triple(sp, L, Ls, g1)));
}

TEST_CASE("kashiwara ternary form") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto L = standard_L(sp), Ls = standard_L_dual(sp);
    auto g1 = graph_of(sp, scalar_matrix(sp, 1));
    CHECK(kashiwara_form(sp, L, L, L).gram.is_zero());

    auto k = kashiwara_form(sp, L, Ls, g1);
    Matrix<Rationals> expected(Q, 3, 3);
    expected(0, 1) = Rat(-1, 2);
    expected(1, 0) = Rat(-1, 2);
    expected(1, 2) = Rat(1, 2);
    expected(2, 1) = Rat(1, 2);
    expected(0, 2) = Rat(1, 2);
    expected(2, 0) = Rat(1, 2);
    CHECK(k.gram == expected);
    auto cls = witt_class(k);
    CHECK(cls.rank_mod_2 == 1);
    CHECK(cls.signature == 1);
    CHECK(is_nondegenerate(k));

    // pairwise transverse samples stay nondegenerate
    Rng rng(59);
    int done = 0;
    while (done < 20) {
        auto a = graph_of(sp, random_symmetric(Q, 1, rng, 6));
        auto b = graph_of(sp, random_symmetric(Q, 1, rng, 6));
        if (!transverse(sp, a, b) || !transverse(sp, a, Ls) || !transverse(sp, b, Ls)) continue;
        CHECK(is_nondegenerate(kashiwara_form(sp, a, Ls, b)));
        ++done;
    }
}

TEST_CASE("split path evaluation agrees with direct diagonalization") {
    Rng rng(61);
    for (std::int64_t p : {3, 7}) {
        PrimeField K(p);
        SymplecticSpace<PrimeField> sp(K, 2);
        for (int i = 0; i < 30; ++i) {
            auto path = random_anchored_path(sp, rng, static_cast<int>(rng.int_in(1, 6)));
            CHECK(witt_of_sylvester_path(sp, path.nodes) ==
                  witt_class(sylvester_matrix(sp, path)));
        }
    }
    Rationals Q;
    SymplecticSpace<Rationals> spq(Q, 2);
    for (int i = 0; i < 20; ++i) {
        auto path = random_anchored_path(spq, rng, static_cast<int>(rng.int_in(1, 5)));
        CHECK(witt_of_sylvester_path(spq, path.nodes) == witt_class(sylvester_matrix(spq, path)));
    }
}

TEST_CASE("normalizer sends a transverse pair to the standard pair") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 2);
    Rng rng(67);
    for (int i = 0; i < 20; ++i) {
        auto path = random_anchored_path(sp, rng, 2);
        auto a = path.nodes[1], b = path.nodes[2];
        auto phi = normalizer(sp, a, b);
        CHECK(act(sp, phi, a) == standard_L(sp));
        CHECK(act(sp, phi, b) == standard_L_dual(sp));
    }
}
