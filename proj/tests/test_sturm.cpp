#include "msw/sturm.hpp"

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

TEST_CASE("sturm sylvester matrices: pinned displays") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    Matrix<Rationals> z(Q, 1, 1);

    SturmWord<Rationals> zz(0, {z, z});
    CHECK(sylvester_of_sturm(sp, zz).gram == mat(Q, {{0, 1}, {1, 0}}));
    CHECK(is_neutral(sylvester_of_sturm(sp, zz)));

    SturmWord<Rationals> single(0, {mat(Q, {{5}})});
    CHECK(sylvester_of_sturm(sp, single).gram == mat(Q, {{5}}));

    auto v = mat(Q, {{2}});
    auto w = m_word(sp, v);
    Matrix<Rationals> expect(Q, 3, 3);
    expect(0, 0) = Rat(2);
    expect(1, 1) = Rat(1, 2);
    expect(2, 2) = Rat(2);
    expect(0, 1) = expect(1, 0) = expect(1, 2) = expect(2, 1) = Rat(1);
    CHECK(sylvester_of_sturm(sp, w).gram == expect);

    CHECK_THROWS_AS(SturmWord<Rationals>(0, {mat(Q, {{0, 1}, {2, 0}})}), std::domain_error);
}

TEST_CASE("evaluation: identities and generator words") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 2);
    Matrix<Rationals> z(Q, 2, 2);
    CHECK(evaluate(sp, SturmWord<Rationals>(0, {z})).matrix == Matrix<Rationals>::identity(Q, 4));

    auto v = mat(Q, {{1, 1}, {1, 2}});
    CHECK(evaluate(sp, m_word(sp, v)).matrix == generator_m(sp, v).matrix);

    auto p = mat(Q, {{2, 0}, {0, 1}});
    auto q = mat(Q, {{1, 1}, {1, 3}});
    auto hword = concat(sp, m_word(sp, p.negated()), m_word(sp, q));
    CHECK(evaluate(sp, hword).matrix == generator_h(sp, inverse(p) * q).matrix);

    // concatenation is evaluated multiplicatively
    Rng rng(3);
    auto w1 = SturmWord<Rationals>(1, {random_symmetric(Q, 2, rng, 3)});
    auto w2 = SturmWord<Rationals>(1, {random_symmetric(Q, 2, rng, 3),
                                       random_symmetric(Q, 2, rng, 3)});
    CHECK(evaluate(sp, concat(sp, w1, w2)).matrix ==
          evaluate(sp, w1).matrix * evaluate(sp, w2).matrix);
    // inverse word evaluates to the inverse
    CHECK(evaluate(sp, concat(sp, w2, inverse_word(w2))).matrix ==
          Matrix<Rationals>::identity(Q, 4));
}

TEST_CASE("words and anchored paths are mutually inverse") {
    Rationals Q;
    SymplecticSpace<Rationals> sp1(Q, 1);
    SturmWord<Rationals> one_letter(0, {mat(Q, {{1}})});
    auto path = path_of_sturm(sp1, one_letter);
    REQUIRE(path.nodes.size() == 3);
    CHECK(path.nodes[0] == standard_L(sp1));
    CHECK(path.nodes[1] == standard_L_dual(sp1));
    CHECK(path.nodes[2] == graph_of(sp1, scalar_matrix(sp1, 1)));
    auto back = sturm_of_path(sp1, path);
    CHECK(back.start == 0);
    CHECK(back.letters == one_letter.letters);

    PrimeField F5(5);
    SymplecticSpace<PrimeField> sp(F5, 2);
    Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        int len = static_cast<int>(rng.int_in(1, 4));
        std::vector<Matrix<PrimeField>> letters;
        for (int k = 0; k < len; ++k) letters.push_back(random_symmetric(F5, 2, rng, 4));
        SturmWord<PrimeField> w(static_cast<int>(rng.next_below(2)), letters);
        auto back2 = sturm_of_path(sp, path_of_sturm(sp, w));
        CHECK(back2.start == w.start);
        CHECK(back2.letters == w.letters);
        // the word Sylvester matrix is the Sylvester matrix of the reversed path
        CHECK(isometric(sylvester_of_sturm(sp, w),
                        sylvester_matrix(sp, path_of_sturm(sp, w).reversed(sp))));
    }

    // unanchored start is rejected
    auto g1 = graph_of(sp1, scalar_matrix(sp1, 1));
    LagrangianPath<Rationals> unanchored(sp1, {g1, standard_L_dual(sp1), standard_L(sp1)});
    CHECK_THROWS_AS(sturm_of_path(sp1, unanchored), std::domain_error);
}

TEST_CASE("f functions: pinned relations") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    Matrix<Rationals> z(Q, 1, 1);
    CHECK(f00(sp, SturmWord<Rationals>(0, {z})).is_zero(Q));

    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        SturmWord<Rationals> w(0, {random_symmetric(Q, 1, rng, 5), random_symmetric(Q, 1, rng, 5),
                                   random_symmetric(Q, 1, rng, 5)});
        auto padded_letters = w.letters;
        padded_letters.insert(padded_letters.begin(), {z, z});
        CHECK(f00(sp, SturmWord<Rationals>(0, padded_letters)) == f00(sp, w));
    }
}

TEST_CASE("symmetric factorization: pinned solutions and postcondition") {
    Rationals Q;
    SymplecticSpace<Rationals> sp1(Q, 1);
    auto [p1, q1] = symmetric_factorization(sp1, mat(Q, {{7}}));
    CHECK(p1 == mat(Q, {{1}}));
    CHECK(q1 == mat(Q, {{7}}));

    SymplecticSpace<Rationals> sp(Q, 2);
    auto sym = mat(Q, {{1, 2}, {2, 5}});
    auto [p2, q2] = symmetric_factorization(sp, sym);
    CHECK(p2 == Matrix<Rationals>::identity(Q, 2));
    CHECK(q2 == sym);

    auto x = mat(Q, {{1, 1}, {0, 1}});
    auto [p3, q3] = symmetric_factorization(sp, x);
    CHECK(p3 == mat(Q, {{0, 1}, {1, 0}}));
    CHECK(q3 == mat(Q, {{0, 1}, {1, 1}}));
    CHECK(inverse(p3) * q3 == x);

    CHECK_THROWS_AS(symmetric_factorization(sp, mat(Q, {{1, 1}, {1, 1}})), std::domain_error);

    PrimeField F3(3);
    SymplecticSpace<PrimeField> sp3(F3, 2);
    Rng rng(13);
    for (int i = 0; i < 25; ++i) {
        auto m = random_invertible(F3, 2, rng, 2);
        auto [p, q] = symmetric_factorization(sp3, m);
        CHECK(p.is_symmetric());
        CHECK(q.is_symmetric());
        CHECK(inverse(p) * q == m);
    }
}

TEST_CASE("decompose: short words for generator shapes, postcondition in general") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 2);
    auto u = mat(Q, {{1, 2}, {2, -1}});
    auto wu = decompose(sp, generator_upper(sp, u));
    CHECK(wu.start == 1);
    REQUIRE(wu.letters.size() == 1);
    CHECK(wu.letters[0] == u);

    auto wl = decompose(sp, generator_lower(sp, u));
    CHECK(wl.start == 0);
    REQUIRE(wl.letters.size() == 1);
    CHECK(wl.letters[0] == u);

    auto q = mat(Q, {{2, 1}, {1, 1}});
    auto wm = decompose(sp, generator_m(sp, q));
    CHECK(wm.start == 0);
    REQUIRE(wm.letters.size() == 3);
    CHECK(wm.letters[0] == q);
    CHECK(wm.letters[1] == inverse(q).negated());
    CHECK(wm.letters[2] == q);

    PrimeField F5(5);
    SymplecticSpace<PrimeField> sp5(F5, 1);
    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        auto m = Matrix<PrimeField>::identity(F5, 2);
        for (int k = 0; k < 3; ++k) {
            auto s = random_symmetric(F5, 1, rng, 4);
            m = m * (rng.next_below(2) ? generator_lower(sp5, s).matrix
                                       : generator_upper(sp5, s).matrix);
        }
        SymplecticMap<PrimeField> target(sp5, m);
        CHECK(evaluate(sp5, decompose(sp5, target)).matrix == m);
    }
}

TEST_CASE("kernel words evaluate to the identity") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    Rng rng(19);
    SturmWord<Rationals> w(0, {random_symmetric(Q, 1, rng, 4), random_symmetric(Q, 1, rng, 4)});
    auto k = concat(sp, w, inverse_word(decompose(sp, evaluate(sp, w))));
    CHECK_NOTHROW(KernelWord<Rationals>(sp, k));
    CHECK_THROWS_AS(KernelWord<Rationals>(sp, w), std::domain_error);
    // f01 lands in I^2: even rank, trivial signed discriminant
    auto c = f01(sp, k);
    CHECK(c.rank_mod_2 == 0);
    CHECK(c.disc == Int(1));
}

TEST_CASE("mu cocycle: stabilizer vanishing, cocycle identity, triple-index link") {
    PrimeField F7(7);
    SymplecticSpace<PrimeField> sp(F7, 1);
    Rng rng(23);
    auto rand_symp = [&](int n) {
        auto m = Matrix<PrimeField>::identity(F7, 2);
        for (int k = 0; k < n; ++k) {
            auto s = random_symmetric(F7, 1, rng, 6);
            m = m * (rng.next_below(2) ? generator_lower(sp, s).matrix
                                       : generator_upper(sp, s).matrix);
        }
        return SymplecticMap<PrimeField>(sp, m);
    };
    for (int i = 0; i < 15; ++i) {
        auto x = rand_symp(2);
        // y stabilizes L: mu(x, y) = 0
        auto y = generator_upper(sp, random_symmetric(F7, 1, rng, 6));
        CHECK(mu_cocycle(sp, x, y).is_zero(F7));
        // cocycle identity mu(y,z) - mu(xy,z) + mu(x,yz) - mu(x,y) = 0
        auto yy = rand_symp(2), z = rand_symp(2);
        auto xy = SymplecticMap<PrimeField>(sp, x.matrix * yy.matrix);
        auto yz = SymplecticMap<PrimeField>(sp, yy.matrix * z.matrix);
        auto total = witt_add(F7, witt_add(F7, mu_cocycle(sp, yy, z),
                                           witt_neg(F7, mu_cocycle(sp, xy, z))),
                              witt_add(F7, mu_cocycle(sp, x, yz),
                                       witt_neg(F7, mu_cocycle(sp, x, yy))));
        CHECK(total.is_zero(F7));
        // the cocycle is minus the Maslov index of (x^-1 L, L, y L)
        auto L = standard_L(sp);
        auto l0 = act(sp, SymplecticMap<PrimeField>(sp, inverse(x.matrix)), L);
        auto l2 = act(sp, yy, L);
        CHECK(mu_cocycle(sp, x, yy) == witt_neg(F7, maslov_triple(sp, l0, L, l2)));
    }
}

TEST_CASE("phi: stabilizer values and closed forms") {
    Rationals Q;
    SymplecticSpace<Rationals> sp(Q, 1);
    auto pfister = [&](const Rat& d) {
        return mod_I2(witt_class(SymmetricForm<Rationals>::diagonal(Q, {Rat(1), -d})));
    };
    CHECK(phi(sp, generator_upper(sp, mat(Q, {{4}}))) == WittModI2<Rationals>{0, Int(1)});
    CHECK(phi(sp, generator_h(sp, mat(Q, {{2}}))) == pfister(Rat(2)));
    CHECK(phi(sp, generator_h(sp, mat(Q, {{2}}))) == WittModI2<Rationals>{0, Int(2)});

    // m(y): rank 3g mod 2, signed disc (-1)^{g(g-1)/2} det y
    auto got = phi(sp, generator_m(sp, mat(Q, {{3}})));
    CHECK(got == WittModI2<Rationals>{1, Int(3)});

    // closed forms agree with phi on the block shapes
    auto h2 = generator_h(sp, mat(Q, {{2}}));
    auto low = generator_lower(sp, mat(Q, {{5}}));
    SymplecticMap<Rationals> lower_block(sp, low.matrix * h2.matrix);  // (x 0; v tx^-1)
    auto closed = phi_closed_form(sp, lower_block);
    REQUIRE(closed.has_value());
    CHECK(*closed == phi(sp, lower_block));
    auto vx = mod_I2(witt_class(SymmetricForm<Rationals>(mat(Q, {{5}}))));
    CHECK(*closed == mod_I2_add(Q, pfister(Rat(2)), vx));

    auto m1 = generator_m(sp, mat(Q, {{1}}));
    SymplecticMap<Rationals> swapped(sp, h2.matrix * m1.matrix);  // (v x; -tx^-1 0) shape
    auto closed2 = phi_closed_form(sp, swapped);
    REQUIRE(closed2.has_value());
    CHECK(*closed2 == phi(sp, swapped));
    CHECK(*closed2 == mod_I2_add(Q, phi(sp, h2), phi(sp, m1)));

    // generic products fall outside the recognized patterns
    SymplecticMap<Rationals> generic(
        sp, generator_lower(sp, mat(Q, {{1}})).matrix * generator_upper(sp, mat(Q, {{1}})).matrix *
                generator_lower(sp, mat(Q, {{2}})).matrix);
    CHECK(!phi_closed_form(sp, generic).has_value());
}

TEST_CASE("discriminant of the m(v) word and the Levi-block property") {
    PrimeField F3(3);
    SymplecticSpace<PrimeField> sp(F3, 2);
    Rng rng(29);
    int done = 0;
    while (done < 20) {
        auto v = random_symmetric(F3, 2, rng, 2);
        if (F3.is_zero(det(v))) continue;
        auto s = sylvester_of_sturm(sp, m_word(sp, v));
        auto lam = det(v);  // g = 2: (-1)^{g(g-1)/2} = -1
        lam = F3.neg(lam);
        CHECK(signed_discriminant(s) == F3.square_class(lam));
        ++done;
    }
    // even-length word evaluating to h(a): disc = det a
    done = 0;
    while (done < 20) {
        auto p = random_symmetric(F3, 2, rng, 2);
        auto q = random_symmetric(F3, 2, rng, 2);
        if (F3.is_zero(det(p)) || F3.is_zero(det(q))) continue;
        auto w = retype(sp, concat(sp, m_word(sp, p.negated()), m_word(sp, q)), 0, 1);
        REQUIRE(w.size() % 2 == 0);
        auto a = inverse(p) * q;
        REQUIRE(evaluate(sp, w).matrix == generator_h(sp, a).matrix);
        CHECK(witt_class(sylvester_of_sturm(sp, w)).disc == F3.square_class(det(a)));
        ++done;
    }
}
