#pragma once

// Words in the free product S_L * S_{L*} as Sturm sequences: their Sylvester
// matrices, evaluation to Sp_2g, the word<->path bijection, the four functions
// f_mn, symmetric factorization, decomposition of symplectic matrices into
// generator words, the cocycle mu, and the trivialization Phi.
//
// A letter at even index is a lower elementary block (fixes L*, q: L -> L*),
// at odd index an upper one (fixes L, q: L* -> L). Evaluation multiplies left
// to right. The Sylvester matrix of a type (m,n) word has diagonal blocks
// (-1)^j q_j and identity off-diagonal blocks.

#include "msw/maslov.hpp"

#include <algorithm>

#include <optional>
#include <vector>

namespace msw {

template <class F>
struct SturmWord {
    int start = 0;                  // index parity of the first letter (0 or 1)
    std::vector<Matrix<F>> letters; // symmetric g x g blocks; may be empty

    SturmWord(int m, std::vector<Matrix<F>> ls) : start(((m % 2) + 2) % 2), letters(std::move(ls)) {
        for (auto& q : letters)
            if (!q.is_symmetric()) throw std::domain_error("SturmWord: letter not symmetric");
    }
    static SturmWord empty_word() { return SturmWord(0, {}); }
    int size() const { return static_cast<int>(letters.size()); }
    int end_index() const { return start + size() - 1; }  // meaningful when nonempty
};

template <class F>
SymplecticMap<F> evaluate(const SymplecticSpace<F>& sp, const SturmWord<F>& w) {
    auto m = Matrix<F>::identity(sp.field, 2 * sp.g);
    for (int k = 0; k < w.size(); ++k) {
        int j = w.start + k;
        m = m * (j % 2 == 0 ? generator_lower(sp, w.letters[k]).matrix
                            : generator_upper(sp, w.letters[k]).matrix);
    }
    return SymplecticMap<F>(sp, std::move(m));
}

template <class F>
SymmetricForm<F> sylvester_of_sturm(const SymplecticSpace<F>& sp, const SturmWord<F>& w) {
    const int g = sp.g, n = w.size();
    Matrix<F> s(sp.field, n * g, n * g);
    for (int k = 0; k < n; ++k) {
        int j = w.start + k;
        s.set_block(k * g, k * g, j % 2 == 0 ? w.letters[k] : w.letters[k].negated());
    }
    auto id = Matrix<F>::identity(sp.field, g);
    for (int k = 0; k + 1 < n; ++k) {
        s.set_block((k + 1) * g, k * g, id);
        s.set_block(k * g, (k + 1) * g, id);
    }
    return SymmetricForm<F>(std::move(s));
}

// Concatenation in the free product. A zero letter of the opposite parity is
// inserted when the boundary parities collide, which changes neither the
// evaluation nor any f value (sub-word collapse invariance).
template <class F>
SturmWord<F> concat(const SymplecticSpace<F>& sp, const SturmWord<F>& a, const SturmWord<F>& b) {
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    auto letters = a.letters;
    if ((a.end_index() + 1) % 2 != b.start % 2) letters.push_back(Matrix<F>(sp.field, sp.g, sp.g));
    letters.insert(letters.end(), b.letters.begin(), b.letters.end());
    return SturmWord<F>(a.start, std::move(letters));
}

template <class F>
SturmWord<F> inverse_word(const SturmWord<F>& w) {
    if (w.size() == 0) return w;
    std::vector<Matrix<F>> letters;
    letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) letters.push_back(it->negated());
    return SturmWord<F>(w.end_index(), std::move(letters));
}

// Re-type w to start parity m and end parity n by prepending/appending zero
// letters only.
template <class F>
SturmWord<F> retype(const SymplecticSpace<F>& sp, const SturmWord<F>& w, int m, int n) {
    Matrix<F> zero(sp.field, sp.g, sp.g);
    auto letters = w.letters;
    int start = w.start;
    if (letters.empty()) {
        letters.push_back(zero);
        start = m;
    }
    if (start % 2 != m % 2) {
        letters.insert(letters.begin(), zero);
        start = m;
    } else {
        start = m;
    }
    if ((start + static_cast<int>(letters.size()) - 1) % 2 != n % 2) letters.push_back(zero);
    return SturmWord<F>(m, std::move(letters));
}

// f value of the padded representative. The word Sylvester matrix is
// congruent to the Sylvester matrix of the reversed associated path (unit
// tests pin this), so the class is evaluated through the split path route,
// which keeps factorizations at piece scale even for long words.
template <class F>
WittClass<F> f_mn(const SymplecticSpace<F>& sp, const SturmWord<F>& w, int m, int n) {
    auto padded = retype(sp, w, m, n);
    auto nodes = path_of_sturm(sp, padded).nodes;
    std::reverse(nodes.begin(), nodes.end());
    return witt_of_sylvester_path(sp, std::move(nodes));
}

template <class F>
WittClass<F> f00(const SymplecticSpace<F>& sp, const SturmWord<F>& w) { return f_mn(sp, w, 0, 0); }
template <class F>
WittClass<F> f01(const SymplecticSpace<F>& sp, const SturmWord<F>& w) { return f_mn(sp, w, 0, 1); }
template <class F>
WittClass<F> f10(const SymplecticSpace<F>& sp, const SturmWord<F>& w) { return f_mn(sp, w, 1, 0); }
template <class F>
WittClass<F> f11(const SymplecticSpace<F>& sp, const SturmWord<F>& w) { return f_mn(sp, w, 1, 1); }

template <class F>
struct KernelWord {
    SturmWord<F> word;
    KernelWord(const SymplecticSpace<F>& sp, SturmWord<F> w) : word(std::move(w)) {
        if (!(evaluate(sp, word).matrix == Matrix<F>::identity(sp.field, 2 * sp.g)))
            throw std::domain_error("KernelWord: word does not evaluate to the identity");
    }
};

// L_j: the standard Lagrangian L for even j, L* for odd j.
template <class F>
Lagrangian<F> standard_L_of_parity(const SymplecticSpace<F>& sp, int j) {
    return ((j % 2) + 2) % 2 == 0 ? standard_L(sp) : standard_L_dual(sp);
}

// The Lagrangian path of a type (m,n) word:
//   L_m, L_{m-1}, E(q_m)L_m, E(q_m q_{m+1})L_{m+1}, ..., E(w)L_n.
template <class F>
LagrangianPath<F> path_of_sturm(const SymplecticSpace<F>& sp, const SturmWord<F>& w) {
    std::vector<Lagrangian<F>> nodes{standard_L_of_parity(sp, w.start),
                                     standard_L_of_parity(sp, w.start - 1)};
    auto m = Matrix<F>::identity(sp.field, 2 * sp.g);
    for (int k = 0; k < w.size(); ++k) {
        int j = w.start + k;
        m = m * (j % 2 == 0 ? generator_lower(sp, w.letters[k]).matrix
                            : generator_upper(sp, w.letters[k]).matrix);
        nodes.push_back(act(sp, SymplecticMap<F>(sp, m), standard_L_of_parity(sp, j)));
    }
    return LagrangianPath<F>(sp, std::move(nodes));
}

// Inverse of path_of_sturm: peel the unique letters off an anchored path whose
// first two nodes are (L_m, L_{m-1}).
template <class F>
SturmWord<F> sturm_of_path(const SymplecticSpace<F>& sp, const LagrangianPath<F>& path) {
    auto L0 = standard_L(sp), L1 = standard_L_dual(sp);
    int m;
    if (path.nodes[0] == L0 && path.nodes[1] == L1) m = 0;
    else if (path.nodes[0] == L1 && path.nodes[1] == L0) m = 1;
    else throw std::domain_error("sturm_of_path: path is not anchored at (L_m, L_{m-1})");

    std::vector<Matrix<F>> letters;
    auto prefix_inv = Matrix<F>::identity(sp.field, 2 * sp.g);
    for (size_t k = 2; k < path.nodes.size(); ++k) {
        int j = m + static_cast<int>(k) - 2;
        auto moved = act(sp, SymplecticMap<F>(sp, prefix_inv), path.nodes[k]);
        const auto& b = moved.basis;
        auto top = b.block(0, 0, sp.g, sp.g);
        auto bot = b.block(sp.g, 0, sp.g, sp.g);
        Matrix<F> q(sp.field, sp.g, sp.g);
        if (j % 2 == 0) {
            q = bot * inverse(top);  // span [I; q]
        } else {
            q = top * inverse(bot);  // span [q; I]
        }
        if (!q.is_symmetric()) throw std::logic_error("sturm_of_path: recovered letter not symmetric");
        letters.push_back(q);
        prefix_inv = (j % 2 == 0 ? generator_lower(sp, q.negated()).matrix
                                 : generator_upper(sp, q.negated()).matrix) *
                     prefix_inv;
    }
    return SturmWord<F>(m, std::move(letters));
}

// x = p^{-1} q with p, q symmetric invertible: solve x^T T = T x over
// symmetric T, pick an invertible point of the solution space by a
// deterministic sweep, set p = T, q = T x. Self-verifying.
template <class F>
std::pair<Matrix<F>, Matrix<F>> symmetric_factorization(const SymplecticSpace<F>& sp,
                                                        const Matrix<F>& x) {
    const F& K = sp.field;
    const int g = x.rows();
    if (x.cols() != g || K.is_zero(det(x))) throw std::domain_error("symmetric_factorization: need invertible x");
    if (x.is_symmetric()) return {Matrix<F>::identity(K, g), x};
    std::vector<std::pair<int, int>> unknowns;
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) unknowns.emplace_back(i, j);
    const int u = static_cast<int>(unknowns.size());
    auto xt = x.transpose();
    Matrix<F> sys(K, g * g, u);
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b)
            for (int t = 0; t < u; ++t) {
                auto [i, j] = unknowns[t];
                auto coeff = K.zero();
                auto hits = [&](int r, int c) { return std::min(r, c) == i && std::max(r, c) == j; };
                for (int k = 0; k < g; ++k) {
                    if (hits(k, b)) coeff = K.add(coeff, xt(a, k));
                    if (hits(a, k)) coeff = K.sub(coeff, x(k, b));
                }
                sys(a * g + b, t) = coeff;
            }
    auto basis = rref(sys).kernel;
    auto build = [&](const std::vector<typename F::Elem>& combo) {
        Matrix<F> T(K, g, g);
        for (int t = 0; t < u; ++t) {
            auto acc = K.zero();
            for (size_t bi = 0; bi < basis.size(); ++bi)
                acc = K.add(acc, K.mul(combo[bi], basis[bi][t]));
            auto [i, j] = unknowns[t];
            T(i, j) = acc;
            T(j, i) = acc;
        }
        return T;
    };
    std::optional<Matrix<F>> found;
    std::vector<typename F::Elem> combo(basis.size(), K.zero());
    for (size_t bi = 0; bi < basis.size() && !found; ++bi) {
        combo.assign(basis.size(), K.zero());
        combo[bi] = K.one();
        auto T = build(combo);
        if (!K.is_zero(det(T))) found = T;
    }
    if (!found) {
        Rng rng(0x73796d66616374ULL);
        for (int attempt = 0; attempt < 20000 && !found; ++attempt) {
            for (auto& c : combo) c = random_element(K, rng, 9);
            auto T = build(combo);
            if (!K.is_zero(det(T))) found = T;
        }
    }
    if (!found) throw std::logic_error("symmetric_factorization: no invertible solution found");
    auto p = *found;
    auto q = p * x;
    if (!q.is_symmetric() || !(inverse(p) * q == x))
        throw std::logic_error("symmetric_factorization: postcondition failed");
    return {p, q};
}

// Word (q, -q^{-1}, q) of type (0,2) evaluating to m(q).
template <class F>
SturmWord<F> m_word(const SymplecticSpace<F>& sp, const Matrix<F>& q) {
    auto qi = inverse(q);
    return SturmWord<F>(0, {q, qi.negated(), q});
}

// Decompose a symplectic matrix into a generator word. Elementary and m(q)
// shapes map to their short words; otherwise reduce to an invertible
// lower-left block by a searched lower pre-factor and use
//   M = upper(A C^{-1}) m(I) h(C) upper(C^{-1} D),  h(C) = m(-p) m(q).
// The postcondition evaluate(word) == M is checked on every call.
template <class F>
SturmWord<F> decompose(const SymplecticSpace<F>& sp, const SymplecticMap<F>& mm) {
    const F& K = sp.field;
    const int g = sp.g;
    const auto& m = mm.matrix;
    auto A = m.block(0, 0, g, g), B = m.block(0, g, g, g);
    auto C = m.block(g, 0, g, g), D = m.block(g, g, g, g);
    auto id = Matrix<F>::identity(K, g);

    auto finish = [&](SturmWord<F> w) {
        if (!(evaluate(sp, w).matrix == m)) throw std::logic_error("decompose: postcondition failed");
        return w;
    };

    if (C.is_zero() && B.is_zero() && A == id) return finish(SturmWord<F>(0, {Matrix<F>(K, g, g)}));
    if (C.is_zero() && A == id && D == id) return finish(SturmWord<F>(1, {B}));
    if (B.is_zero() && A == id && D == id) return finish(SturmWord<F>(0, {C}));
    if (A.is_zero() && D.is_zero() && C.is_symmetric() && B == inverse(C).negated())
        return finish(m_word(sp, C));

    if (K.is_zero(det(C))) {
        // find symmetric t with t A + C invertible; a graph transverse to M.L
        // always provides one
        auto ml = act(sp, mm, standard_L(sp));
        std::optional<Matrix<F>> t;
        std::vector<std::int64_t> ladder;
        if constexpr (F::kind == FieldKind::PrimeField) {
            for (std::int64_t s = 0; s < K.p(); ++s) ladder.push_back(s);
        } else {
            for (std::int64_t s = 0; s <= 16; ++s) ladder.push_back(s);
            for (std::int64_t s = 1; s <= 16; ++s) ladder.push_back(-s);
        }
        for (auto s : ladder) {
            auto cand = scalar_matrix(sp, s);
            if (!K.is_zero(det(cand * A + C))) { t = cand; break; }
        }
        if (!t) {
            Rng rng(0x6465636f6d70ULL);
            for (int attempt = 0; attempt < 20000 && !t; ++attempt) {
                auto cand = random_symmetric(K, g, rng, 9);
                if (!K.is_zero(det(cand * A + C))) t = cand;
            }
        }
        if (!t) throw std::logic_error("decompose: no lower pre-factor found");
        SymplecticMap<F> m2(sp, generator_lower(sp, *t).matrix * m);
        auto w2 = decompose(sp, m2);
        return finish(concat(sp, SturmWord<F>(0, {t->negated()}), w2));
    }

    auto ci = inverse(C);
    auto U = A * ci;
    auto W = ci * D;
    auto [p, q] = symmetric_factorization(sp, C);
    SturmWord<F> w = SturmWord<F>::empty_word();
    if (!U.is_zero()) w = concat(sp, w, SturmWord<F>(1, {U}));
    w = concat(sp, w, m_word(sp, id));
    w = concat(sp, w, m_word(sp, p.negated()));
    w = concat(sp, w, m_word(sp, q));
    if (!W.is_zero()) w = concat(sp, w, SturmWord<F>(1, {W}));
    return finish(w);
}

// mu(x,y) = f00(x~ 0bar y~) - f00(x~) - f00(y~) for type-00 lifts.
template <class F>
WittClass<F> mu_cocycle_words(const SymplecticSpace<F>& sp, const SturmWord<F>& wx,
                              const SturmWord<F>& wy) {
    auto x00 = retype(sp, wx, 0, 0);
    auto y00 = retype(sp, wy, 0, 0);
    SturmWord<F> mid(1, {Matrix<F>(sp.field, sp.g, sp.g)});
    auto glued = concat(sp, concat(sp, x00, mid), y00);
    auto total = f00(sp, glued);
    auto parts = witt_add(sp.field, f00(sp, x00), f00(sp, y00));
    return witt_add(sp.field, total, witt_neg(sp.field, parts));
}

template <class F>
WittClass<F> mu_cocycle(const SymplecticSpace<F>& sp, const SymplecticMap<F>& x,
                        const SymplecticMap<F>& y) {
    return mu_cocycle_words(sp, decompose(sp, x), decompose(sp, y));
}

template <class F>
WittModI2<F> phi(const SymplecticSpace<F>& sp, const SymplecticMap<F>& m) {
    return mod_I2(f00(sp, decompose(sp, m)));
}

// Closed forms of Phi on the recognized block shapes; nullopt when the shape
// does not match any of them.
template <class F>
std::optional<WittModI2<F>> phi_closed_form(const SymplecticSpace<F>& sp, const SymplecticMap<F>& mm) {
    const F& K = sp.field;
    const int g = sp.g;
    const auto& m = mm.matrix;
    auto A = m.block(0, 0, g, g), B = m.block(0, g, g, g);
    auto C = m.block(g, 0, g, g), D = m.block(g, g, g, g);

    auto pfister = [&](const typename F::Elem& d) {  // <1, -d> mod I^2
        return mod_I2(witt_class(SymmetricForm<F>::diagonal(K, {K.one(), K.neg(d)})));
    };
    // Phi on the m-shape: rank 3g mod 2 and signed disc (-1)^{g(g-1)/2} det y,
    // read off the Sylvester matrix of the (y, -y^{-1}, y) word.
    auto m_value = [&](const Matrix<F>& y) {
        auto lam = det(y);
        if ((g * (g - 1) / 2) % 2) lam = K.neg(lam);
        return WittModI2<F>{(3 * g) % 2, K.square_class(lam)};
    };

    if (C.is_zero() && !K.is_zero(det(A))) return pfister(det(A));  // Stab_L
    if (B.is_zero() && !K.is_zero(det(A))) {                        // (x 0; v tx^-1)
        auto vx = C * inverse(A);
        return mod_I2_add(K, pfister(det(A)), mod_I2(witt_class(SymmetricForm<F>(vx))));
    }
    if (A.is_zero() && D.is_zero() && !K.is_zero(det(C))) return m_value(C);  // m-shape

    // The two swap products factor through m(I); the Stab_L factor keeps xL = L,
    // so mu vanishes on the pair and Phi adds across the factorization.
    Matrix<F> m1_inv(K, 2 * g, 2 * g);  // m(I)^{-1} = [[0, I], [-I, 0]]
    m1_inv.set_block(0, g, Matrix<F>::identity(K, g));
    m1_inv.set_block(g, 0, Matrix<F>::identity(K, g).negated());
    auto phi_m1 = m_value(Matrix<F>::identity(K, g));
    if (D.is_zero() && !K.is_zero(det(B))) {  // (v x; -tx^-1 0) = S m(I)
        auto S = m * m1_inv;
        auto SA = S.block(0, 0, g, g);
        if (!S.block(g, 0, g, g).is_zero() || K.is_zero(det(SA))) return std::nullopt;
        return mod_I2_add(K, pfister(det(SA)), phi_m1);
    }
    if (A.is_zero() && !K.is_zero(det(C))) {  // (0 -tx^-1; x v) = m(I) S
        auto S = m1_inv * m;
        auto SA = S.block(0, 0, g, g);
        if (!S.block(g, 0, g, g).is_zero() || K.is_zero(det(SA))) return std::nullopt;
        return mod_I2_add(K, phi_m1, pfister(det(SA)));
    }
    return std::nullopt;
}

}  // namespace msw
