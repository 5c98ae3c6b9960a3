#pragma once

// Lagrangian paths, their Sylvester matrices, the transversality witness, the
// shortcut decomposition, and Maslov indices of paths, loops and triples.
//
// Sylvester block layout:
//   diagonal    d_{Lam_i}(Lam_{i-1}, Lam_{i+1})
//   subdiagonal -(beta_{Lam_{i+1},Lam_i})^{-1}
//   superdiag   +(beta_{Lam_i,Lam_{i+1}})^{-1}
// This is the convention under which S(alpha) E_0 = T_n beta_{0,n+1} holds
// exactly; the opposite off-diagonal signs give a congruent form.

#include "msw/symplectic.hpp"

#include <tuple>
#include <vector>

namespace msw {

template <class F>
struct LagrangianPath {
    std::vector<Lagrangian<F>> nodes;  // Lam_0 .. Lam_{n+1}, consecutive transverse

    LagrangianPath(const SymplecticSpace<F>& sp, std::vector<Lagrangian<F>> ns) : nodes(std::move(ns)) {
        if (nodes.size() < 2) throw std::domain_error("path needs at least two nodes");
        for (size_t i = 0; i + 1 < nodes.size(); ++i)
            if (!transverse(sp, nodes[i], nodes[i + 1]))
                throw std::domain_error("consecutive nodes not transverse at index " + std::to_string(i));
    }
    int length() const { return static_cast<int>(nodes.size()) - 2; }  // n
    bool is_loop() const { return nodes.front() == nodes.back(); }

    LagrangianPath reversed(const SymplecticSpace<F>& sp) const {
        return LagrangianPath(sp, {nodes.rbegin(), nodes.rend()});
    }
    LagrangianPath concat(const SymplecticSpace<F>& sp, const LagrangianPath& o) const {
        if (!(nodes.back() == o.nodes.front()))
            throw std::domain_error("concat: endpoint mismatch");
        auto ns = nodes;
        ns.insert(ns.end(), o.nodes.begin() + 1, o.nodes.end());
        return LagrangianPath(sp, std::move(ns));
    }
};

template <class F>
SymmetricForm<F> sylvester_matrix(const SymplecticSpace<F>& sp, const LagrangianPath<F>& a) {
    const int g = sp.g, n = a.length();
    Matrix<F> s(sp.field, n * g, n * g);
    for (int i = 1; i <= n; ++i)
        s.set_block((i - 1) * g, (i - 1) * g,
                    affine_diff(sp, a.nodes[i], a.nodes[i - 1], a.nodes[i + 1]).gram);
    for (int i = 1; i < n; ++i) {
        auto sub = inverse(beta(sp, a.nodes[i + 1], a.nodes[i])).negated();
        auto sup = inverse(beta(sp, a.nodes[i], a.nodes[i + 1]));
        s.set_block(i * g, (i - 1) * g, sub);
        s.set_block((i - 1) * g, i * g, sup);
    }
    return SymmetricForm<F>(std::move(s));
}

// (S(alpha) nondegenerate, endpoints transverse); the two always agree and
// are returned separately as a self-check.
template <class F>
std::pair<bool, bool> nondegenerate_iff_transverse(const SymplecticSpace<F>& sp,
                                                   const LagrangianPath<F>& a) {
    bool nd = is_nondegenerate(sylvester_matrix(sp, a));
    bool tv = transverse(sp, a.nodes.front(), a.nodes.back());
    return {nd, tv};
}

template <class F>
struct TransversalityWitness {
    Matrix<F> E0;         // ng x g stack of beta_{0,k}
    Matrix<F> Tn;         // ng x g, single nonzero block -(beta_{n,n+1})^{-1}
    Matrix<F> truncation; // s: first column block and last row block of S erased
    bool identity_holds = false;      // S(alpha) E0 == Tn beta_{0,n+1}
    bool truncation_invertible = false;
};

template <class F>
TransversalityWitness<F> transversality_witness(const SymplecticSpace<F>& sp,
                                                const LagrangianPath<F>& a) {
    const int g = sp.g, n = a.length();
    if (n < 1) throw std::domain_error("transversality_witness: path length must be >= 1");
    auto s = sylvester_matrix(sp, a).gram;
    Matrix<F> e0(sp.field, n * g, g);
    for (int k = 1; k <= n; ++k) e0.set_block((k - 1) * g, 0, beta(sp, a.nodes[0], a.nodes[k]));
    Matrix<F> tn(sp.field, n * g, g);
    tn.set_block((n - 1) * g, 0, inverse(beta(sp, a.nodes[n], a.nodes[n + 1])).negated());

    TransversalityWitness<F> out{e0, tn, Matrix<F>(sp.field, (n - 1) * g, (n - 1) * g), false, false};
    out.identity_holds = (s * e0 == tn * beta(sp, a.nodes[0], a.nodes[n + 1]));
    if (n >= 2) out.truncation = s.block(0, g, (n - 1) * g, (n - 1) * g);
    out.truncation_invertible =
        out.truncation.rows() == 0 || !sp.field.is_zero(det(out.truncation));
    return out;
}

// Shortcut along transverse Lam_i, Lam_j: the sub-path and the shortened path,
// with S(alpha) isometric to the orthogonal sum of their Sylvester matrices.
template <class F>
std::pair<LagrangianPath<F>, LagrangianPath<F>> shortcut(const SymplecticSpace<F>& sp,
                                                         const LagrangianPath<F>& a, int i, int j) {
    int top = a.length() + 1;
    if (i < 0 || j <= i || j > top) throw std::domain_error("shortcut: bad indices");
    if (!transverse(sp, a.nodes[i], a.nodes[j]))
        throw std::domain_error("shortcut: nodes i,j not transverse");
    std::vector<Lagrangian<F>> sub(a.nodes.begin() + i, a.nodes.begin() + j + 1);
    std::vector<Lagrangian<F>> shortened(a.nodes.begin(), a.nodes.begin() + i + 1);
    shortened.insert(shortened.end(), a.nodes.begin() + j, a.nodes.end());
    return {LagrangianPath<F>(sp, std::move(sub)), LagrangianPath<F>(sp, std::move(shortened))};
}

// Symplectic map sending A to L and B to L*, for transverse A, B. Its inverse
// is J^{-1} M^T J, so no entry blowup beyond the node scale.
template <class F>
SymplecticMap<F> normalizer(const SymplecticSpace<F>& sp, const Lagrangian<F>& a,
                            const Lagrangian<F>& b) {
    auto q = beta(sp, a, b).transpose();  // q(i,k) = omega(a_i, b_k)
    auto t = inverse(q).negated();
    Matrix<F> m(sp.field, 2 * sp.g, 2 * sp.g);
    m.set_block(0, 0, a.basis);
    m.set_block(0, sp.g, b.basis * t);
    auto j = sp.J();
    return SymplecticMap<F>(sp, inverse(j) * m.transpose() * j);
}

template <class F>
LagrangianPath<F> reanchored(const SymplecticSpace<F>& sp, const std::vector<Lagrangian<F>>& nodes) {
    auto phi = normalizer(sp, nodes[0], nodes[1]);
    std::vector<Lagrangian<F>> out;
    out.reserve(nodes.size());
    for (auto& node : nodes) out.push_back(act(sp, phi, node));
    return LagrangianPath<F>(sp, std::move(out));
}

// Witt class of the Sylvester form of a path, evaluated by repeatedly
// splitting off minimal-span shortcuts and re-anchoring each piece at a
// standard position. Splitting keeps every diagonalized block small, so the
// square-class canonicalization only ever factors numbers of piece scale; the
// result agrees with witt_class(sylvester_matrix(...)) by the shortcut
// isometry and the equivariance of Sylvester matrices.
template <class F>
WittClass<F> witt_of_sylvester_path(const SymplecticSpace<F>& sp, std::vector<Lagrangian<F>> nodes) {
    const F& K = sp.field;
    auto acc = witt_zero(K);
    for (;;) {
        int n = static_cast<int>(nodes.size()) - 2;
        if (n <= 0) return acc;
        if (n <= 2)
            return witt_add(K, acc, witt_class(sylvester_matrix(sp, reanchored(sp, nodes))));
        int bi = -1, bj = -1;
        for (int span = 2; span <= n + 1 && bi < 0; ++span)
            for (int i = 0; i + span <= n + 1; ++i)
                if (transverse(sp, nodes[i], nodes[i + span])) {
                    bi = i;
                    bj = i + span;
                    break;
                }
        if (bi < 0)
            return witt_add(K, acc, witt_class(sylvester_matrix(sp, reanchored(sp, nodes))));
        std::vector<Lagrangian<F>> piece(nodes.begin() + bi, nodes.begin() + bj + 1);
        acc = witt_add(K, acc, witt_class(sylvester_matrix(sp, reanchored(sp, piece))));
        nodes.erase(nodes.begin() + bi + 1, nodes.begin() + bj);
    }
}

template <class F>
WittClass<F> maslov_of_path(const SymplecticSpace<F>& sp, const LagrangianPath<F>& a) {
    return witt_of_sylvester_path(sp, a.nodes);
}

template <class F>
WittClass<F> maslov_of_loop(const SymplecticSpace<F>& sp, const LagrangianPath<F>& w) {
    if (!w.is_loop()) throw std::domain_error("maslov_of_loop: not a loop");
    return maslov_of_path(sp, w);
}

// mu_BL via an explicit pair of paths.
template <class F>
WittClass<F> maslov_triple_with_paths(const SymplecticSpace<F>& sp, const LagrangianPath<F>& a01,
                                      const LagrangianPath<F>& a12) {
    auto whole = maslov_of_path(sp, a01.concat(sp, a12));
    auto parts = witt_add(sp.field, maslov_of_path(sp, a01), maslov_of_path(sp, a12));
    return witt_add(sp.field, whole, witt_neg(sp.field, parts));
}

// mu_BL(Lam0,Lam1,Lam2) through one shared common transverse; path
// independence is a tested property, and `seed` selects the path system.
template <class F>
WittClass<F> maslov_triple(const SymplecticSpace<F>& sp, const Lagrangian<F>& l0,
                           const Lagrangian<F>& l1, const Lagrangian<F>& l2,
                           std::uint64_t seed = 0) {
    auto lp = common_transverse(sp, {l0, l1, l2}, seed);
    LagrangianPath<F> a01(sp, {l0, lp, l1}), a12(sp, {l1, lp, l2});
    return maslov_triple_with_paths(sp, a01, a12);
}

// Standard ternary form q(x0,x1,x2) = w(x0,x1) + w(x1,x2) + w(x2,x0) on
// Lam0 + Lam1 + Lam2 (polarized; char != 2). Its class is reported next to
// 2 mu_BL, never asserted equal: the normalization is an open question.
template <class F>
SymmetricForm<F> kashiwara_form(const SymplecticSpace<F>& sp, const Lagrangian<F>& l0,
                                const Lagrangian<F>& l1, const Lagrangian<F>& l2) {
    const int g = sp.g;
    Matrix<F> gram(sp.field, 3 * g, 3 * g);
    auto half = sp.field.inv(sp.field.from_int(2));
    const Lagrangian<F>* ls[3] = {&l0, &l1, &l2};
    const std::pair<int, int> cyc[3] = {{0, 1}, {1, 2}, {2, 0}};
    for (auto [a, b] : cyc) {
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                auto v = sp.field.mul(half, sp.omega_cols(ls[a]->basis, i, ls[b]->basis, j));
                gram(a * g + i, b * g + j) = sp.field.add(gram(a * g + i, b * g + j), v);
                gram(b * g + j, a * g + i) = sp.field.add(gram(b * g + j, a * g + i), v);
            }
    }
    return SymmetricForm<F>(std::move(gram));
}

}  // namespace msw
