#pragma once

// The symplectic space H(L) = L + L* with omega((x,xi),(y,eta)) = xi(y) - eta(x),
// Lagrangians in canonical column-reduced form, the pairing beta, affine
// differences d_X, projections, the elementary generators, and the
// common-transverse search.
//
// Sign conventions are fixed once here and never re-derived:
//   beta_{Lam,M}(i,j) = omega(Lam_j, M_i), so beta_{L,L*} = -Id;
//   lower(q).L is the translation of L along -q, upper(q).L* along +q.

#include "msw/rng.hpp"
#include "msw/witt.hpp"

#include <optional>
#include <vector>

namespace msw {

template <class F>
struct SymplecticSpace {
    F field;
    int g;

    SymplecticSpace(F f, int genus) : field(f), g(genus) {
        if (genus < 1) throw std::domain_error("genus must be >= 1");
    }
    // Gram matrix of omega: [[0,-I],[I,0]] in the L + L* coordinates.
    Matrix<F> J() const {
        Matrix<F> j(field, 2 * g, 2 * g);
        for (int i = 0; i < g; ++i) {
            j(i, g + i) = field.neg(field.one());
            j(g + i, i) = field.one();
        }
        return j;
    }
    typename F::Elem omega_cols(const Matrix<F>& a, int ca, const Matrix<F>& b, int cb) const {
        auto acc = field.zero();
        for (int i = 0; i < g; ++i) {
            acc = field.add(acc, field.mul(a(g + i, ca), b(i, cb)));
            acc = field.sub(acc, field.mul(b(g + i, cb), a(i, ca)));
        }
        return acc;
    }
};

template <class F>
Matrix<F> canonical_column_form(const Matrix<F>& basis) {
    auto r = rref(basis.transpose());
    Matrix<F> out(basis.field(), basis.rows(), r.rank);
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < basis.rows(); ++j) out(j, i) = r.reduced(i, j);
    return out;
}

template <class F>
bool is_lagrangian_basis(const SymplecticSpace<F>& sp, const Matrix<F>& b) {
    if (b.rows() != 2 * sp.g || b.cols() != sp.g) return false;
    if (rank(b) != sp.g) return false;
    auto w = b.transpose() * sp.J() * b;
    return w.is_zero();
}

template <class F>
struct Lagrangian {
    Matrix<F> basis;  // 2g x g, canonical column-reduced form

    Lagrangian(const SymplecticSpace<F>& sp, const Matrix<F>& b) : basis(canonical_column_form(b)) {
        if (!is_lagrangian_basis(sp, basis))
            throw std::domain_error("not a Lagrangian basis");
    }
    bool operator==(const Lagrangian& o) const { return basis == o.basis; }
};

template <class F>
Lagrangian<F> standard_L(const SymplecticSpace<F>& sp) {
    Matrix<F> b(sp.field, 2 * sp.g, sp.g);
    for (int i = 0; i < sp.g; ++i) b(i, i) = sp.field.one();
    return Lagrangian<F>(sp, b);
}

template <class F>
Lagrangian<F> standard_L_dual(const SymplecticSpace<F>& sp) {
    Matrix<F> b(sp.field, 2 * sp.g, sp.g);
    for (int i = 0; i < sp.g; ++i) b(sp.g + i, i) = sp.field.one();
    return Lagrangian<F>(sp, b);
}

template <class F>
struct SymplecticMap {
    Matrix<F> matrix;  // 2g x 2g with M^T J M = J

    SymplecticMap(const SymplecticSpace<F>& sp, Matrix<F> m) : matrix(std::move(m)) {
        if (matrix.rows() != 2 * sp.g || matrix.cols() != 2 * sp.g)
            throw std::domain_error("symplectic map: wrong shape");
        auto j = sp.J();
        if (!(matrix.transpose() * j * matrix == j))
            throw std::domain_error("matrix is not symplectic");
    }
};

template <class F>
bool is_symplectic(const SymplecticSpace<F>& sp, const Matrix<F>& m) {
    if (m.rows() != 2 * sp.g || m.cols() != 2 * sp.g) return false;
    auto j = sp.J();
    return m.transpose() * j * m == j;
}

template <class F>
bool transverse(const SymplecticSpace<F>& sp, const Lagrangian<F>& a, const Lagrangian<F>& b) {
    Matrix<F> m(sp.field, 2 * sp.g, 2 * sp.g);
    m.set_block(0, 0, a.basis);
    m.set_block(0, sp.g, b.basis);
    return !sp.field.is_zero(det(m));
}

// beta_{Lam,M}: Lam -> M*, entry (i,j) = omega(Lam-basis_j, M-basis_i).
template <class F>
Matrix<F> beta(const SymplecticSpace<F>& sp, const Lagrangian<F>& lam, const Lagrangian<F>& m) {
    Matrix<F> out(sp.field, sp.g, sp.g);
    for (int i = 0; i < sp.g; ++i)
        for (int j = 0; j < sp.g; ++j) out(i, j) = sp.omega_cols(lam.basis, j, m.basis, i);
    return out;
}

// d_X(Lam,M) = -(beta_{X,M})^{-1} beta_{Lam,M} beta_{Lam,X}^{-1}, a symmetric
// form on X*; requires Lam and M transverse to X.
template <class F>
SymmetricForm<F> affine_diff(const SymplecticSpace<F>& sp, const Lagrangian<F>& x,
                             const Lagrangian<F>& lam, const Lagrangian<F>& m) {
    auto b_xm = try_inverse(beta(sp, x, m));
    auto b_lx = try_inverse(beta(sp, lam, x));
    if (!b_xm || !b_lx) throw std::domain_error("affine_diff: arguments not transverse to base");
    auto d = ((*b_xm) * beta(sp, lam, m) * (*b_lx)).negated();
    return SymmetricForm<F>(std::move(d));
}

// Projections of X onto Lam1 parallel to Lam2 and vice versa (Lam1, Lam2 transverse).
template <class F>
std::pair<Matrix<F>, Matrix<F>> project_along(const SymplecticSpace<F>& sp, const Lagrangian<F>& x,
                                              const Lagrangian<F>& lam1, const Lagrangian<F>& lam2) {
    auto b12 = try_inverse(beta(sp, lam1, lam2));
    auto b21 = try_inverse(beta(sp, lam2, lam1));
    if (!b12 || !b21) throw std::domain_error("project_along: pair not transverse");
    return {(*b12) * beta(sp, x, lam2), (*b21) * beta(sp, x, lam1)};
}

template <class F>
SymplecticMap<F> generator_upper(const SymplecticSpace<F>& sp, const Matrix<F>& q) {
    if (!q.is_symmetric()) throw std::domain_error("generator_upper: q not symmetric");
    auto m = Matrix<F>::identity(sp.field, 2 * sp.g);
    m.set_block(0, sp.g, q);
    return SymplecticMap<F>(sp, std::move(m));
}

template <class F>
SymplecticMap<F> generator_lower(const SymplecticSpace<F>& sp, const Matrix<F>& q) {
    if (!q.is_symmetric()) throw std::domain_error("generator_lower: q not symmetric");
    auto m = Matrix<F>::identity(sp.field, 2 * sp.g);
    m.set_block(sp.g, 0, q);
    return SymplecticMap<F>(sp, std::move(m));
}

template <class F>
SymplecticMap<F> generator_h(const SymplecticSpace<F>& sp, const Matrix<F>& x) {
    auto xi = try_inverse(x);
    if (!xi) throw std::domain_error("generator_h: singular block");
    Matrix<F> m(sp.field, 2 * sp.g, 2 * sp.g);
    m.set_block(0, 0, x);
    m.set_block(sp.g, sp.g, xi->transpose());
    return SymplecticMap<F>(sp, std::move(m));
}

// m(q) = lower(q) upper(-q^{-1}) lower(q) = [[0, -q^{-1}], [q, 0]].
template <class F>
SymplecticMap<F> generator_m(const SymplecticSpace<F>& sp, const Matrix<F>& q) {
    if (!q.is_symmetric()) throw std::domain_error("generator_m: q not symmetric");
    auto qi = try_inverse(q);
    if (!qi) throw std::domain_error("generator_m: singular block");
    Matrix<F> m(sp.field, 2 * sp.g, 2 * sp.g);
    m.set_block(0, sp.g, qi->negated());
    m.set_block(sp.g, 0, q);
    return SymplecticMap<F>(sp, std::move(m));
}

template <class F>
Lagrangian<F> act(const SymplecticSpace<F>& sp, const SymplecticMap<F>& phi, const Lagrangian<F>& lam) {
    return Lagrangian<F>(sp, phi.matrix * lam.basis);
}

// Graph-type Lagrangian lower(q).L = span of [I; q].
template <class F>
Lagrangian<F> graph_of(const SymplecticSpace<F>& sp, const Matrix<F>& q) {
    return act(sp, generator_lower(sp, q), standard_L(sp));
}

template <class F>
Matrix<F> scalar_matrix(const SymplecticSpace<F>& sp, std::int64_t s) {
    Matrix<F> q(sp.field, sp.g, sp.g);
    for (int i = 0; i < sp.g; ++i) q(i, i) = sp.field.from_int(s);
    return q;
}

// Deterministic search for a Lagrangian transverse to every input: graph chart
// first along the scalar ladder 0,1,2,..., then the dual chart, then diagonal
// tuples, then seeded random symmetric translates, then a random change of
// chart. Returns nullopt only after the full schedule is exhausted.
template <class F>
std::optional<Lagrangian<F>> find_common_transverse(const SymplecticSpace<F>& sp,
                                                    const std::vector<Lagrangian<F>>& lams,
                                                    std::uint64_t seed = 0) {
    if (lams.empty()) throw std::domain_error("common_transverse: empty input");
    auto ok = [&](const Lagrangian<F>& cand) {
        for (auto& l : lams)
            if (!transverse(sp, cand, l)) return false;
        return true;
    };
    auto try_translate = [&](const Matrix<F>& q) -> std::optional<Lagrangian<F>> {
        auto cand = graph_of(sp, q);
        if (ok(cand)) return cand;
        cand = act(sp, generator_upper(sp, q), standard_L_dual(sp));
        if (ok(cand)) return cand;
        return std::nullopt;
    };

    std::vector<std::int64_t> ladder;
    if constexpr (F::kind == FieldKind::PrimeField) {
        for (std::int64_t s = 0; s < sp.field.p(); ++s) ladder.push_back(s);
    } else {
        for (std::int64_t s = 0; s <= 16; ++s) ladder.push_back(s);
        for (std::int64_t s = 1; s <= 16; ++s) ladder.push_back(-s);
    }
    for (auto s : ladder) {
        auto cand = graph_of(sp, scalar_matrix(sp, s));
        if (ok(cand)) return cand;
    }
    for (auto s : ladder) {
        auto cand = act(sp, generator_upper(sp, scalar_matrix(sp, s)), standard_L_dual(sp));
        if (ok(cand)) return cand;
    }
    if (sp.g > 1) {
        std::vector<size_t> idx(static_cast<size_t>(sp.g), 0);
        std::uint64_t count = 0;
        while (count < 4096) {
            Matrix<F> q(sp.field, sp.g, sp.g);
            for (int i = 0; i < sp.g; ++i) q(i, i) = sp.field.from_int(ladder[idx[i]]);
            if (auto c = try_translate(q)) return c;
            ++count;
            int k = 0;
            for (; k < sp.g; ++k) {
                if (++idx[k] < ladder.size()) break;
                idx[k] = 0;
            }
            if (k == sp.g) break;
        }
    }
    Rng rng(mix_seed(seed, 0x636f6d6d6f6e74ULL));
    for (int attempt = 0; attempt < 4096; ++attempt) {
        auto q = random_symmetric(sp.field, sp.g, rng, 9);
        if (auto c = try_translate(q)) return c;
    }
    // change of chart: conjugate the problem by a random symplectic map
    for (int outer = 0; outer < 16; ++outer) {
        auto raw = Matrix<F>::identity(sp.field, 2 * sp.g);
        for (int k = 0; k < 3; ++k) {
            auto q = random_symmetric(sp.field, sp.g, rng, 9);
            raw = raw * (rng.next_below(2) ? generator_lower(sp, q).matrix
                                           : generator_upper(sp, q).matrix);
        }
        SymplecticMap<F> phi(sp, raw);
        SymplecticMap<F> phi_inv(sp, inverse(raw));
        std::vector<Lagrangian<F>> moved;
        moved.reserve(lams.size());
        for (auto& l : lams) moved.push_back(act(sp, phi, l));
        for (int attempt = 0; attempt < 2048; ++attempt) {
            auto q = random_symmetric(sp.field, sp.g, rng, 9);
            auto cand = graph_of(sp, q);
            bool good = true;
            for (auto& l : moved)
                if (!transverse(sp, cand, l)) { good = false; break; }
            if (good) {
                auto back = act(sp, phi_inv, cand);
                if (ok(back)) return back;
            }
        }
    }
    return std::nullopt;
}

template <class F>
Lagrangian<F> common_transverse(const SymplecticSpace<F>& sp, const std::vector<Lagrangian<F>>& lams,
                                std::uint64_t seed = 0) {
    auto c = find_common_transverse(sp, lams, seed);
    if (!c) {
        if (lams.size() <= 3)
            throw std::logic_error("common_transverse: search exhausted on <=3 Lagrangians");
        throw std::runtime_error("common_transverse: not found");
    }
    return *c;
}

}  // namespace msw
