#pragma once

// Symmetric bilinear forms up to Witt equivalence. Classes are canonical
// invariant records, so equality is bit-exact:
//   F_p : (rank mod 2, signed discriminant square class) -- W(F_p) has order 4
//   Q   : (rank mod 2, signature, signed disc, second residues at odd primes)
// plus the twisted addition law disc(q1+q2) = disc(q1)disc(q2)(-1)^{r1 r2}.

#include "msw/matrix.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace msw {

template <class F>
struct SymmetricForm {
    Matrix<F> gram;

    explicit SymmetricForm(Matrix<F> g) : gram(std::move(g)) {
        if (!gram.is_symmetric()) throw std::domain_error("SymmetricForm: gram not symmetric");
    }
    static SymmetricForm diagonal(F field, const std::vector<typename F::Elem>& entries) {
        Matrix<F> g(field, static_cast<int>(entries.size()), static_cast<int>(entries.size()));
        for (int i = 0; i < g.rows(); ++i) g(i, i) = entries[i];
        return SymmetricForm(std::move(g));
    }
    int support_dim() const { return gram.rows(); }
    const F& field() const { return gram.field(); }

    SymmetricForm negated() const { return SymmetricForm(gram.negated()); }
    SymmetricForm orthogonal_sum(const SymmetricForm& o) const {
        Matrix<F> g(field(), support_dim() + o.support_dim(), support_dim() + o.support_dim());
        g.set_block(0, 0, gram);
        g.set_block(support_dim(), support_dim(), o.gram);
        return SymmetricForm(std::move(g));
    }
};

// Residue component at an odd prime: a W(F_p) invariant pair. The prime can
// exceed machine range (second residues of exact elimination output), so the
// class representative is kept as a big integer.
struct ResiduePair {
    int rank_mod_2 = 0;
    Int disc = 1;  // canonical square class mod p
    bool operator==(const ResiduePair&) const = default;
};

template <class F>
struct WittClass {
    FieldDescriptor descriptor;
    int rank_mod_2 = 0;
    typename F::SquareClass disc;
    // Rationals only; stay 0 / empty over F_p.
    long signature = 0;
    std::map<Int, ResiduePair> residues;

    bool operator==(const WittClass& o) const {
        return descriptor == o.descriptor && rank_mod_2 == o.rank_mod_2 && disc == o.disc &&
               signature == o.signature && residues == o.residues;
    }
    bool is_zero(const F& field) const {
        return rank_mod_2 == 0 && disc == field.trivial_class() && signature == 0 && residues.empty();
    }
};

template <class F>
struct WittModI2 {
    int rank_mod_2 = 0;
    typename F::SquareClass disc;
    bool operator==(const WittModI2&) const = default;
};

namespace detail {

// W(F_p) addition of invariant pairs for the residue components of Q classes.
inline ResiduePair residue_add(const Int& p, const ResiduePair& a, const ResiduePair& b) {
    Int d = a.disc * b.disc;
    if ((a.rank_mod_2 * b.rank_mod_2) % 2) d *= p - 1;  // times class of -1
    return ResiduePair{(a.rank_mod_2 + b.rank_mod_2) % 2, residue_square_class(d, p)};
}

}  // namespace detail

template <class F>
WittClass<F> witt_zero(const F& field) {
    return WittClass<F>{field.descriptor(), 0, field.trivial_class(), 0, {}};
}

template <class F>
std::pair<SymmetricForm<F>, int> regularize(const SymmetricForm<F>& q) {
    const F& K = q.field();
    auto cd = congruence_diagonalize(q.gram);
    std::vector<int> keep;
    for (int i = 0; i < q.support_dim(); ++i)
        if (!K.is_zero(cd.diagonal[i])) keep.push_back(i);
    int radical = q.support_dim() - static_cast<int>(keep.size());
    Matrix<F> g(K, static_cast<int>(keep.size()), static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i) g(static_cast<int>(i), static_cast<int>(i)) = cd.diagonal[keep[i]];
    return {SymmetricForm<F>(std::move(g)), radical};
}

template <class F>
bool is_nondegenerate(const SymmetricForm<F>& q) {
    return q.support_dim() == 0 || !q.field().is_zero(det(q.gram));
}

template <class F>
typename F::SquareClass signed_discriminant(const SymmetricForm<F>& q) {
    const F& K = q.field();
    if (q.support_dim() == 0) return K.trivial_class();
    auto d = det(q.gram);
    if (K.is_zero(d)) throw std::domain_error("signed_discriminant: degenerate form");
    int r = q.support_dim();
    if ((r * (r - 1) / 2) % 2) d = K.neg(d);
    return K.square_class(d);
}

template <class F>
WittClass<F> witt_class(const SymmetricForm<F>& q) {
    const F& K = q.field();
    auto cd = congruence_diagonalize(q.gram);
    std::vector<typename F::Elem> diag;
    for (auto& d : cd.diagonal)
        if (!K.is_zero(d)) diag.push_back(d);
    int r = static_cast<int>(diag.size());

    WittClass<F> out = witt_zero(K);
    out.rank_mod_2 = r % 2;
    if (r == 0) return out;

    auto prod = K.one();
    for (auto& d : diag) prod = K.mul(prod, d);
    if ((r * (r - 1) / 2) % 2) prod = K.neg(prod);
    out.disc = K.square_class(prod);

    if constexpr (F::kind == FieldKind::Rationals) {
        for (auto& d : diag) out.signature += d > 0 ? 1 : -1;
        for (auto& d : diag) {
            Int nd = rat_num(d) * rat_den(d);
            for (auto& [p, e] : factorize(nd)) {
                if (p == 2 || e % 2 == 0) continue;
                // unit part of d at p, reduced mod p
                Int num = rat_num(d), den = rat_den(d);
                while (num % p == 0) num /= p;
                while (den % p == 0) den /= p;
                Int up = num % p * powmod(den % p, p - 2, p) % p;
                if (up < 0) up += p;
                ResiduePair term{1, residue_square_class(up, p)};
                auto it = out.residues.find(p);
                if (it == out.residues.end()) {
                    out.residues.emplace(p, term);
                } else {
                    it->second = detail::residue_add(p, it->second, term);
                    if (it->second == ResiduePair{}) out.residues.erase(it);
                }
            }
        }
    }
    return out;
}

template <class F>
WittClass<F> witt_add(const F& field, const WittClass<F>& a, const WittClass<F>& b) {
    if (!(a.descriptor == field.descriptor()) || !(b.descriptor == field.descriptor()))
        throw std::domain_error("witt_add: field descriptor mismatch");
    WittClass<F> out = witt_zero(field);
    out.rank_mod_2 = (a.rank_mod_2 + b.rank_mod_2) % 2;
    auto d = field.class_mul(a.disc, b.disc);
    if ((a.rank_mod_2 * b.rank_mod_2) % 2) d = field.class_mul(d, field.class_neg_unit());
    out.disc = d;
    out.signature = a.signature + b.signature;
    out.residues = a.residues;
    for (auto& [p, rp] : b.residues) {
        auto it = out.residues.find(p);
        if (it == out.residues.end()) {
            out.residues.emplace(p, rp);
        } else {
            it->second = detail::residue_add(p, it->second, rp);
            if (it->second == ResiduePair{}) out.residues.erase(it);
        }
    }
    return out;
}

template <class F>
WittClass<F> witt_neg(const F& field, const WittClass<F>& a) {
    if (!(a.descriptor == field.descriptor()))
        throw std::domain_error("witt_neg: field descriptor mismatch");
    WittClass<F> out = a;
    out.signature = -a.signature;
    if (a.rank_mod_2 % 2) out.disc = field.class_mul(a.disc, field.class_neg_unit());
    for (auto& [p, rp] : out.residues) {
        if (rp.rank_mod_2 % 2) rp.disc = residue_square_class(rp.disc * (p - 1), p);
    }
    return out;
}

// Neutral iff nondegenerate of even rank with trivial Witt class.
template <class F>
bool is_neutral(const SymmetricForm<F>& q) {
    if (!is_nondegenerate(q)) return false;
    if (q.support_dim() % 2) return false;
    return witt_class(q).is_zero(q.field());
}

// Hasse invariant of a nondegenerate rational form at one place.
inline int hasse_invariant(const SymmetricForm<Rationals>& q, const Place& v) {
    if (!is_nondegenerate(q)) throw std::domain_error("hasse_invariant: degenerate form");
    auto diag = congruence_diagonalize(q.gram).diagonal;
    int s = 1;
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) s *= hilbert_symbol(diag[i], diag[j], v);
    return s;
}

template <class F>
WittModI2<F> mod_I2(const WittClass<F>& c) {
    return WittModI2<F>{c.rank_mod_2, c.disc};
}

template <class F>
WittModI2<F> mod_I2_add(const F& field, const WittModI2<F>& a, const WittModI2<F>& b) {
    auto d = field.class_mul(a.disc, b.disc);
    if ((a.rank_mod_2 * b.rank_mod_2) % 2) d = field.class_mul(d, field.class_neg_unit());
    return WittModI2<F>{(a.rank_mod_2 + b.rank_mod_2) % 2, d};
}

template <class F>
WittModI2<F> mod_I2_neg(const F& field, const WittModI2<F>& a) {
    auto d = a.disc;
    if (a.rank_mod_2 % 2) d = field.class_mul(d, field.class_neg_unit());
    return WittModI2<F>{a.rank_mod_2, d};
}

// F(lambda, n) = mod I^2 class of <1,-lambda> + n<1>.
template <class F>
WittModI2<F> F_map(const F& field, const typename F::Elem& lambda, int n) {
    if (field.is_zero(lambda)) throw std::domain_error("F_map: lambda must be nonzero");
    n = ((n % 4) + 4) % 4;
    std::vector<typename F::Elem> entries{field.one(), field.neg(lambda)};
    for (int i = 0; i < n; ++i) entries.push_back(field.one());
    return mod_I2(witt_class(SymmetricForm<F>::diagonal(field, entries)));
}

// Canonical isometry record: equal records iff isometric (rank/disc classify
// regular forms over F_p; rank/sig/disc/Hasse-at-all-places over Q, recorded
// as the finite set of places with symbol -1).
template <class F>
struct IsometryRecord {
    int support_dim = 0;
    int radical_dim = 0;
    WittClass<F> cls;
    std::vector<std::string> hasse_negative_places;  // Q only
    bool operator==(const IsometryRecord&) const = default;
};

template <class F>
IsometryRecord<F> isometry_record(const SymmetricForm<F>& q) {
    IsometryRecord<F> out;
    out.support_dim = q.support_dim();
    auto [reg, rad] = regularize(q);
    out.radical_dim = rad;
    out.cls = witt_class(reg);
    if constexpr (F::kind == FieldKind::Rationals) {
        std::vector<Place> places{Place::infinity(), Place::prime(2)};
        auto diag = congruence_diagonalize(reg.gram).diagonal;
        for (auto& d : diag)
            for (auto& p : odd_prime_support(d)) places.push_back(Place::prime(p));
        std::sort(places.begin(), places.end());
        places.erase(std::unique(places.begin(), places.end()), places.end());
        for (auto& v : places) {
            int s = 1;
            for (size_t i = 0; i < diag.size(); ++i)
                for (size_t j = i + 1; j < diag.size(); ++j) s *= hilbert_symbol(diag[i], diag[j], v);
            if (s == -1) out.hasse_negative_places.push_back(v.str());
        }
        std::sort(out.hasse_negative_places.begin(), out.hasse_negative_places.end());
    }
    return out;
}

template <class F>
bool isometric(const SymmetricForm<F>& a, const SymmetricForm<F>& b) {
    return isometry_record(a) == isometry_record(b);
}

}  // namespace msw
