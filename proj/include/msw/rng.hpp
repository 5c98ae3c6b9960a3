#pragma once

// Deterministic PRNG (splitmix64) with hand-rolled bounded sampling, so that
// reports and property suites are byte-identical across platforms for a given
// seed. std::uniform_int_distribution is implementation-defined; avoided.

#include "msw/field.hpp"
#include "msw/matrix.hpp"

#include <cstdint>

namespace msw {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() { return splitmix64(state_); }
    // Unbiased enough for test sampling; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
private:
    std::uint64_t state_;
};

// Uniform-ish field element with entries bounded by `bound` over Q, uniform
// residue over F_p.
template <class F>
typename F::Elem random_element(const F& field, Rng& rng, std::int64_t bound) {
    if constexpr (F::kind == FieldKind::PrimeField) {
        return field.from_int(rng.int_in(0, field.p() - 1));
    } else {
        return field.from_int(rng.int_in(-bound, bound));
    }
}

template <class F>
Matrix<F> random_matrix(const F& field, int rows, int cols, Rng& rng, std::int64_t bound) {
    Matrix<F> m(field, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_element(field, rng, bound);
    return m;
}

template <class F>
Matrix<F> random_symmetric(const F& field, int n, Rng& rng, std::int64_t bound) {
    Matrix<F> m(field, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            auto v = random_element(field, rng, bound);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

template <class F>
Matrix<F> random_invertible(const F& field, int n, Rng& rng, std::int64_t bound) {
    for (;;) {
        auto m = random_matrix(field, n, n, rng, bound);
        if (!field.is_zero(det(m))) return m;
    }
}

}  // namespace msw
