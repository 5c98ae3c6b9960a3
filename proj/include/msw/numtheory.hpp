#pragma once

// Exact integer/rational utilities: primality, factorization, square classes,
// Legendre and Hilbert symbols. Everything is deterministic.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace msw {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int powmod(Int base, Int exp, const Int& mod) {
    Int r = 1;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if ((exp & 1) != 0) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, int s) {
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Deterministic below 3.3e24; the fixed basis set keeps behavior reproducible above.
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (miller_rabin_witness(n, a, d, s)) return false;
    return true;
}

namespace detail_nt {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Brent's cycle variant of rho for word-sized composites.
inline std::uint64_t brent_rho_u64(std::uint64_t n, std::uint64_t c, std::uint64_t x0) {
    std::uint64_t y = x0, r = 1, q = 1, g = 1, x = 0, ys = 0;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
        for (std::uint64_t k = 0; k < r && g == 1; k += 128) {
            ys = y;
            std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (mulmod_u64(y, y, n) + c) % n;
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (mulmod_u64(ys, ys, n) + c) % n;
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

#if defined(__SIZEOF_INT128__)
using u128 = unsigned __int128;

// shift-add mulmod, valid for m < 2^126
inline u128 mulmod_u128(u128 a, u128 b, const u128& m) {
    a %= m;
    b %= m;
    if (a == 0 || b == 0) return 0;
    if (a <= (~static_cast<u128>(0)) / b) return a * b % m;
    u128 r = 0;
    while (b) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a <<= 1;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

inline u128 gcd_u128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u128 brent_rho_u128(const u128& n, std::uint64_t c, std::uint64_t x0) {
    u128 y = x0, r = 1, q = 1, g = 1, x = 0, ys = 0;
    auto step = [&](u128 v) {
        u128 s = mulmod_u128(v, v, n) + c;
        return s >= n ? s - n : s;
    };
    while (g == 1) {
        x = y;
        for (u128 i = 0; i < r; ++i) y = step(y);
        for (u128 k = 0; k < r && g == 1; k += 128) {
            ys = y;
            u128 lim = r - k < 128 ? r - k : static_cast<u128>(128);
            for (u128 i = 0; i < lim; ++i) {
                y = step(y);
                q = mulmod_u128(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u128(q, n);
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = step(ys);
            g = gcd_u128(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}
#endif

// Brent with batched gcds for arbitrary precision.
inline Int brent_rho_big(const Int& n, std::uint64_t c, std::uint64_t x0) {
    Int y = x0, r = 1, q = 1, g = 1, x = 0, ys = 0;
    auto step = [&](const Int& v) { return (v * v + c) % n; };
    while (g == 1) {
        x = y;
        for (Int i = 0; i < r; ++i) y = step(y);
        for (Int k = 0; k < r && g == 1; k += 128) {
            ys = y;
            Int lim = r - k < 128 ? r - k : Int(128);
            for (Int i = 0; i < lim; ++i) {
                y = step(y);
                q = q * (x > y ? x - y : y - x) % n;
            }
            g = boost::multiprecision::gcd(q, n);
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = step(ys);
            Int diff = x > ys ? x - ys : ys - x;
            g = boost::multiprecision::gcd(diff, n);
        } while (g == 1);
    }
    return g;
}

}  // namespace detail_nt

inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    static const Int k_u64_max(std::numeric_limits<std::uint64_t>::max());
#if defined(__SIZEOF_INT128__)
    static const Int k_u126_max = Int(1) << 126;
#endif
    for (std::uint64_t c = 1;; ++c) {
        Int g;
        if (n <= k_u64_max) {
            g = detail_nt::brent_rho_u64(static_cast<std::uint64_t>(n), c, 2 + c);
#if defined(__SIZEOF_INT128__)
        } else if (n < k_u126_max) {
            detail_nt::u128 nn = static_cast<detail_nt::u128>(n >> 64);
            nn = (nn << 64) | static_cast<std::uint64_t>(n & k_u64_max);
            auto f = detail_nt::brent_rho_u128(nn, c, 2 + c);
            g = Int(static_cast<std::uint64_t>(f >> 64));
            g <<= 64;
            g |= Int(static_cast<std::uint64_t>(f));
#endif
        } else {
            g = detail_nt::brent_rho_big(n, c, 2 + c);
        }
        if (g != 1 && g != n) return g;
    }
}

// prime -> exponent, for |n|; n must be nonzero.
inline void factor_into(Int n, std::map<Int, int>& out) {
    if (n < 0) n = -n;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (n % p == 0) { ++out[p]; n /= p; }
    }
    Int d = 53;
    while (d * d <= n && d < 10000) {
        while (n % d == 0) { ++out[d]; n /= d; }
        d += 2;
    }
    if (n == 1) return;
    if (is_prime(n)) { ++out[n]; return; }
    Int f = pollard_rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

inline std::map<Int, int> factorize(const Int& n) {
    if (n == 0) throw std::domain_error("factorize: zero");
    std::map<Int, int> out;
    factor_into(n, out);
    return out;
}

// Squarefree part of num*den, sign included: the canonical square-class
// representative of a nonzero rational.
inline Int squarefree_part(const Rat& r) {
    if (r == 0) throw std::domain_error("squarefree_part: zero");
    Int n = rat_num(r) * rat_den(r);
    Int out = n < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(n))
        if (e % 2) out *= p;
    return out;
}

inline int legendre(Int a, const Int& p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline std::int64_t least_nonresidue(std::int64_t p) {
    for (std::int64_t r = 2; r < p; ++r)
        if (legendre(r, p) == -1) return r;
    throw std::logic_error("least_nonresidue: p has no nonresidue");
}

// Canonical square class of a mod p for arbitrary-precision odd prime p:
// 1 for residues, else the least positive nonresidue.
inline Int residue_square_class(Int a, const Int& p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::domain_error("residue_square_class: zero");
    if (legendre(a, p) == 1) return 1;
    for (Int r = 2; r < p; ++r)
        if (legendre(r, p) == -1) return r;
    throw std::logic_error("residue_square_class: no nonresidue");
}

// A place of Q: 2, an odd prime, or infinity.
struct Place {
    bool infinite = false;
    Int p = 0;
    static Place infinity() { return Place{true, 0}; }
    static Place prime(Int q) { return Place{false, std::move(q)}; }
    bool operator==(const Place& o) const { return infinite == o.infinite && p == o.p; }
    bool operator<(const Place& o) const {
        if (infinite != o.infinite) return !infinite;  // finite places first
        return p < o.p;
    }
    std::string str() const { return infinite ? "inf" : p.str(); }
};

// Hilbert symbol (a,b)_v over Q. Standard formulas: Legendre symbols on the
// p-free parts at odd p, the epsilon/omega exponent formula at 2.
inline int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: zero argument");
    Int an = rat_num(a) * rat_den(a);
    Int bn = rat_num(b) * rat_den(b);
    if (v.infinite) return (an < 0 && bn < 0) ? -1 : 1;
    const Int& p = v.p;
    auto split = [&](Int n) {
        int val = 0;
        while (n % p == 0) { n /= p; ++val; }
        return std::pair<int, Int>(val, n);
    };
    auto [alpha, u] = split(an);
    auto [beta, w] = split(bn);
    if (p == 2) {
        auto eps = [](const Int& n) { return static_cast<int>((n - 1) / 2 % 2 ? 1 : 0); };
        auto omg = [](const Int& n) { return static_cast<int>((n * n - 1) / 8 % 2 ? 1 : 0); };
        int e = eps(u) * eps(w) + alpha * omg(w) + beta * omg(u);
        return e % 2 ? -1 : 1;
    }
    int s = 1;
    if (alpha % 2 && beta % 2) s *= legendre(-1, p);
    if (beta % 2) s *= legendre(u, p);
    if (alpha % 2) s *= legendre(w, p);
    return s;
}

// Odd primes dividing num*den (the finite places where a unit can ramify).
inline std::vector<Int> odd_prime_support(const Rat& r) {
    std::vector<Int> out;
    for (auto& [p, e] : factorize(rat_num(r) * rat_den(r)))
        if (p != 2) out.push_back(p);
    return out;
}

}  // namespace msw
