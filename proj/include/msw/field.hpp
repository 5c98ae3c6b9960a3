#pragma once

// The two scalar domains: Q with exact big rationals, F_p with p an odd prime.
// Field objects are small values passed around by copy; elements are plain
// value types, so everything downstream is immutable and thread-safe.

#include "msw/numtheory.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msw {

enum class FieldKind { Rationals, PrimeField };

struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    std::int64_t p = 0;  // PrimeField only, odd prime

    static FieldDescriptor rationals() { return {FieldKind::Rationals, 0}; }
    static FieldDescriptor prime_field(std::int64_t p) {
        if (p < 3 || p % 2 == 0 || !is_prime(Int(p)))
            throw std::domain_error("prime field requires an odd prime, got " + std::to_string(p));
        return {FieldKind::PrimeField, p};
    }
    bool operator==(const FieldDescriptor&) const = default;
};

class Rationals {
public:
    using Elem = Rat;
    using SquareClass = Int;  // signed squarefree integer
    static constexpr FieldKind kind = FieldKind::Rationals;

    FieldDescriptor descriptor() const { return FieldDescriptor::rationals(); }
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_int(std::int64_t n) const { return Rat(n); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    SquareClass square_class(const Elem& a) const {
        if (a == 0) throw std::domain_error("square_class: zero");
        return squarefree_part(a);
    }
    SquareClass trivial_class() const { return Int(1); }
    SquareClass class_mul(const SquareClass& a, const SquareClass& b) const {
        Int prod = a * b;
        Int out = prod < 0 ? -1 : 1;
        for (auto& [p, e] : factorize(prod))
            if (e % 2) out *= p;
        return out;
    }
    SquareClass class_neg_unit() const { return Int(-1); }  // class of -1

    std::string to_string(const Elem& a) const {
        if (rat_den(a) == 1) return rat_num(a).str();
        return rat_num(a).str() + "/" + rat_den(a).str();
    }
    std::string class_to_string(const SquareClass& c) const { return c.str(); }

    Elem parse(const std::string& s) const {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(Int(s));
            Int num(s.substr(0, slash)), den(s.substr(slash + 1));
            if (den == 0) throw std::domain_error("zero denominator");
            return Rat(num, den);
        } catch (const std::exception&) {
            throw std::domain_error("not a rational: '" + s + "'");
        }
    }
};

class PrimeField {
public:
    using Elem = std::int64_t;       // residue in [0,p)
    using SquareClass = std::int64_t;  // 1 or the least positive nonresidue
    static constexpr FieldKind kind = FieldKind::PrimeField;

    PrimeField() : p_(3) {}
    explicit PrimeField(std::int64_t p) : p_(FieldDescriptor::prime_field(p).p) {}

    std::int64_t p() const { return p_; }
    FieldDescriptor descriptor() const { return FieldDescriptor::prime_field(p_); }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(std::int64_t n) const {
        Elem r = n % p_;
        return r < 0 ? r + p_ : r;
    }
    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return ((a - b) % p_ + p_) % p_; }
    Elem mul(Elem a, Elem b) const { return a * b % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return static_cast<Elem>(powmod(Int(a), Int(p_ - 2), Int(p_)).convert_to<std::int64_t>());
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    SquareClass square_class(Elem a) const {
        if (a == 0) throw std::domain_error("square_class: zero");
        return legendre(Int(a), Int(p_)) == 1 ? 1 : least_nonresidue(p_);
    }
    SquareClass trivial_class() const { return 1; }
    SquareClass class_mul(SquareClass a, SquareClass b) const { return square_class(mul(a, b)); }
    SquareClass class_neg_unit() const { return square_class(p_ - 1); }

    std::string to_string(Elem a) const { return std::to_string(a); }
    std::string class_to_string(SquareClass c) const { return std::to_string(c); }

    Elem parse(const std::string& s) const {
        if (s.find('/') != std::string::npos)
            throw std::domain_error("fractional literal over a prime field: '" + s + "'");
        try {
            return from_int(static_cast<std::int64_t>(Int(s).convert_to<std::int64_t>()));
        } catch (const std::exception&) {
            throw std::domain_error("not an integer: '" + s + "'");
        }
    }

private:
    std::int64_t p_;
};

// Runtime field selection happens once, at the CLI boundary.
template <class Fn>
auto dispatch_field(const FieldDescriptor& d, Fn&& fn) {
    if (d.kind == FieldKind::Rationals) return fn(Rationals{});
    return fn(PrimeField{d.p});
}

}  // namespace msw
