#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffdecomp/errors.hpp"

namespace ffd {

/// Raw element of some F_{p^k}: the coordinate vector (c_0, ..., c_{k-1}) with
/// respect to the power basis of the modulus, packed as sum c_i p^i. The packing
/// makes 0..q-1 the coordinate-lexicographic enumeration order (F_4: 0, 1, x, x+1).
/// An Elem carries no field; the owning Field performs all arithmetic.
struct Elem {
    std::uint32_t v = 0;

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_p[X]/(modulus) with modulus monic irreducible of degree k over F_p.
/// Immutable after construction; share it through FieldPtr.
class Field {
public:
    std::uint64_t p() const { return p_; }
    int k() const { return k_; }
    std::uint64_t order() const { return q_; }
    /// k+1 coefficients over F_p, constant term first, monic. X for prime fields.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    bool has_default_modulus() const { return default_modulus_; }
    /// "p^k", or "p^k/c0,...,ck" when the modulus was overridden.
    std::string descriptor() const;

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }
    /// The class of X modulo the modulus (0 in a prime field).
    Elem gen() const { return k_ == 1 ? Elem{0} : Elem{static_cast<std::uint32_t>(p_)}; }
    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t n) const;
    Elem from_coords(std::span<const std::uint32_t> c) const;
    std::vector<std::uint32_t> coords(Elem a) const;
    /// i-th element in enumeration order.
    Elem element(std::uint64_t i) const { return Elem{static_cast<std::uint32_t>(i)}; }
    std::vector<Elem> elements() const;
    bool in_prime_field(Elem a) const { return a.v < p_; }

    Elem add(Elem a, Elem b) const
    {
        if (p_ == 2)
            return Elem{a.v ^ b.v};
        if (k_ == 1) {
            std::uint64_t s = std::uint64_t{a.v} + b.v;
            return Elem{static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
        }
        return add_digits(a, b);
    }
    Elem neg(Elem a) const
    {
        if (p_ == 2 || a.v == 0)
            return a;
        if (k_ == 1)
            return Elem{static_cast<std::uint32_t>(p_ - a.v)};
        return neg_digits(a);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const
    {
        if (a.v == 0 || b.v == 0)
            return zero();
        if (k_ == 1)
            return Elem{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % p_)};
        if (!log_.empty()) {
            std::uint64_t e = std::uint64_t{log_[a.v]} + log_[b.v];
            if (e >= q_ - 1)
                e -= q_ - 1;
            return Elem{exp_[e]};
        }
        return mul_slow(a, b);
    }
    /// Throws DomainError on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    /// Negative exponents go through the inverse.
    Elem pow(Elem a, std::int64_t e) const;
    Elem pow_u(Elem a, std::uint64_t e) const;
    Elem frobenius(Elem a) const { return pow_u(a, p_); }
    /// The unique b with b^p = a.
    Elem pth_root(Elem a) const { return pow_u(a, q_ / p_); }

    bool same_as(const Field& other) const
    {
        return this == &other || (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
    }

    // Constructed via build_field; public for std::make_shared.
    Field(std::uint64_t p, int k, std::vector<std::uint32_t> modulus, bool default_modulus);

private:
    Elem add_digits(Elem a, Elem b) const;
    Elem neg_digits(Elem a) const;
    Elem mul_slow(Elem a, Elem b) const;
    void build_tables();

    std::uint64_t p_;
    int k_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    bool default_modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
};

/// Deterministic primality test, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// F_{p^k} with the lexicographically smallest (constant term first) monic
/// irreducible modulus of degree k.
FieldPtr build_field(std::uint64_t p, int k);

/// F_{p^k} with an explicit modulus (constant term first, k+1 entries, monic).
/// Throws InvalidArgument if the modulus is not irreducible.
FieldPtr build_field(std::uint64_t p, std::vector<std::uint32_t> modulus);

/// Deterministic irreducibility test over F_p for a monic coefficient vector.
bool is_irreducible_over_prime_field(std::uint64_t p, const std::vector<std::uint32_t>& monic);

/// F_{q^r} together with the embedding of its base field F_q.
class FieldExtension {
public:
    FieldExtension(FieldPtr base, FieldPtr ext, std::vector<Elem> table);

    const FieldPtr& base() const { return base_; }
    const FieldPtr& ext() const { return ext_; }
    int degree() const { return ext_->k() / base_->k(); }
    Elem embed(Elem a) const { return table_[a.v]; }
    /// Preimage in the base field, if the element lies in the embedded copy.
    std::optional<Elem> restrict(Elem a) const;

private:
    FieldPtr base_;
    FieldPtr ext_;
    std::vector<Elem> table_;
    std::vector<std::int64_t> inverse_;
};

FieldExtension extend_field(const FieldPtr& base, int r);

/// An element that remembers its field; arithmetic across fields throws DomainError.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem e) : field_(std::move(field)), e_(e) {}

    const FieldPtr& field() const { return field_; }
    Elem raw() const { return e_; }
    std::vector<std::uint32_t> coords() const { return field_->coords(e_); }
    bool is_zero() const { return e_.v == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const { return {field_, field_->neg(e_)}; }
    FieldElement inv() const { return {field_, field_->inv(e_)}; }
    FieldElement pow(std::int64_t e) const { return {field_, field_->pow(e_, e)}; }
    FieldElement frobenius() const { return {field_, field_->frobenius(e_)}; }

    bool operator==(const FieldElement& o) const { return field_->same_as(*o.field_) && e_ == o.e_; }

private:
    void check(const FieldElement& o) const;

    FieldPtr field_;
    Elem e_;
};

} // namespace ffd
