#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ffdecomp/field.hpp"

namespace ffd {

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

/// Dense univariate polynomial over a finite field, constant term first.
/// Always canonical: no trailing zero coefficients.
class Poly {
public:
    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    Poly(FieldPtr field, std::vector<Elem> coeffs);

    static Poly constant(FieldPtr field, Elem c);
    static Poly x(FieldPtr field);
    static Poly monomial(FieldPtr field, Elem c, int e);
    /// Product of (X - r) over the given roots.
    static Poly from_roots(FieldPtr field, std::span<const Elem> roots);

    const FieldPtr& field() const { return field_; }
    const Field& F() const { return *field_; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == field_->one(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }
    Elem lead() const { return c_.empty() ? Elem{} : c_.back(); }
    Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Elem{}; }
    std::span<const Elem> coeffs() const { return c_; }

    Elem eval(Elem x) const;
    Poly monic() const;
    Poly derivative() const;
    Poly scale(Elem s) const;
    /// Multiply by X^e.
    Poly shift(int e) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    /// Exact quotient; throws DomainError on a zero divisor.
    Poly operator/(const Poly& o) const;
    Poly operator%(const Poly& o) const;

    bool operator==(const Poly& o) const { return field_->same_as(*o.field_) && c_ == o.c_; }

private:
    void trim();
    void check(const Poly& o) const;

    FieldPtr field_;
    std::vector<Elem> c_;
};

/// (quotient, remainder) with deg remainder < deg b.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);
/// p(h(X)).
Poly compose(const Poly& p, const Poly& h);

struct PolyFactor {
    Poly poly;
    int multiplicity;
};

struct Factorization {
    Elem unit;
    std::vector<PolyFactor> factors;
};

/// Square-free decomposition of a monic polynomial: pairs (s_i, i) with
/// prod s_i^i = a and each s_i square-free.
std::vector<PolyFactor> squarefree_factorization(const Poly& monic);
/// Complete factorization into monic irreducibles; factors sorted by (degree, coefficients).
Factorization factor(const Poly& a);
bool is_irreducible(const Poly& a);
/// Distinct roots in the base field, ascending.
std::vector<Elem> roots(const Poly& a);
/// Number of distinct roots in the base field.
std::size_t count_roots(const Poly& a);

/// Canonical total order on polynomials over one field: degree, then coefficients
/// from the top down.
bool poly_less(const Poly& a, const Poly& b);

} // namespace ffd
