#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ffdecomp/field.hpp"
#include "ffdecomp/poly.hpp"
#include "ffdecomp/ratfun.hpp"

namespace ffd {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over a finite field. Terms are kept in a map
/// ordered lexicographically by exponent vector (first variable most significant);
/// zero coefficients are never stored.
class MPoly {
public:
    MPoly(FieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

    static MPoly constant(FieldPtr field, std::size_t nvars, Elem c);
    static MPoly var(FieldPtr field, std::size_t nvars, std::size_t i);
    static MPoly term(FieldPtr field, Elem c, Monomial e);
    /// Univariate polynomial placed in variable i of an nvars-variate ring.
    static MPoly from_poly(const Poly& p, std::size_t nvars, std::size_t i);

    const FieldPtr& field() const { return field_; }
    const Field& F() const { return *field_; }
    std::size_t nvars() const { return nvars_; }
    const std::map<Monomial, Elem>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// kZeroDegree for the zero polynomial.
    int total_degree() const;
    int degree(std::size_t var) const;
    Elem coeff(const Monomial& e) const;
    /// Greatest term in lex order. Undefined on zero.
    const std::pair<const Monomial, Elem>& lead() const { return *terms_.rbegin(); }

    /// Accumulates c * x^e.
    void add_term(const Monomial& e, Elem c);

    Elem eval(std::span<const Elem> point) const;
    /// Substitutes values for variables 0..n-2, leaving a polynomial in the last one.
    Poly specialize_last(std::span<const Elem> prefix) const;
    /// The polynomial as univariate in `var`; throws if another variable occurs.
    Poly to_poly(std::size_t var) const;

    MPoly scale(Elem s) const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly pow(unsigned e) const;
    /// Scaled so that the leading (lex-greatest) coefficient is 1.
    MPoly normalized() const;
    /// Variables reordered: new variable i is old variable perm[i].
    MPoly permuted(std::span<const std::size_t> perm) const;
    /// Extra trailing variables (of degree zero) appended.
    MPoly with_nvars(std::size_t n) const;

    bool operator==(const MPoly& o) const
    {
        return nvars_ == o.nvars_ && field_->same_as(*o.field_) && terms_ == o.terms_;
    }

private:
    void check(const MPoly& o) const;

    FieldPtr field_;
    std::size_t nvars_;
    std::map<Monomial, Elem> terms_;
};

/// Bivariate polynomial in (X, Y) = variables (0, 1).
using BiPoly = MPoly;

/// Canonical order for deduplication and deterministic output.
bool mpoly_less(const MPoly& a, const MPoly& b);

/// a / b when b divides a exactly, else nullopt. Throws DomainError on b = 0.
std::optional<MPoly> exact_div(const MPoly& a, const MPoly& b);
/// Normalized gcd via content / primitive-part recursion on the last variable.
MPoly mgcd(const MPoly& a, const MPoly& b);

/// Coefficients of a as a polynomial in its last variable (each over n-1 variables).
std::vector<MPoly> coeffs_in_last(const MPoly& a);
MPoly from_coeffs_in_last(const std::vector<MPoly>& c);

/// Homogenization with a new last variable, to total degree.
MPoly homogenize(const MPoly& a);
/// Coefficients mapped through a field embedding.
MPoly embed(const MPoly& a, const FieldExtension& ext);
/// Coefficients pulled back to the base field; nullopt if one does not lie in it.
std::optional<MPoly> restrict_coeffs(const MPoly& a, const FieldExtension& ext);

/// F(X, Y) = A(X) Q(Y) - B(X) P(Y) for f = A/B, g = P/Q.
BiPoly build_F(const RatFun& f, const RatFun& g);

struct MFactor {
    MPoly poly;
    int multiplicity;
};

struct MFactorization {
    Elem unit;
    /// Normalized irreducible factors, in canonical order.
    std::vector<MFactor> factors;
};

/// Factorization over the coefficient field by Kronecker substitution
/// X_i -> T^{w_i} (mixed radix w_i = prod_{j<i} (deg_j + 1)), univariate
/// factorization, and recombination of univariate factor subsets in order of
/// increasing degree. Throws LimitExceeded above limits().max_factor_degree.
MFactorization kronecker_factor(const MPoly& a);
/// Product of the factors times the unit.
MPoly expand(const MFactorization& fac);

/// For p irreducible over F_q: true iff p stays irreducible over F_{q^r} for
/// every prime r dividing its total degree.
bool is_absolutely_irreducible(const MPoly& p);

/// Cached F_{q^r} with its embedding; safe to call concurrently.
const FieldExtension& cached_extension(const FieldPtr& base, int r);

} // namespace ffd
