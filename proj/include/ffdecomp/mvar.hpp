#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ffdecomp/decomp.hpp"
#include "ffdecomp/mpoly.hpp"

namespace ffd {

/// Reduced n-variate rational function num / den: gcd(num, den) = 1 and den normalized.
class MRatFun {
public:
    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    std::size_t nvars() const { return num_.nvars(); }
    /// max of the total degrees (0 for constants).
    int degree() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    bool operator==(const MRatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    MRatFun(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {}
    friend MRatFun mrat_make(const MPoly& a, const MPoly& b);

    MPoly num_;
    MPoly den_;
};

/// a / b reduced. Throws InvalidArgument when b = 0 or the shapes differ.
MRatFun mrat_make(const MPoly& a, const MPoly& b);
MRatFun mrat_make(const MPoly& a);
/// A univariate reduced function as a one-variable MRatFun.
MRatFun mrat_from(const RatFun& f);

/// nullopt when num and den both vanish at x (f undefined there).
std::optional<PointOrInf> mrat_eval(const MRatFun& f, std::span<const Elem> x);

/// Number of points of F_q^n where f is undefined.
std::uint64_t undefined_count(const MRatFun& f);

/// |{(x, y) in F_q^n x F_q : f defined at x, f(x) = g(y)}|.
std::uint64_t count_pairs_mv(const MRatFun& f, const RatFun& g);
std::uint64_t count_pairs_mv_serial(const MRatFun& f, const RatFun& g);

/// Multivariate theorem: q^3 eps^6 >= (39/5)^3 (d+delta)^13 and pair count
/// >= q^n (floor(delta/2) + eps). The threshold is reported in cubed form.
DecompReport check_T41(const MRatFun& f, const RatFun& g, const Rational& eps);

/// g(h), reduced. Throws DomainError when the denominator vanishes identically.
MRatFun mrat_compose(const RatFun& g, const MRatFun& h);

/// f == g(h) symbolically.
bool verify_h_mv(const MRatFun& f, const RatFun& g, const MRatFun& h);

/// Rational-root search for h with f = g(h). Candidate numerators and denominators
/// are normalized divisors of c_0 and c_delta from Kronecker factorization, of
/// total degree <= d/delta. Best effort: nullopt only means no candidate verified.
/// Throws LimitExceeded outside d + delta <= 10, n <= 3 (see limits()).
std::optional<MRatFun> find_h_mv(const MRatFun& f, const RatFun& g);

/// Canonical order: num first, then den, by mpoly_less.
bool mrat_less(const MRatFun& a, const MRatFun& b);

} // namespace ffd
