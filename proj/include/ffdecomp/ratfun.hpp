#pragma once

#include <vector>

#include "ffdecomp/poly.hpp"

namespace ffd {

/// A point of the projective line F_q u {inf}.
class PointOrInf {
public:
    static PointOrInf finite(Elem e) { return PointOrInf(false, e); }
    static PointOrInf infinity() { return PointOrInf(true, Elem{}); }

    bool is_infinity() const { return inf_; }
    /// Meaningful only when finite.
    Elem value() const { return e_; }
    /// Index in 0..q: finite elements by enumeration order, infinity last.
    std::uint64_t index(std::uint64_t q) const { return inf_ ? q : e_.v; }

    friend bool operator==(const PointOrInf& a, const PointOrInf& b)
    {
        return a.inf_ == b.inf_ && (a.inf_ || a.e_ == b.e_);
    }

private:
    PointOrInf(bool inf, Elem e) : inf_(inf), e_(e) {}
    bool inf_;
    Elem e_;
};

/// Reduced rational function num/den: gcd(num, den) = 1 and den monic.
class RatFun {
public:
    /// The identity X.
    explicit RatFun(const FieldPtr& field);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    /// max(deg num, deg den); 0 for constants (including zero).
    int degree() const { return std::max({num_.degree(), den_.degree(), 0}); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RatFun rat_make(const Poly& a, const Poly& b);

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
    Poly num_;
    Poly den_;
};

/// Canonical reduced form of a/b. Throws InvalidArgument if b = 0.
RatFun rat_make(const Poly& a, const Poly& b);
inline RatFun rat_make(const Poly& a)
{
    return rat_make(a, Poly::constant(a.field(), a.F().one()));
}

/// Evaluation on the projective line.
PointOrInf rat_eval(const RatFun& f, PointOrInf x);
inline PointOrInf rat_eval(const RatFun& f, Elem x)
{
    return rat_eval(f, PointOrInf::finite(x));
}

/// g(h(X)) in canonical form.
RatFun rat_compose(const RatFun& g, const RatFun& h);

/// { x in F_q : g(x) = v }, ascending.
std::vector<Elem> fiber(const RatFun& g, PointOrInf v);

/// Values f(x) for every x in F_q, as projective indices (q for infinity).
/// OpenMP-parallel over x.
std::vector<std::uint32_t> value_table(const RatFun& f);
/// Serial reference for value_table.
std::vector<std::uint32_t> value_table_serial(const RatFun& f);

/// Lexicographic (numerator, denominator) coefficient order, constant term first.
bool ratfun_less(const RatFun& a, const RatFun& b);

} // namespace ffd
