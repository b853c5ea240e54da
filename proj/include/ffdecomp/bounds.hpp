#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffdecomp/exact.hpp"
#include "ffdecomp/mpoly.hpp"

namespace ffd {

/// a + b sqrt(q), kept symbolic. All comparisons square away the radical.
struct SqrtExpr {
    Rational a;
    Rational b;
    BigInt q;
};

/// Sign of c - (a + b sqrt(q)).
int compare(const Rational& c, const SqrtExpr& s);
std::string to_string(const SqrtExpr& s);

/// [lower, upper] with symbolic endpoints.
struct Interval {
    SqrtExpr lower;
    SqrtExpr upper;
    bool contains(const Rational& x) const { return compare(x, lower) >= 0 && compare(x, upper) <= 0; }
};

/// Affine count interval for an absolutely irreducible curve of degree D:
/// [q + 1 - (D-1)(D-2) sqrt(q) - D, q + 1 + (D-1)(D-2) sqrt(q)].
Interval ap_interval(int D, std::uint64_t q);
/// Projective band q + 1 -+ (D-1)(D-2) sqrt(q).
Interval ap_projective_band(int D, std::uint64_t q);

/// floor(D^2 / 4): zero count cap for irreducible, not absolutely irreducible curves.
std::uint64_t non_abs_bound(int D);

/// m(q+1) + sqrt(q) m (d'/m - 1)(d'/m - 2): the sum of per-factor upper bounds at
/// the equal split d_i = d'/m.
SqrtExpr factor_sum_bound(int m, int dprime, std::uint64_t q);

/// Band q^{n-1} -+ [(d-1)(d-2) q^{n-3/2} + 5 d^{13/3} q^{n-2}], written as
/// center -+ (u sqrt(q) + v cbrt(d)) with rational u, v.
struct CmBand {
    Rational center;
    Rational u;
    Rational v;
    BigInt q;
    BigInt d;
    /// |x - center| <= u sqrt(q) + v cbrt(d), decided in integer arithmetic.
    bool contains(const Rational& x) const;
};

CmBand cm_band(int n, int d, std::uint64_t q);

/// t <= u sqrt(q) + v cbrt(d) for t, u, v >= 0, exactly.
bool leq_sqrt_cbrt(const Rational& t, const Rational& u, const BigInt& q, const Rational& v, const BigInt& d);

enum class Classification { absolutely_irreducible, irreducible_not_absolutely };
std::string to_string(Classification c);

/// One checked bound: a single irreducible curve over F_q.
struct BoundReport {
    std::string instance_id;
    std::string field;
    std::uint64_t q = 0;
    int degree = 0;
    std::optional<BiPoly> poly;
    Classification classification = Classification::absolutely_irreducible;
    std::uint64_t affine_count = 0;
    std::uint64_t projective_count = 0;
    /// Projective count.
    std::uint64_t observed = 0;
    /// The checked inequality in text form.
    std::string bound;
    bool pass = false;
    std::uint64_t seed = 0;
};

/// Classifies an F_q-irreducible bivariate F and checks the applicable bound:
/// projective and affine (D-1)(D-2)sqrt(q) bands when absolutely irreducible,
/// floor(D^2/4) on both counts otherwise.
BoundReport check_irreducible_curve(const BiPoly& F, std::string instance_id);

enum class SampleKind {
    random,           ///< uniformly random polynomials, every irreducible factor checked
    absolutely_irreducible,  ///< random polynomials kept only when absolutely irreducible
    norm_form,        ///< products of Galois conjugates: irreducible, not absolutely
};

struct SamplerConfig {
    std::vector<std::uint64_t> orders{5, 7, 11, 13};
    int min_degree = 1;
    int max_degree = 4;
    /// Instances per field order.
    int per_field = 50;
    std::uint64_t seed = 1;
    SampleKind kind = SampleKind::random;
};

/// Seeded sample, checked in parallel, reports ordered by instance index.
std::vector<BoundReport> verify_bounds_on_sample(const SamplerConfig& cfg);

/// Uniform random bivariate polynomial of exact total degree D.
BiPoly random_bipoly(const FieldPtr& field, int D, std::mt19937_64& rng);

/// Independent stream for instance i of field order q.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t q, std::uint64_t i);

/// prod over the Galois group of F_{q^r}/F_q of G^sigma, pulled back to F_q.
BiPoly norm_form(const BiPoly& G, const FieldExtension& ext);

/// CSV header and rows: instance id, q, degree, classification, observed, bound, pass, seed.
std::string bounds_csv(const std::vector<BoundReport>& reports);

} // namespace ffd
