#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ffdecomp/counting.hpp"
#include "ffdecomp/exact.hpp"
#include "ffdecomp/ratfun.hpp"

namespace ffd {

/// Hypothesis diagnostics for one (f, g) pair, plus the outcome of the search for h.
///
/// The exception set Y2 is { a in F_q u {inf} : |g^{-1}(g(a)) cap F_q| <= delta/2 };
/// fibers are always taken inside F_q, so for polynomial g the point a = inf is
/// always exceptional and is counted against the budget.
struct DecompReport {
    std::uint64_t q = 0;
    int n = 1;  ///< number of X variables (1 for univariate f)
    int d = 0;
    int delta = 0;
    std::optional<Rational> epsilon;

    bool cond_i = false;  ///< f(F_q) within g(F_q u {inf})

    struct {
        std::uint64_t exceptions = 0;
        std::uint64_t budget = 0;
        bool pass = false;
    } cond_ii;

    struct {
        Rational threshold;  ///< q must reach this (for check_T41: q^3 must reach it)
        bool cubed = false;  ///< threshold compares against q^3
        bool pass = false;
    } cond_iii;

    std::uint64_t pair_count = 0;
    /// check_T31/T41: q^n (floor(delta/2) + eps). check_T1: the lower bound
    /// (floor(delta/2) + 1)(q - d |Y2|) implied by conditions (i) and (ii).
    Rational pair_threshold;
    bool pair_pass = false;

    std::optional<RatFun> h;
    bool verified = false;

    /// All hypotheses of the checked theorem hold.
    bool hypotheses_hold = false;
};

/// Conditions (i)-(iii) of the univariate theorem with exception budget 8(d+delta)
/// and threshold q >= (d+delta)^4.
DecompReport check_T1(const RatFun& f, const RatFun& g);

/// Pair-count form: count >= q (floor(delta/2) + eps) and q eps^2 >= (d+delta)^4,
/// both under exact rational arithmetic. Throws InvalidArgument unless 0 < eps <= 1.
DecompReport check_T31(const RatFun& f, const RatFun& g, const Rational& eps);

/// Some h with f = g(h), reduced, or nullopt when none exists. Candidates come from
/// the rational roots of F(X, Y) = sum c_j(X) Y^j over F_q[X]: numerators divide
/// c_0 and denominators divide c_delta. Ties are broken by ratfun_less.
std::optional<RatFun> find_h(const RatFun& f, const RatFun& g);

/// Runs find_h and fills h / verified.
void attach_search(DecompReport& report, const RatFun& f, const RatFun& g);

/// Small-fiber sets of g.
struct FiberDiagnostics {
    int delta = 0;
    /// { a in F_q : |fiber(g, g(a))| <= delta/2 }, ascending.
    std::vector<Elem> y2_finite;
    /// Whether a = inf is also exceptional.
    bool y2_infinity = false;
    /// V = { v in g(F_q) : |fiber(g, v)| <= delta/2 } = g(y2_finite), as projective indices.
    std::vector<std::uint64_t> v_set;
    /// |V| <= |Y2 cap F_q| <= (delta/2) |V|
    bool sandwich_holds = false;
    std::uint64_t y2_size() const { return y2_finite.size() + (y2_infinity ? 1 : 0); }
};

FiberDiagnostics small_fiber_diagnostics(const RatFun& g);

/// |{ x in F_q : f(x) not in g(F_q) }|.
std::uint64_t image_miss_count(const RatFun& f, const RatFun& g);

/// Finite-q proxy for the two o(q) conditions: measured cardinalities against
/// caller-supplied thresholds.
struct ProxyCheck {
    std::uint64_t small_fiber_count = 0;  ///< |Y2 cap F_q|
    std::uint64_t image_miss = 0;
    bool small_fiber_pass = false;
    bool image_pass = false;
};

ProxyCheck check_small_fiber_proxy(const RatFun& f, const RatFun& g, std::uint64_t max_small_fiber,
                                   std::uint64_t max_image_miss);

namespace family {

/// X^r - X with F_r a subfield of F_q.
struct ArtinSchreier {
    std::uint64_t r;
};
/// prod_{u in U} (X - u), U the F_p-span of the given elements.
struct Subspace {
    std::vector<Elem> spanning;
};
/// X^d with d | q - 1.
struct Power {
    int d;
};
/// g(phi(X)) for a degree-1 phi.
struct MoebiusPre {
    RatFun g;
    RatFun phi;
};
/// phi(g(X)) for a degree-1 phi.
struct MoebiusPost {
    RatFun g;
    RatFun phi;
};

} // namespace family

using GFamily = std::variant<family::ArtinSchreier, family::Subspace, family::Power, family::MoebiusPre,
                             family::MoebiusPost>;

RatFun gen_g_family(const GFamily& kind, const FieldPtr& field);

/// F_p-span of the given elements, ascending.
std::vector<Elem> fp_span(const Field& field, const std::vector<Elem>& gens);

} // namespace ffd
