#pragma once

#include <cstdint>

#include "ffdecomp/mpoly.hpp"
#include "ffdecomp/ratfun.hpp"

namespace ffd {

// Point-counting kernels. Each kernel has an OpenMP version (used everywhere)
// and a serial brute-force reference kept for testing and benchmarking. The
// parallel versions reduce integer partial sums, so results do not depend on
// the thread count.

/// |V(F)| over F_q^n, F over F_q in n variables. Parallel over the first n-1
/// coordinates, counting distinct roots of each specialization in the last one.
std::uint64_t count_affine(const MPoly& F);
/// Full grid scan.
std::uint64_t count_affine_serial(const MPoly& F);

/// Zeros of the homogenization of a nonzero bivariate F in P^2(F_q).
std::uint64_t count_projective(const BiPoly& F);
/// Evaluates the homogenization on every normalized representative.
std::uint64_t count_projective_serial(const BiPoly& F);

/// |{(x, y) in F_q^2 : f(x) = g(y)}| with equality in F_q u {inf}.
std::uint64_t count_pairs(const RatFun& f, const RatFun& g);
/// Double loop over (x, y).
std::uint64_t count_pairs_serial(const RatFun& f, const RatFun& g);

/// Throws LimitExceeded unless q^n <= limits().max_order.
void check_grid(std::uint64_t q, std::size_t n);

} // namespace ffd
