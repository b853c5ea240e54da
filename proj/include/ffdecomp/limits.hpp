#pragma once

#include <cstdint>

namespace ffd {

/// Process-wide size limits. Defaults can be overridden through the
/// environment variable FFDECOMP_MAX_ORDER (read once, on first use).
struct Limits {
    /// Largest field order (and enumeration grid size) any operation will touch.
    std::uint64_t max_order = std::uint64_t{1} << 26;
    /// Largest total degree accepted by multivariate factorization.
    int max_factor_degree = 12;
    /// Largest field order for which log/exp multiplication tables are built.
    std::uint64_t max_table_order = std::uint64_t{1} << 20;
    /// Multivariate find_h envelope: d + delta.
    int max_mv_degree_sum = 10;
    /// Multivariate find_h envelope: number of X variables.
    int max_mv_vars = 3;
};

Limits& limits();

} // namespace ffd
