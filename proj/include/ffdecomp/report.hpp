#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ffdecomp/bounds.hpp"
#include "ffdecomp/decomp.hpp"
#include "ffdecomp/field.hpp"

namespace ffd {

using Json = nlohmann::ordered_json;

/// tool, version, command, field, seed.
Json report_header(std::string_view command, std::string_view field, std::uint64_t seed);

/// Fixed DecompReport keys (q, d, delta, cond_i, cond_ii, cond_iii, pair_count,
/// pair_threshold, h, verified) after the header. Rationals as "num/den".
Json decomp_json(std::string_view command, const Field& F, std::uint64_t seed, const DecompReport& r);

Json bound_json(const BoundReport& r);

} // namespace ffd
