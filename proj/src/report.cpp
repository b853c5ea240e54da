#include "ffdecomp/report.hpp"

#include "ffdecomp/text.hpp"
#include "ffdecomp/version.hpp"

namespace ffd {

Json report_header(std::string_view command, std::string_view field, std::uint64_t seed)
{
    Json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = command;
    j["field"] = field;
    j["seed"] = seed;
    return j;
}

Json decomp_json(std::string_view command, const Field& F, std::uint64_t seed, const DecompReport& r)
{
    Json j = report_header(command, F.descriptor(), seed);
    j["q"] = r.q;
    j["n"] = r.n;
    j["d"] = r.d;
    j["delta"] = r.delta;
    j["epsilon"] = r.epsilon ? Json(rational_string(*r.epsilon)) : Json(nullptr);
    j["cond_i"] = r.cond_i;
    j["cond_ii"] = {{"exceptions", r.cond_ii.exceptions}, {"budget", r.cond_ii.budget}, {"pass", r.cond_ii.pass}};
    j["cond_iii"] = {{"threshold", rational_string(r.cond_iii.threshold)},
                     {"compares", r.cond_iii.cubed ? "q^3" : "q"},
                     {"pass", r.cond_iii.pass}};
    j["pair_count"] = r.pair_count;
    j["pair_threshold"] = rational_string(r.pair_threshold);
    j["pair_pass"] = r.pair_pass;
    j["hypotheses_hold"] = r.hypotheses_hold;
    j["h"] = r.h ? Json(format_ratfun(*r.h)) : Json(nullptr);
    j["verified"] = r.verified;
    return j;
}

Json bound_json(const BoundReport& r)
{
    Json j;
    j["instance_id"] = r.instance_id;
    j["field"] = r.field;
    j["q"] = r.q;
    j["degree"] = r.degree;
    j["poly"] = r.poly ? Json(format_terms(*r.poly)) : Json(nullptr);
    j["classification"] = to_string(r.classification);
    j["affine_count"] = r.affine_count;
    j["projective_count"] = r.projective_count;
    j["observed"] = r.observed;
    j["bound"] = r.bound;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    return j;
}

} // namespace ffd
