#include "ffdecomp/limits.hpp"

#include <cstdlib>
#include <string>

namespace ffd {

Limits& limits()
{
    static Limits instance = [] {
        Limits l;
        if (const char* env = std::getenv("FFDECOMP_MAX_ORDER")) {
            try {
                auto v = std::stoull(env);
                if (v >= 2 && v <= (std::uint64_t{1} << 32))
                    l.max_order = v;
            } catch (const std::exception&) {
                // malformed override: keep the default
            }
        }
        return l;
    }();
    return instance;
}

} // namespace ffd
