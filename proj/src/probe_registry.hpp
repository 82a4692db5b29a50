#pragma once

#include <functional>
#include <map>
#include <string>

#include "mixnorm/verify.hpp"

namespace mixnorm::detail {

struct ProbeDef {
    ProbeKind kind = ProbeKind::Exact;
    // CSV params column for a given spec (no commas; ';' between fields).
    std::function<std::string(const ProbeSpec&)> describe;
    // One trial.  `refined` reruns the identical random draw with every
    // generated function refined one dyadic level.
    std::function<double(const ProbeSpec&, std::uint64_t seed, bool refined)> trial;
    const char* base_notes = "";
};

// Name -> definition, ordered by name.
const std::map<std::string, ProbeDef>& probe_registry();

}  // namespace mixnorm::detail
