#pragma once

#include <string>

#include "stateq/engine.hpp"
#include "stateq/oracle.hpp"

namespace stateq {

// Structured output with stable keys: verdict, witness[], stats{},
// diagnostics{}. Rendered as canonical JSON (sorted keys), newline-terminated
// and byte-reproducible for identical runs.
std::string structured_output(const Outcome& outcome, const PetriNet& net,
                              std::uint64_t seed);
std::string structured_output(const OracleOutcome& outcome, const PetriNet& net);

// Plain-text statistics block (one `key: value` line each).
std::string stats_text(const EngineStats& stats);

}  // namespace stateq
