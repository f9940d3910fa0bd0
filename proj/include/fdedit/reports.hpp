// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "json.hpp"

#include "fdedit/consistency.hpp"
#include "fdedit/expansion.hpp"
#include "fdedit/theorem.hpp"

namespace fdedit {

// nlohmann::json objects keep keys sorted, so dump() output is stable.

nlohmann::json to_json(const ConsistencyReport& rep);
nlohmann::json to_json(const TheoremReport& rep);
/// Scalars and vectors only; the factor matrices are omitted.
nlohmann::json to_json(const ExpansionReport& rep);

/// One row per trial: trial,raw_score,smoothed_score,ratio,strict,degenerate.
std::string theorem_csv(const TheoremReport& rep);

}  // namespace fdedit
