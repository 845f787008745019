#pragma once

#include "packlab/core.hpp"

#include <json.hpp>

namespace packlab {

// Trace wire format, exact integers only:
//   {"S": int, "initial_s": int, "initial_l": int,
//    "entries": [[bin_size, num_s, num_l], ...]}
nlohmann::json trace_to_json(const Trace& t);
Trace trace_from_json(const nlohmann::json& j);

}  // namespace packlab
