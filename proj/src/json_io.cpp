#include "packlab/json_io.hpp"

namespace packlab {

nlohmann::json trace_to_json(const Trace& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const TraceEntry& e : t.entries)
    entries.push_back({e.bin_size, e.fill.num_s, e.fill.num_l});
  return {{"S", t.params.S},
          {"initial_s", t.initial_s},
          {"initial_l", t.initial_l},
          {"entries", std::move(entries)}};
}

Trace trace_from_json(const nlohmann::json& j) {
  Params p(j.at("S").get<long long>());
  Trace t{p, j.at("initial_s").get<long long>(), j.at("initial_l").get<long long>(), {}};
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("trace entry must be [bin_size, num_s, num_l]");
    t.entries.push_back(
        {e[0].get<long long>(), Fill{e[1].get<long long>(), e[2].get<long long>()}});
  }
  return t;
}

}  // namespace packlab
