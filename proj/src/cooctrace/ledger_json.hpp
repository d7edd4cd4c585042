#pragma once

// JSON form of a ledger, shared by the report and the checkpoint files.

#include <json.hpp>

#include "lsakit/cooctrace.hpp"

namespace lsakit::cooctrace::detail {

inline nlohmann::json to_json(const GainLedger& l) {
  using nlohmann::json;
  json traj = json::array();
  for (const auto& p : l.trajectory)
    traj.push_back({{"step", p.step},
                    {"similarity", p.similarity},
                    {"category", p.category ? json(std::string(to_string(*p.category))) : json(nullptr)}});
  json gains = json::object(), events = json::object();
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    const std::string name(to_string(static_cast<Category>(i)));
    gains[name] = l.gains[i];
    events[name] = l.events[i];
  }
  return {{"x", l.pair.x},
          {"y", l.pair.y},
          {"initial_similarity", l.initial_similarity},
          {"final_similarity", l.final_similarity},
          {"gains", gains},
          {"events", events},
          {"degenerate_steps", l.degenerate_steps},
          {"trajectory", traj}};
}

inline GainLedger ledger_from_json(const nlohmann::json& j) {
  GainLedger l;
  l.pair = {j.at("x").get<std::string>(), j.at("y").get<std::string>()};
  l.initial_similarity = j.at("initial_similarity").get<double>();
  l.final_similarity = j.at("final_similarity").get<double>();
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    const std::string name(to_string(static_cast<Category>(i)));
    l.gains[i] = j.at("gains").at(name).get<double>();
    l.events[i] = j.at("events").at(name).get<std::size_t>();
  }
  l.degenerate_steps = j.at("degenerate_steps").get<std::size_t>();
  for (const auto& p : j.at("trajectory")) {
    TracePoint tp{p.at("step").get<std::size_t>(), p.at("similarity").get<double>(), std::nullopt};
    if (!p.at("category").is_null()) {
      tp.category = parse_category(p.at("category").get<std::string>());
      if (!tp.category) throw InputError("unknown category in ledger");
    }
    l.trajectory.push_back(tp);
  }
  return l;
}

}  // namespace lsakit::cooctrace::detail
