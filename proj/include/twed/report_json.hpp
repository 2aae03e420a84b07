#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "kernel.hpp"
#include "report.hpp"
#include "series.hpp"

namespace twed {

  using json = nlohmann::json;

  /// Non-finite numbers become strings; JSON has no representation for them.
  inline json json_number(double x) {
    if (std::isfinite(x)) { return x; }
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  }

  inline void to_json(json& j, const TimeSeries& s) {
    j = json{{"dim", s.dim()},
             {"timestamps", std::vector<double>(s.timestamps().begin(), s.timestamps().end())},
             {"values", std::vector<double>(s.values().begin(), s.values().end())}};
  }

  inline void to_json(json& j, const TwedParams& p) {
    j = json{{"lambda", p.lambda()}, {"gamma", p.gamma()}, {"norm", std::string(to_string(p.norm()))}};
  }

  inline void to_json(json& j, const Witness& w) {
    j = json{{"trial", w.trial}, {"inputs", w.inputs}, {"params", w.params}, {"lhs", json_number(w.lhs)},
             {"rhs", json_number(w.rhs)}, {"gap", json_number(w.gap)}, {"detail", w.detail}};
  }

  inline void to_json(json& j, const PropertyReport& r) {
    j = json{{"name", r.name},           {"passed", r.passed()},   {"trials", r.trials},
             {"checks", r.checks},       {"violations", r.violations}, {"tolerance", r.tolerance},
             {"seed", r.seed}};
    j["worst_witness"] = r.worst ? json(*r.worst) : json(nullptr);
  }

  inline void to_json(json& j, const EditStep& s) {
    j = json{{"op", std::string(to_string(s.op))}, {"i", s.i}, {"j", s.j}, {"cost", s.cost}};
  }

  inline json alignment_to_json(const Alignment& a) {
    return json{{"distance", a.distance}, {"path_cost", a.path.total_cost()}, {"steps", a.path.steps}};
  }

} // namespace twed
