#include "kcone/report.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"

namespace kcone {

void VerificationReport::set_config(const std::string& key, ConfigValue value) {
  for (auto& entry : config)
    if (entry.first == key) {
      entry.second = std::move(value);
      return;
    }
  config.emplace_back(key, std::move(value));
}

CheckRecord& VerificationReport::add(std::string name, std::string anchor,
                                     double defect, double threshold) {
  checks.push_back(CheckRecord{std::move(name), std::move(anchor), defect,
                               threshold, defect <= threshold});
  return checks.back();
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

std::string VerificationReport::to_json() const {
  nlohmann::json root;
  root["scenario"] = scenario;
  root["seed"] = seed;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : config)
    std::visit([&cfg, k = key](const auto& v) { cfg[k] = v; }, value);
  cfg["tol_rank"] = tolerances.rank_tol;
  cfg["tol_defect"] = tolerances.defect_tol;
  cfg["fd_step"] = tolerances.fd_step;
  root["config"] = cfg;
  std::vector<CheckRecord> ordered = checks;
  std::sort(ordered.begin(), ordered.end(),
            [](const CheckRecord& a, const CheckRecord& b) {
              return a.name < b.name;
            });
  nlohmann::json list = nlohmann::json::array();
  for (const CheckRecord& c : ordered)
    list.push_back({{"name", c.name},
                    {"anchor", c.anchor},
                    {"defect", c.defect},
                    {"threshold", c.threshold},
                    {"pass", c.pass}});
  root["checks"] = list;
  root["pass"] = all_pass();
  return root.dump(2) + "\n";
}

}  // namespace kcone
