#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kcone/tolerance.hpp"

namespace kcone {

// One verified identity. pass holds exactly when defect <= threshold, so a
// strict-positivity check stores its margin shortfall as the defect.
struct CheckRecord {
  std::string name;
  std::string anchor;  // the identity the defect measures, in formula form
  double defect;
  double threshold;
  bool pass;
};

using ConfigValue =
    std::variant<std::int64_t, double, std::vector<double>, std::string>;

// Record of one scenario run. Serialization is canonical: checks sorted by
// name, object keys sorted, shortest round-trip doubles; identical inputs
// produce byte-identical output.
struct VerificationReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, ConfigValue>> config;
  TolerancePolicy tolerances;
  std::vector<CheckRecord> checks;

  void set_config(const std::string& key, ConfigValue value);
  CheckRecord& add(std::string name, std::string anchor, double defect,
                   double threshold);
  bool all_pass() const;
  std::string to_json() const;
};

}  // namespace kcone
