// Line-oriented `key=value` reports produced by the experiments and the CLI.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chaoscrack {

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> artifacts;

  void param(std::string key, std::string value);
  void metric(std::string key, double value);
  /// Throws std::out_of_range when the metric is missing.
  double get(const std::string& key) const;
  bool has(const std::string& key) const;

  /// `experiment=<name>`, then `param.<k>=<v>`, `<metric>=<v>` and
  /// `artifact=<path>` lines, in insertion order. Doubles use the shortest
  /// round-trip form.
  std::string to_text() const;
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

}  // namespace chaoscrack
