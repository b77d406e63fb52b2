#include "chaoscrack/report.hpp"

#include <charconv>
#include <stdexcept>

namespace chaoscrack {

void ExperimentReport::param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

void ExperimentReport::metric(std::string key, double value) {
  metrics.emplace_back(std::move(key), value);
}

double ExperimentReport::get(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw std::out_of_range("report has no metric " + key);
}

bool ExperimentReport::has(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return true;
  }
  return false;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string ExperimentReport::to_text() const {
  std::string out = "experiment=" + name + "\n";
  for (const auto& [k, v] : params) out += "param." + k + "=" + v + "\n";
  for (const auto& [k, v] : metrics) out += k + "=" + format_double(v) + "\n";
  for (const auto& a : artifacts) out += "artifact=" + a + "\n";
  return out;
}

}  // namespace chaoscrack
