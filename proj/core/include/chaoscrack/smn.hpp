// State-mapping networks of the Ikeda delay map run in fixed-point arithmetic.
//
// Every state has exactly one successor, so the network is a functional graph:
// each weakly connected component holds one cycle with trees hanging off it.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chaoscrack/core.hpp"

namespace chaoscrack {

/// Signed two's-complement fixed point: `total_bits` wide, `frac_bits` after the point.
struct FixedPointFormat {
  int total_bits = 9;
  int frac_bits = 3;

  /// Requires 1 <= frac_bits < total_bits <= 24.
  void validate() const;

  std::int64_t min_raw() const { return -(std::int64_t{1} << (total_bits - 1)); }
  std::int64_t max_raw() const { return (std::int64_t{1} << (total_bits - 1)) - 1; }
  std::uint64_t levels() const { return std::uint64_t{1} << total_bits; }

  /// Reduces modulo 2^w into the signed range.
  std::int64_t wrap(std::int64_t raw) const;
  /// Nearest grid value (ties to even); throws ValidationError if out of range.
  std::int64_t from_real(double value) const;
  double to_real(std::int64_t raw) const;
  /// Product rounded to the grid (ties to even), then wrapped.
  std::int64_t mul(std::int64_t a, std::int64_t b) const;
  /// sin in long double, rounded to the grid, then wrapped.
  std::int64_t sin(std::int64_t a) const;

  /// The smallest width that holds 19.5 (m's default) at `frac_bits`.
  static FixedPointFormat with_precision(int frac_bits);
};

/// Ikeda parameters as raw fixed-point values.
struct FixedIkedaParams {
  std::int64_t alpha = 0;
  std::int64_t m = 0;
  std::int64_t h = 0;

  static FixedIkedaParams from_real(double alpha, double m, double h,
                                    const FixedPointFormat& fmt);
  /// α = 48/8, h = 1/8, m = 156/8.
  static FixedIkedaParams reference(const FixedPointFormat& fmt);
};

/// One step of the delay line: x[i] <- x[i+1], and the last slot becomes
/// x_M + h(-α x_M + m sin x_1). Additions wrap.
std::vector<std::int64_t> fixed_ikeda_step(const std::vector<std::int64_t>& state,
                                           const FixedIkedaParams& params,
                                           const FixedPointFormat& fmt);

/// Node numbering: component i occupies bits [w·i, w·(i+1)) as an unsigned
/// w-bit pattern.
std::uint64_t encode_state(const std::vector<std::int64_t>& state, const FixedPointFormat& fmt);
std::vector<std::int64_t> decode_state(std::uint64_t node, std::size_t dims,
                                       const FixedPointFormat& fmt);

struct GraphComponent {
  std::uint32_t representative = 0;  // smallest node
  std::size_t size = 0;
  std::size_t cycle_length = 0;
  std::size_t cycle_count = 0;  // 1 for any functional graph
  std::size_t max_depth = 0;    // longest path into the cycle
};

/// Structure of an arbitrary functional graph given as a successor table.
struct FunctionalGraphAnalysis {
  std::vector<std::uint32_t> component_of;  // node -> index into components
  std::vector<std::uint32_t> depth;         // distance to the node's cycle
  std::vector<bool> on_cycle;
  std::vector<GraphComponent> components;
  std::size_t self_loops = 0;
  std::map<std::size_t, std::size_t> indegree_histogram;
  std::map<std::size_t, std::size_t> cycle_length_histogram;
  std::size_t min_cycle_length = 0;
  std::size_t max_cycle_length = 0;
  std::size_t max_depth = 0;

  std::size_t two_parent_nodes() const;
};

/// Throws ValidationError when a successor is out of range.
FunctionalGraphAnalysis analyze_functional_graph(const std::vector<std::uint32_t>& successor);

struct StateMappingNetwork {
  FixedPointFormat format;
  FixedIkedaParams params;
  std::size_t dims = 1;
  std::vector<std::uint32_t> successor;
  FunctionalGraphAnalysis analysis;

  std::size_t node_count() const { return successor.size(); }
  std::vector<std::uint32_t> component_nodes(std::size_t component) const;
};

inline constexpr std::uint64_t kDefaultSmnBudget = std::uint64_t{1} << 24;

/// Enumerates all 2^(w·M) states. Throws ValidationError if that exceeds `budget`.
StateMappingNetwork build_smn(const FixedIkedaParams& params, const FixedPointFormat& fmt,
                              std::size_t dims = 1, std::uint64_t budget = kDefaultSmnBudget);

struct DotOptions {
  bool cluster_components = true;
  std::size_t max_nodes = 4096;
};

/// Graphviz text with one edge per node. Throws ValidationError above `max_nodes`.
std::string export_dot(const StateMappingNetwork& smn, const DotOptions& options = {});

/// `metric=value` lines describing the network.
std::string smn_report(const StateMappingNetwork& smn);

}  // namespace chaoscrack
