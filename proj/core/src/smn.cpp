#include "chaoscrack/smn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace chaoscrack {

void FixedPointFormat::validate() const {
  if (frac_bits < 1 || frac_bits >= total_bits || total_bits > 24) {
    throw ValidationError("fixed-point format needs 1 <= e < w <= 24 (got w=" +
                          std::to_string(total_bits) + ", e=" + std::to_string(frac_bits) + ")");
  }
}

std::int64_t FixedPointFormat::wrap(std::int64_t raw) const {
  const auto mask = static_cast<std::uint64_t>(levels() - 1);
  const auto bits = static_cast<std::uint64_t>(raw) & mask;
  const auto sign = std::uint64_t{1} << (total_bits - 1);
  return bits & sign ? static_cast<std::int64_t>(bits) - static_cast<std::int64_t>(levels())
                     : static_cast<std::int64_t>(bits);
}

std::int64_t FixedPointFormat::from_real(double value) const {
  const long double scaled = std::nearbyint(std::ldexp(static_cast<long double>(value), frac_bits));
  if (!std::isfinite(static_cast<double>(scaled)) || scaled < min_raw() || scaled > max_raw()) {
    std::ostringstream msg;
    msg << value << " is not representable with w=" << total_bits << ", e=" << frac_bits;
    throw ValidationError(msg.str());
  }
  return static_cast<std::int64_t>(scaled);
}

double FixedPointFormat::to_real(std::int64_t raw) const {
  return std::ldexp(static_cast<double>(raw), -frac_bits);
}

std::int64_t FixedPointFormat::mul(std::int64_t a, std::int64_t b) const {
  const std::int64_t p = a * b;
  std::int64_t q = p >> frac_bits;  // floor
  const std::int64_t r = p - (q << frac_bits);
  const std::int64_t half = std::int64_t{1} << (frac_bits - 1);
  if (r > half || (r == half && (q & 1) != 0)) ++q;
  return wrap(q);
}

std::int64_t FixedPointFormat::sin(std::int64_t a) const {
  const long double s = std::sin(std::ldexp(static_cast<long double>(a), -frac_bits));
  return wrap(static_cast<std::int64_t>(std::nearbyint(std::ldexp(s, frac_bits))));
}

FixedPointFormat FixedPointFormat::with_precision(int frac_bits) {
  // 19.5 needs five integer bits plus the sign.
  FixedPointFormat fmt{frac_bits + 6, frac_bits};
  fmt.validate();
  return fmt;
}

FixedIkedaParams FixedIkedaParams::from_real(double alpha, double m, double h,
                                             const FixedPointFormat& fmt) {
  fmt.validate();
  return {fmt.from_real(alpha), fmt.from_real(m), fmt.from_real(h)};
}

FixedIkedaParams FixedIkedaParams::reference(const FixedPointFormat& fmt) {
  return from_real(48.0 / 8.0, 156.0 / 8.0, 1.0 / 8.0, fmt);
}

std::vector<std::int64_t> fixed_ikeda_step(const std::vector<std::int64_t>& state,
                                           const FixedIkedaParams& p,
                                           const FixedPointFormat& fmt) {
  if (state.empty()) throw ValidationError("fixed_ikeda_step needs a non-empty state");
  std::vector<std::int64_t> next(state.size());
  std::copy(state.begin() + 1, state.end(), next.begin());
  const std::int64_t last = state.back();
  const std::int64_t drive = fmt.wrap(fmt.mul(p.m, fmt.sin(state.front())) - fmt.mul(p.alpha, last));
  next.back() = fmt.wrap(last + fmt.mul(p.h, drive));
  return next;
}

std::uint64_t encode_state(const std::vector<std::int64_t>& state, const FixedPointFormat& fmt) {
  std::uint64_t node = 0;
  const std::uint64_t mask = fmt.levels() - 1;
  for (std::size_t i = 0; i < state.size(); ++i) {
    node |= (static_cast<std::uint64_t>(state[i]) & mask) << (fmt.total_bits * i);
  }
  return node;
}

std::vector<std::int64_t> decode_state(std::uint64_t node, std::size_t dims,
                                       const FixedPointFormat& fmt) {
  std::vector<std::int64_t> state(dims);
  const std::uint64_t mask = fmt.levels() - 1;
  for (std::size_t i = 0; i < dims; ++i) {
    state[i] = fmt.wrap(static_cast<std::int64_t>((node >> (fmt.total_bits * i)) & mask));
  }
  return state;
}

std::size_t FunctionalGraphAnalysis::two_parent_nodes() const {
  const auto it = indegree_histogram.find(2);
  return it == indegree_histogram.end() ? 0 : it->second;
}

namespace {

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

FunctionalGraphAnalysis analyze_functional_graph(const std::vector<std::uint32_t>& succ) {
  const std::size_t n = succ.size();
  FunctionalGraphAnalysis g;
  if (n == 0) return g;
  for (const auto s : succ) {
    if (s >= n) throw ValidationError("successor out of range");
  }

  // Weak components.
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto a = find_root(parent, v);
    const auto b = find_root(parent, succ[v]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  g.component_of.assign(n, 0);
  std::vector<std::uint32_t> index_of_root(n, UINT32_MAX);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto r = find_root(parent, v);
    if (index_of_root[r] == UINT32_MAX) {
      index_of_root[r] = static_cast<std::uint32_t>(g.components.size());
      g.components.push_back({v, 0, 0, 0, 0});
    }
    g.component_of[v] = index_of_root[r];
    ++g.components[index_of_root[r]].size;
  }

  // Peel off nodes with no remaining parents; what survives lies on cycles.
  std::vector<std::uint32_t> indegree(n, 0);
  for (const auto s : succ) ++indegree[s];
  for (const auto d : indegree) ++g.indegree_histogram[d];
  std::vector<std::uint32_t> remaining = indegree;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (remaining[v] == 0) stack.push_back(v);
  }
  g.on_cycle.assign(n, true);
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    g.on_cycle[v] = false;
    if (--remaining[succ[v]] == 0) stack.push_back(succ[v]);
  }

  // Count cycles per component by walking each one once.
  std::vector<bool> seen(n, false);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!g.on_cycle[v] || seen[v]) continue;
    std::size_t len = 0;
    for (auto w = v; !seen[w]; w = succ[w]) {
      seen[w] = true;
      ++len;
    }
    auto& c = g.components[g.component_of[v]];
    ++c.cycle_count;
    c.cycle_length = len;
    ++g.cycle_length_histogram[len];
    if (len == 1) ++g.self_loops;
  }

  // Depths by BFS from the cycles along reversed edges.
  std::vector<std::uint32_t> first_child(n + 1, 0);
  for (const auto s : succ) ++first_child[s + 1];
  std::partial_sum(first_child.begin(), first_child.end(), first_child.begin());
  std::vector<std::uint32_t> children(n);
  {
    std::vector<std::uint32_t> fill(first_child.begin(), first_child.end() - 1);
    for (std::uint32_t v = 0; v < n; ++v) children[fill[succ[v]]++] = v;
  }
  g.depth.assign(n, 0);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (g.on_cycle[v]) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (auto k = first_child[v]; k < first_child[v + 1]; ++k) {
      const auto child = children[k];
      if (g.on_cycle[child]) continue;
      g.depth[child] = g.depth[v] + 1;
      queue.push_back(child);
    }
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    auto& c = g.components[g.component_of[v]];
    c.max_depth = std::max<std::size_t>(c.max_depth, g.depth[v]);
    g.max_depth = std::max<std::size_t>(g.max_depth, g.depth[v]);
  }
  g.min_cycle_length = g.cycle_length_histogram.begin()->first;
  g.max_cycle_length = g.cycle_length_histogram.rbegin()->first;
  return g;
}

std::vector<std::uint32_t> StateMappingNetwork::component_nodes(std::size_t component) const {
  if (component >= analysis.components.size()) throw ValidationError("no such component");
  std::vector<std::uint32_t> nodes;
  for (std::uint32_t v = 0; v < successor.size(); ++v) {
    if (analysis.component_of[v] == component) nodes.push_back(v);
  }
  return nodes;
}

StateMappingNetwork build_smn(const FixedIkedaParams& params, const FixedPointFormat& fmt,
                              std::size_t dims, std::uint64_t budget) {
  fmt.validate();
  if (dims == 0) throw ValidationError("build_smn needs at least one state component");
  const std::size_t bits = static_cast<std::size_t>(fmt.total_bits) * dims;
  if (bits > 32 || (std::uint64_t{1} << bits) > budget) {
    throw ValidationError("state space 2^" + std::to_string(bits) +
                          " exceeds the enumeration budget");
  }
  StateMappingNetwork smn{fmt, params, dims, {}, {}};
  const std::size_t n = std::size_t{1} << bits;
  smn.successor.resize(n);

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, n / 4096));
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const auto next = fixed_ikeda_step(decode_state(v, dims, fmt), params, fmt);
      smn.successor[v] = static_cast<std::uint32_t>(encode_state(next, fmt));
    }
  };
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back(fill, std::min(n, w * chunk), std::min(n, (w + 1) * chunk));
  }
  fill(0, std::min(n, chunk));
  for (auto& t : pool) t.join();

  smn.analysis = analyze_functional_graph(smn.successor);
  return smn;
}

namespace {

std::string node_label(const StateMappingNetwork& smn, std::uint32_t v) {
  std::ostringstream out;
  const auto state = decode_state(v, smn.dims, smn.format);
  for (std::size_t i = 0; i < state.size(); ++i) {
    out << (i ? "," : "") << smn.format.to_real(state[i]);
  }
  return out.str();
}

}  // namespace

std::string export_dot(const StateMappingNetwork& smn, const DotOptions& options) {
  const std::size_t n = smn.node_count();
  if (n > options.max_nodes) {
    throw ValidationError("network has " + std::to_string(n) + " nodes, above the render limit " +
                          std::to_string(options.max_nodes));
  }
  std::ostringstream out;
  out << "digraph smn {\n  node [shape=point];\n";
  auto emit_node = [&](std::uint32_t v, const char* indent) {
    out << indent << "n" << v << " [label=\"" << node_label(smn, v) << "\"";
    if (smn.analysis.on_cycle[v]) out << ", color=red";
    out << "];\n";
  };
  if (options.cluster_components) {
    std::vector<std::vector<std::uint32_t>> members(smn.analysis.components.size());
    for (std::uint32_t v = 0; v < n; ++v) members[smn.analysis.component_of[v]].push_back(v);
    for (std::size_t c = 0; c < members.size(); ++c) {
      out << "  subgraph cluster_" << c << " {\n";
      for (const auto v : members[c]) emit_node(v, "    ");
      out << "  }\n";
    }
  } else {
    for (std::uint32_t v = 0; v < n; ++v) emit_node(v, "  ");
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    out << "  n" << v << " -> n" << smn.successor[v] << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string smn_report(const StateMappingNetwork& smn) {
  const auto& g = smn.analysis;
  std::ostringstream out;
  out << "total_bits=" << smn.format.total_bits << "\n";
  out << "frac_bits=" << smn.format.frac_bits << "\n";
  out << "dims=" << smn.dims << "\n";
  out << "node_count=" << smn.node_count() << "\n";
  out << "component_count=" << g.components.size() << "\n";
  std::size_t max_cycles = 0;
  std::size_t largest = 0;
  for (const auto& c : g.components) {
    max_cycles = std::max(max_cycles, c.cycle_count);
    largest = std::max(largest, c.size);
  }
  out << "max_cycles_per_component=" << max_cycles << "\n";
  out << "largest_component=" << largest << "\n";
  out << "self_loops=" << g.self_loops << "\n";
  out << "min_cycle_length=" << g.min_cycle_length << "\n";
  out << "max_cycle_length=" << g.max_cycle_length << "\n";
  out << "max_transient_depth=" << g.max_depth << "\n";
  const auto zero = encode_state(std::vector<std::int64_t>(smn.dims, 0), smn.format);
  out << "zero_state_cycle_length="
      << g.components[g.component_of[zero]].cycle_length << "\n";
  out << "two_parent_nodes=" << g.two_parent_nodes() << "\n";
  for (const auto& [len, count] : g.cycle_length_histogram) {
    out << "cycle_length_histogram." << len << "=" << count << "\n";
  }
  for (const auto& [deg, count] : g.indegree_histogram) {
    out << "indegree_histogram." << deg << "=" << count << "\n";
  }
  return out.str();
}

}  // namespace chaoscrack
