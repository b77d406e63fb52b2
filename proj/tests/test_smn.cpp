#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "chaoscrack/smn.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chaoscrack;

namespace {

std::size_t count_edges(const std::string& dot) {
  std::size_t n = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 2)) ++n;
  return n;
}

// Naive structure: walk from every node until a repeat.
struct NaiveNode {
  std::set<std::uint32_t> cycle;
  std::uint32_t depth = 0;
};

NaiveNode walk(const std::vector<std::uint32_t>& succ, std::uint32_t v) {
  std::vector<std::uint32_t> path;
  std::vector<int> seen_at(succ.size(), -1);
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(path.size());
    path.push_back(v);
    v = succ[v];
  }
  NaiveNode out;
  out.depth = static_cast<std::uint32_t>(seen_at[v]);
  out.cycle.insert(path.begin() + seen_at[v], path.end());
  return out;
}

void check_against_naive(const std::vector<std::uint32_t>& succ) {
  const auto g = analyze_functional_graph(succ);
  std::size_t total = 0;
  for (const auto& c : g.components) {
    REQUIRE(c.cycle_count == 1);
    total += c.size;
  }
  REQUIRE(total == succ.size());
  std::size_t self_loops = 0;
  for (std::uint32_t v = 0; v < succ.size(); ++v) {
    const NaiveNode n = walk(succ, v);
    REQUIRE(g.depth[v] == n.depth);
    REQUIRE(g.on_cycle[v] == (n.depth == 0));
    REQUIRE(g.components[g.component_of[v]].cycle_length == n.cycle.size());
    // Same component iff same cycle.
    const NaiveNode first = walk(succ, g.components[g.component_of[v]].representative);
    REQUIRE(first.cycle == n.cycle);
    self_loops += succ[v] == v;
  }
  REQUIRE(g.self_loops == self_loops);
}

}  // namespace

TEST_CASE("fixed-point arithmetic") {
  const FixedPointFormat f{9, 3};
  f.validate();
  CHECK(f.min_raw() == -256);
  CHECK(f.max_raw() == 255);
  CHECK(f.wrap(256) == -256);
  CHECK(f.wrap(-257) == 255);
  CHECK(f.from_real(1.0) == 8);
  CHECK(f.from_real(0.0625) == 0);  // half an LSB, ties to even
  CHECK(f.from_real(0.1875) == 2);
  CHECK(f.to_real(-12) == -1.5);
  CHECK(f.mul(8, 8) == 8);
  CHECK(f.mul(1, 4) == 0);  // 1/8 * 1/2 = 1/16, a tie, rounds to even
  CHECK(f.mul(3, 4) == 2);  // 3/16 rounds to 2/8
  CHECK(f.sin(0) == 0);
  CHECK(f.sin(f.from_real(1.5)) == f.from_real(1.0));  // sin 1.5 = 0.997
  CHECK_THROWS_AS(f.from_real(40.0), ValidationError);
  CHECK_THROWS_AS((FixedPointFormat{4, 4}.validate()), ValidationError);
  CHECK_THROWS_AS((FixedPointFormat{25, 3}.validate()), ValidationError);
  CHECK(FixedPointFormat::with_precision(4).total_bits == 10);

  const auto p = FixedIkedaParams::reference(f);
  CHECK(p.alpha == 48);
  CHECK(p.h == 1);
  CHECK(p.m == 156);
}

TEST_CASE("fixed_ikeda_step") {
  const FixedPointFormat f{9, 3};
  const auto p = FixedIkedaParams::reference(f);
  CHECK(fixed_ikeda_step({0}, p, f) == std::vector<std::int64_t>{0});
  CHECK(fixed_ikeda_step({0, 0, 0}, p, f) == std::vector<std::int64_t>{0, 0, 0});
  // x = (1, 2): sin 1 -> 7/8, 19.5 * 7/8 = 17.0625 -> 17 (tie to even),
  // -6 * 2 + 17 = 5, 1/8 * 5 = 5/8, so the tail becomes 2 + 5/8.
  const auto next = fixed_ikeda_step({8, 16}, p, f);
  CHECK(next == std::vector<std::int64_t>{16, 21});

  for (std::int64_t raw = f.min_raw(); raw <= f.max_raw(); ++raw) {
    const auto out = fixed_ikeda_step({raw}, p, f);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0] >= f.min_raw());
    REQUIRE(out[0] <= f.max_raw());
  }
}

TEST_CASE("state encoding") {
  const FixedPointFormat f{5, 2};
  for (std::uint64_t node = 0; node < (1u << 10); ++node) {
    REQUIRE(encode_state(decode_state(node, 2, f), f) == node);
  }
  CHECK(encode_state({0, 0}, f) == 0);
}

TEST_CASE("functional graph analysis on a hand-made graph") {
  // 0 -> 1 -> 2 -> 0 with 3 hanging off 0; 4 -> 5 -> 5.
  const std::vector<std::uint32_t> succ{1, 2, 0, 0, 5, 5};
  const auto g = analyze_functional_graph(succ);
  REQUIRE(g.components.size() == 2);
  CHECK(g.self_loops == 1);
  CHECK(g.min_cycle_length == 1);
  CHECK(g.max_cycle_length == 3);
  CHECK(g.max_depth == 1);
  CHECK(g.depth[3] == 1);
  CHECK(g.two_parent_nodes() == 2);
  CHECK(g.indegree_histogram.at(0) == 2);
  CHECK(g.indegree_histogram.at(1) == 2);
  CHECK(g.indegree_histogram.at(2) == 2);
  CHECK_THROWS_AS(analyze_functional_graph({0, 7}), ValidationError);
  check_against_naive(succ);
}

TEST_CASE("functional graph laws on random graphs") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = gen::in_range(rng, 1, 400);
    std::vector<std::uint32_t> succ(n);
    // Mix of arbitrary maps and near-permutations (long cycles).
    if (t % 3 == 0) {
      succ = gen::permutation(rng, n);
    } else {
      for (auto& s : succ) s = static_cast<std::uint32_t>(rng() % n);
    }
    check_against_naive(succ);
  }
}

TEST_CASE("reference networks") {
  for (const int e : {3, 4}) {
    const auto f = FixedPointFormat::with_precision(e);
    const auto smn = build_smn(FixedIkedaParams::reference(f), f);
    CHECK(smn.node_count() == f.levels());
    const auto& g = smn.analysis;
    std::size_t total = 0;
    for (const auto& c : g.components) {
      CHECK(c.cycle_count == 1);
      total += c.size;
    }
    CHECK(total == smn.node_count());
    CHECK(g.self_loops >= 1);
    CHECK(g.min_cycle_length == 1);
    CHECK(smn.successor[0] == 0);
    CHECK(g.components[g.component_of[0]].cycle_length == 1);
    for (std::uint32_t v = 0; v < smn.node_count(); ++v) {
      const auto state = decode_state(v, 1, f);
      REQUIRE(smn.successor[v] ==
              encode_state(fixed_ikeda_step(state, smn.params, f), f));
    }
    const std::string report = smn_report(smn);
    CHECK(report.find("component_count=") != std::string::npos);
    CHECK(report.find("min_cycle_length=1") != std::string::npos);
    CHECK(report.find("zero_state_cycle_length=1") != std::string::npos);
    CHECK(report.find("self_loops=") != std::string::npos);
  }
  const auto f = FixedPointFormat::with_precision(3);
  CHECK_THROWS_AS(build_smn(FixedIkedaParams::reference(f), f, 3, 1 << 20), ValidationError);
  const auto two = build_smn(FixedIkedaParams::reference(f), f, 2);
  CHECK(two.node_count() == f.levels() * f.levels());
}

TEST_CASE("DOT export") {
  StateMappingNetwork one;
  one.successor = {0};
  one.analysis = analyze_functional_graph(one.successor);
  const std::string dot = export_dot(one);
  CHECK(count_edges(dot) == 1);
  CHECK(dot.find("n0 -> n0;") != std::string::npos);

  const auto f = FixedPointFormat::with_precision(3);
  const auto smn = build_smn(FixedIkedaParams::reference(f), f);
  const std::string a = export_dot(smn), b = export_dot(smn);
  CHECK(a == b);
  CHECK(count_edges(a) == smn.node_count());
  CHECK(count_edges(export_dot(smn, {false, 4096})) == smn.node_count());
  std::size_t clusters = 0;
  for (std::size_t at = a.find("subgraph"); at != std::string::npos; at = a.find("subgraph", at + 1)) {
    ++clusters;
  }
  CHECK(clusters == smn.analysis.components.size());
  CHECK_THROWS_AS(export_dot(smn, {true, 10}), ValidationError);
}
