#include "chaoscrack/attack_ieacd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chaoscrack/synthetic.hpp"

namespace chaoscrack {

ChosenPair make_chosen_pair(const Image& base, std::size_t a) {
  if (a >= base.size()) throw ValidationError("chosen pair index out of range");
  ChosenPair p{base, base, a, base[a] < 255 ? 1 : -1};
  p.modified[a] = static_cast<Byte>(base[a] + p.delta);
  return p;
}

std::vector<ChosenPair> gen_chosen_pairs(std::span<const Image> bases, std::size_t a) {
  std::vector<ChosenPair> out;
  out.reserve(bases.size());
  for (const auto& base : bases) {
    if (base.width() != bases.front().width() || base.height() != bases.front().height()) {
      throw ValidationError("chosen-pair bases must share one size");
    }
    if (base.size() % 2 != 0) throw ValidationError("chosen-pair bases need an even size");
    out.push_back(make_chosen_pair(base, a));
  }
  return out;
}

QueriedPair query_pair(const EncryptionOracle& oracle, ChosenPair pair) {
  QueriedPair q{std::move(pair), {}, {}};
  q.cipher0 = oracle(q.pair.base);
  q.cipher1 = oracle(q.pair.modified);
  return q;
}

namespace {

// Runs `holds(pair_index, j)` for every admissible j and tallies survivors
// and single-pair failures.
template <typename Admissible, typename Holds>
StepCandidates enumerate(std::size_t pair_count, std::size_t hw, Admissible admissible,
                         Holds holds) {
  StepCandidates out;
  std::optional<std::size_t> common;
  bool conflicting = false;
  for (std::uint32_t j = 0; j < hw; ++j) {
    if (!admissible(j)) continue;
    std::size_t fails = 0;
    std::size_t failing = 0;
    for (std::size_t k = 0; k < pair_count && fails < 2; ++k) {
      if (!holds(k, j)) {
        ++fails;
        failing = k;
      }
    }
    if (fails == 0) {
      out.survivors.push_back(j);
    } else if (fails == 1) {
      if (common && *common != failing) conflicting = true;
      common = failing;
    }
  }
  if (out.survivors.empty() && common && !conflicting && pair_count >= 2) {
    out.suspect_pair = common;
  }
  return out;
}

Byte cipher_xor(const QueriedPair& p, std::size_t pos) {
  return byte_xor(p.cipher0[pos], p.cipher1[pos]);
}

Byte chain_term(const QueriedPair& p, std::size_t pos, std::uint64_t add) {
  return byte_xor(byte_addmod(p.cipher0[pos], add), byte_addmod(p.cipher1[pos], add));
}

std::size_t hw_of(std::span<const QueriedPair> pairs) {
  if (pairs.empty()) throw ValidationError("attack needs at least one chosen pair");
  return pairs.front().cipher0.size();
}

std::string describe(const std::vector<std::uint32_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

bool predecessor_holds(std::span<const QueriedPair> pairs, std::uint32_t current,
                       std::uint32_t j) {
  return std::all_of(pairs.begin(), pairs.end(), [&](const QueriedPair& p) {
    return cipher_xor(p, current) == chain_term(p, j, current);
  });
}

// Differences propagate through the chain with a strong bias, so the true
// predecessor's own predecessor often passes the same test. It can be told
// apart because it also precedes the true candidate.
std::vector<std::uint32_t> drop_chain_predecessors(std::span<const QueriedPair> pairs,
                                                   const std::vector<std::uint32_t>& survivors) {
  std::vector<std::uint32_t> kept;
  for (const auto s : survivors) {
    const bool precedes_other = std::any_of(survivors.begin(), survivors.end(), [&](auto t) {
      return t != s && predecessor_holds(pairs, t, s);
    });
    if (!precedes_other) kept.push_back(s);
  }
  return kept;
}

// Suffix walk state: the chain so far plus each pair's I* at its last element.
class SuffixWalker {
 public:
  SuffixWalker(std::span<const QueriedPair> pairs, std::vector<std::uint32_t> head,
               std::vector<bool> used)
      : pairs_(pairs), head_(std::move(head)), used_(std::move(used)), previous_(pairs.size()) {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      previous_[k] = recover_istar_prefix(pairs[k], head_).back();
    }
  }

  bool done() const { return head_.size() == used_.size(); }
  std::size_t position() const { return head_.size(); }
  const std::vector<std::uint32_t>& chain() const { return head_; }

  StepCandidates candidates() const {
    return successor_candidates(pairs_, head_.back(), previous_, used_);
  }

  void push(std::uint32_t next) {
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      previous_[k].first = istar_from_cipher(pairs_[k].cipher0, head_.back(), next);
      previous_[k].second = istar_from_cipher(pairs_[k].cipher1, head_.back(), next);
    }
    used_[next] = true;
    head_.push_back(next);
  }

  // False when a greedy walk from here dies within `depth` steps. A further
  // ambiguity counts as alive: it cannot be judged this way.
  bool survives(std::size_t depth) const {
    SuffixWalker probe = *this;
    for (std::size_t d = 0; d < depth && !probe.done(); ++d) {
      const auto c = probe.candidates();
      if (c.survivors.empty()) return false;
      if (c.survivors.size() > 1) return true;
      probe.push(c.survivors.front());
    }
    return true;
  }

  // Keeps the candidates whose continuation survives the lookahead.
  std::vector<std::uint32_t> resolve(const std::vector<std::uint32_t>& survivors) const {
    std::vector<std::uint32_t> alive;
    for (const auto s : survivors) {
      SuffixWalker branch = *this;
      branch.push(s);
      if (branch.survives(kLookahead)) alive.push_back(s);
    }
    return alive;
  }

  static constexpr std::size_t kLookahead = 32;

 private:
  std::span<const QueriedPair> pairs_;
  std::vector<std::uint32_t> head_;
  std::vector<bool> used_;
  std::vector<IstarPair> previous_;
};

}  // namespace

StepCandidates anchor_candidates(std::span<const QueriedPair> pairs, std::size_t a) {
  const std::size_t hw = hw_of(pairs);
  return enumerate(
      pairs.size(), hw, [&](std::uint32_t j) { return j != a; },
      [&](std::size_t k, std::uint32_t j) {
        const auto& p = pairs[k];
        const Byte plain_diff = byte_xor(p.pair.base[a], p.pair.modified[a]);
        return cipher_xor(p, a) == byte_xor(chain_term(p, j, a), plain_diff);
      });
}

StepCandidates predecessor_candidates(std::span<const QueriedPair> pairs, std::uint32_t current,
                                      const std::vector<bool>& used) {
  const std::size_t hw = hw_of(pairs);
  return enumerate(
      pairs.size(), hw, [&](std::uint32_t j) { return !used[j]; },
      [&](std::size_t k, std::uint32_t j) {
        const auto& p = pairs[k];
        return cipher_xor(p, current) == chain_term(p, j, current);
      });
}

StepCandidates successor_candidates(std::span<const QueriedPair> pairs, std::uint32_t previous,
                                    std::span<const IstarPair> istar_previous,
                                    const std::vector<bool>& used) {
  const std::size_t hw = hw_of(pairs);
  if (istar_previous.size() != pairs.size()) {
    throw ValidationError("successor_candidates: one I* pair per chosen pair expected");
  }
  return enumerate(
      pairs.size(), hw, [&](std::uint32_t j) { return !used[j]; },
      [&](std::size_t k, std::uint32_t j) {
        const auto& p = pairs[k];
        const Byte istar_term = byte_xor(byte_addmod(istar_previous[k].first, j),
                                         byte_addmod(istar_previous[k].second, j));
        return cipher_xor(p, j) == byte_xor(chain_term(p, previous, j), istar_term);
      });
}

Byte istar_from_cipher(const Image& cipher, std::uint32_t z_prev, std::uint32_t z_cur) {
  return byte_xor(cipher[z_cur], byte_addmod(cipher[z_prev], z_cur));
}

bool ZPrimeRecovery::complete() const {
  return !z_prime.empty() &&
         std::none_of(z_prime.begin(), z_prime.end(), [](auto v) { return v == kUnknown; });
}

std::vector<IstarPair> recover_istar_prefix(const QueriedPair& pair,
                                            std::span<const std::uint32_t> z_prime_prefix) {
  std::vector<IstarPair> out(z_prime_prefix.size());
  for (std::size_t i = 1; i < z_prime_prefix.size(); ++i) {
    out[i].first = istar_from_cipher(pair.cipher0, z_prime_prefix[i - 1], z_prime_prefix[i]);
    out[i].second = istar_from_cipher(pair.cipher1, z_prime_prefix[i - 1], z_prime_prefix[i]);
  }
  return out;
}

ZPrimeOutcome recover_z_prime(std::span<const QueriedPair> pairs, std::size_t a) {
  const std::size_t hw = hw_of(pairs);
  ZPrimeOutcome out;
  auto& st = out.state;
  st.a = a;
  st.used.assign(hw, false);
  st.used[a] = true;

  auto fail = [&](StepFailure f, const StepCandidates& c, std::string detail) {
    out.failure = c.suspect_pair ? StepFailure::BadPair : f;
    out.bad_pair = c.suspect_pair;
    out.detail = std::move(detail);
    return out;
  };

  auto anchor = anchor_candidates(pairs, a);
  if (anchor.survivors.size() > 1) anchor.survivors = drop_chain_predecessors(pairs, anchor.survivors);
  if (anchor.survivors.size() > 1) {
    return fail(StepFailure::Ambiguous, {}, "anchor candidates " + describe(anchor.survivors));
  }
  if (anchor.survivors.empty()) return fail(StepFailure::NoAnchor, anchor, "no anchor candidate");
  st.anchor = anchor.survivors.front();
  st.used[st.anchor] = true;

  // Predecessors, newest first; the walk ends at z'(0).
  std::vector<std::uint32_t> reversed{st.anchor};
  while (true) {
    auto c = predecessor_candidates(pairs, reversed.back(), st.used);
    if (c.survivors.size() > 1) c.survivors = drop_chain_predecessors(pairs, c.survivors);
    if (c.survivors.size() > 1) {
      return fail(StepFailure::Ambiguous, {},
                  "predecessor candidates " + describe(c.survivors));
    }
    if (c.survivors.empty()) {
      // A lone contradicting pair only counts when enough pairs remain to
      // rule out a coincidental match at the true start of the chain.
      if (c.suspect_pair && pairs.size() >= 4) {
        return fail(StepFailure::BadPair, c, "prefix walk contradicted by one pair");
      }
      break;
    }
    reversed.push_back(c.survivors.front());
    st.used[c.survivors.front()] = true;
  }
  st.b = reversed.size();
  st.prefix.assign(reversed.rbegin(), reversed.rend() - 1);

  std::vector<std::uint32_t> head(reversed.rbegin(), reversed.rend());
  head.push_back(static_cast<std::uint32_t>(a));
  SuffixWalker walker(pairs, std::move(head), st.used);
  while (!walker.done()) {
    auto c = walker.candidates();
    if (c.survivors.size() > 1) c.survivors = walker.resolve(c.survivors);
    if (c.survivors.size() > 1) {
      return fail(StepFailure::Ambiguous, {},
                  "successor candidates at " + std::to_string(walker.position()) + ": " +
                      describe(c.survivors));
    }
    if (c.survivors.empty()) {
      return fail(StepFailure::Exhausted, c,
                  "no successor candidate at chain position " + std::to_string(walker.position()));
    }
    st.suffix.push_back(c.survivors.front());
    walker.push(c.survivors.front());
  }
  st.z_prime = walker.chain();
  st.used.assign(hw, true);
  return out;
}

std::uint32_t recover_anchor(std::span<const QueriedPair> pairs, std::size_t a) {
  auto c = anchor_candidates(pairs, a);
  if (c.survivors.size() > 1) c.survivors = drop_chain_predecessors(pairs, c.survivors);
  if (c.survivors.empty()) {
    throw AttackError("no candidate for z'(b-1): b = 0 or inconsistent pairs");
  }
  if (c.survivors.size() > 1) {
    throw AttackError("z'(b-1) is ambiguous (" + describe(c.survivors) + "); add pairs");
  }
  return c.survivors.front();
}

PrefixRecovery recover_prefix(std::span<const QueriedPair> pairs, std::uint32_t anchor,
                              std::size_t a) {
  const std::size_t hw = hw_of(pairs);
  std::vector<bool> used(hw, false);
  used[a] = true;
  used[anchor] = true;
  std::vector<std::uint32_t> reversed{anchor};
  while (true) {
    auto c = predecessor_candidates(pairs, reversed.back(), used);
    if (c.survivors.size() > 1) c.survivors = drop_chain_predecessors(pairs, c.survivors);
    if (c.survivors.empty()) break;
    if (c.survivors.size() > 1) {
      throw AttackError("predecessor of " + std::to_string(reversed.back()) +
                        " is ambiguous; add pairs");
    }
    reversed.push_back(c.survivors.front());
    used[c.survivors.front()] = true;
  }
  PrefixRecovery out;
  out.b = reversed.size();
  out.prefix.assign(reversed.rbegin(), reversed.rend() - 1);
  return out;
}

std::vector<std::uint32_t> recover_suffix(std::span<const QueriedPair> pairs,
                                          std::span<const std::uint32_t> z_prime_head) {
  const std::size_t hw = hw_of(pairs);
  if (z_prime_head.size() < 2) {
    throw ValidationError("recover_suffix needs z'(0..b) with b >= 1");
  }
  std::vector<bool> used(hw, false);
  for (const auto v : z_prime_head) used[v] = true;
  SuffixWalker walker(pairs, {z_prime_head.begin(), z_prime_head.end()}, std::move(used));
  std::vector<std::uint32_t> suffix;
  while (!walker.done()) {
    auto c = walker.candidates();
    if (c.survivors.size() > 1) c.survivors = walker.resolve(c.survivors);
    if (c.survivors.size() != 1) {
      throw AttackError(c.survivors.empty() ? "suffix position has no candidate"
                                            : "suffix position is ambiguous; add pairs");
    }
    suffix.push_back(c.survivors.front());
    walker.push(c.survivors.front());
  }
  return suffix;
}

PermutationVector assemble_z(std::span<const std::uint32_t> z_prime, const InterleaveIndex& u) {
  if (z_prime.size() != u.size()) throw ValidationError("assemble_z: length mismatch");
  std::vector<std::uint32_t> z(z_prime.size());
  for (std::size_t i = 0; i < z_prime.size(); ++i) z[u[i]] = z_prime[i];
  return PermutationVector(std::move(z));
}

std::vector<std::uint32_t> chain_order(const PermutationVector& z, const InterleaveIndex& u) {
  if (z.size() != u.size()) throw ValidationError("chain_order: length mismatch");
  std::vector<std::uint32_t> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[u[i]];
  return out;
}

KeystreamRecovery recover_keystream(const Image& plain, const Image& cipher,
                                    std::span<const std::uint32_t> z_prime) {
  const std::size_t hw = cipher.size();
  if (plain.size() != hw || z_prime.size() != hw) {
    throw ValidationError("recover_keystream: size mismatch");
  }
  const InterleaveIndex u(hw);
  KeystreamRecovery out;
  out.istar.assign(hw, 0);
  out.y.assign(hw, 0);
  for (std::size_t i = 1; i < hw; ++i) {
    out.istar[u[i]] = istar_from_cipher(cipher, z_prime[i - 1], z_prime[i]);
  }
  out.istar[u[0]] =
      byte_xor(cipher[z_prime[0]], byte_addmod(out.istar[u[hw - 1]], z_prime[0]));
  for (std::size_t i = 1; i < hw; ++i) {
    out.y[u[i]] = byte_xor(byte_xor(out.istar[u[i]], plain[z_prime[i]]),
                           byte_addmod(out.istar[u[i - 1]], z_prime[i]));
  }
  return out;
}

N0CRecovery recover_n0_c(const Image& plain, std::span<const Byte> y,
                         std::span<const std::uint32_t> z_prime, std::span<const Byte> istar) {
  const std::size_t hw = plain.size();
  if (y.size() != hw || z_prime.size() != hw || istar.size() != hw) {
    throw ValidationError("recover_n0_c: size mismatch");
  }
  const InterleaveIndex u(hw);
  const PermutationVector z = assemble_z(z_prime, u);
  const Bytes permuted = permute_forward(plain.pixels(), z);
  const std::size_t unknown[] = {0};
  const std::size_t n0 = search_n0(permuted, y, unknown);
  if (n0 == 0) {
    throw AttackError("recover_n0_c: no n0 below HW/2 matches the recovered keystream "
                      "(weak keys with n0 >= HW/2 are not searched)");
  }
  N0CRecovery out;
  out.n0 = n0;
  out.y0_assumed = y[n0];
  const Byte seed = byte_xor(byte_xor(istar[u[0]], plain[z_prime[0]]), out.y0_assumed);
  out.c = byte_submod(seed, z_prime[0]);
  return out;
}

SuccessModel success_model(std::size_t hw, std::size_t segments, std::size_t pairs) {
  if (hw < 2 || pairs == 0) throw ValidationError("success_model needs hw >= 2, pairs >= 1");
  SuccessModel m;
  const double n = static_cast<double>(hw);
  m.p_c = static_cast<double>(segments) / n;
  // (1 - 256^-Mp)^(HW-2), evaluated in log space to keep precision for large Mp.
  const double wrong = std::pow(256.0, -static_cast<double>(pairs));
  m.p_s = std::exp((n - 2.0) * std::log1p(-wrong));
  m.p_z = (1.0 - 1.0 / n) * std::pow(1.0 - m.p_c, static_cast<double>(pairs)) *
          std::exp(n * std::log(m.p_s));
  return m;
}

namespace {

class PairSupply {
 public:
  PairSupply(const EncryptionOracle& oracle, const CpaIeacdConfig& config, std::mt19937_64& rng)
      : oracle_(oracle), config_(config), rng_(rng) {}

  QueriedPair draw(std::size_t a) {
    Image base = next_base_ < config_.bases.size()
                     ? config_.bases[next_base_++]
                     : natural_image(config_.width, config_.height, rng_);
    ++drawn_;
    return query_pair(oracle_, make_chosen_pair(base, a));
  }

  std::size_t drawn() const { return drawn_; }

 private:
  const EncryptionOracle& oracle_;
  const CpaIeacdConfig& config_;
  std::mt19937_64& rng_;
  std::size_t next_base_ = 0;
  std::size_t drawn_ = 0;
};

const char* failure_name(StepFailure f) {
  switch (f) {
    case StepFailure::None: return "none";
    case StepFailure::NoAnchor: return "no-anchor";
    case StepFailure::Ambiguous: return "ambiguous";
    case StepFailure::BadPair: return "bad-pair";
    case StepFailure::Exhausted: return "exhausted";
  }
  return "unknown";
}

}  // namespace

CpaIeacdResult cpa_ieacd(const EncryptionOracle& oracle, const CpaIeacdConfig& config) {
  const std::size_t hw = config.width * config.height;
  if (hw < 4 || hw % 2 != 0) throw ValidationError("cpa_ieacd needs an even HW >= 4");
  if (config.pairs == 0) throw ValidationError("cpa_ieacd needs at least one pair");
  for (const auto& base : config.bases) {
    if (base.width() != config.width || base.height() != config.height) {
      throw ValidationError("cpa_ieacd: base image size differs from the configured size");
    }
  }

  std::mt19937_64 rng(config.seed);
  PairSupply supply(oracle, config, rng);
  const std::size_t first_index =
      config.index ? *config.index % hw : std::uniform_int_distribution<std::size_t>(0, hw - 1)(rng);

  CpaIeacdResult result;
  std::string last_reason = "no attempt made";
  for (std::size_t attempt = 0; attempt <= config.max_retries; ++attempt) {
    const std::size_t a = (first_index + attempt) % hw;
    result.retries = attempt;
    result.log.push_back("attempt " + std::to_string(attempt) + ": a=" + std::to_string(a));

    std::vector<QueriedPair> pairs;
    std::size_t drawn_here = 0;
    auto draw = [&] {
      ++drawn_here;
      return supply.draw(a);
    };
    for (std::size_t k = 0; k < config.pairs; ++k) pairs.push_back(draw());

    ZPrimeOutcome outcome;
    while (true) {
      outcome = recover_z_prime(pairs, a);
      if (outcome.failure == StepFailure::None) break;
      result.log.push_back(std::string("  ") + failure_name(outcome.failure) + ": " +
                           outcome.detail);
      const bool can_draw = drawn_here < std::max(config.max_pairs, config.pairs);
      if (outcome.failure == StepFailure::BadPair && can_draw) {
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(*outcome.bad_pair));
        pairs.push_back(draw());
        ++result.pairs_dropped;
        continue;
      }
      if (outcome.failure == StepFailure::Ambiguous && can_draw) {
        pairs.push_back(draw());
        continue;
      }
      break;
    }
    if (outcome.failure != StepFailure::None) {
      last_reason = std::string(failure_name(outcome.failure)) + " at a=" + std::to_string(a) +
                    " (" + outcome.detail + ")";
      continue;
    }

    const auto& st = outcome.state;
    const InterleaveIndex u(hw);
    const PermutationVector z = assemble_z(st.z_prime, u);
    const QueriedPair& reference = pairs.front();
    KeystreamRecovery ks = recover_keystream(reference.pair.base, reference.cipher0, st.z_prime);
    // A small, bright base image can leave n0 open (its first segment may be
    // Y(0) alone, which is unknown). Every segment of the zero image has length
    // n0, so its keystream settles n0 and C whenever the base image cannot.
    const Image zero = Image::constant(config.width, config.height, 0);
    const KeystreamRecovery zks = recover_keystream(zero, oracle(zero), st.z_prime);
    N0CRecovery nc;
    try {
      nc = recover_n0_c(zero, zks.y, st.z_prime, zks.istar);
    } catch (const AttackError& e) {
      last_reason = e.what();
      result.log.push_back(std::string("  ") + e.what());
      continue;
    }
    try {
      const N0CRecovery from_base = recover_n0_c(reference.pair.base, ks.y, st.z_prime, ks.istar);
      if (from_base.n0 != nc.n0) {
        result.log.push_back("  base image suggests n0=" + std::to_string(from_base.n0) +
                             ", zero image n0=" + std::to_string(nc.n0));
      }
    } catch (const AttackError& e) {
      result.log.push_back(std::string("  base image: ") + e.what());
    }

    const Image full = Image::constant(config.width, config.height, 255);
    const Bytes confused = remove_diffusion(oracle(full), z, nc.c);
    const Bytes y_full = xor_bytes(confused, full.pixels());
    const Segmentation seg = segment_lengths(full.pixels(), nc.n0);
    const std::size_t longest = seg.longest();
    const auto first = y_full.begin() + static_cast<std::ptrdiff_t>(seg.offset(longest));

    result.key.n0 = nc.n0;
    result.key.c = nc.c;
    result.key.z = z;
    result.key.y_long.assign(first, first + static_cast<std::ptrdiff_t>(seg.lengths[longest]));
    result.y255_length = result.key.y_long.size();
    if (config.maximize_y_long) {
      const auto plan = longest_segment_plan(hw, nc.n0);
      if (plan.length > result.key.y_long.size()) {
        // The plan is laid out in segmentation (permuted) order.
        const Image probe = full.with_pixels(permute_output(plan.plain, z));
        const Bytes y = xor_bytes(remove_diffusion(oracle(probe), z, nc.c), plan.plain);
        const auto at = y.begin() + static_cast<std::ptrdiff_t>(plan.offset);
        Bytes longer(at, at + static_cast<std::ptrdiff_t>(plan.length));
        if (!std::equal(result.key.y_long.begin(), result.key.y_long.end(), longer.begin())) {
          last_reason = "extended keystream disagrees with the all-255 one";
          result.log.push_back("  " + last_reason);
          continue;
        }
        result.key.y_long = std::move(longer);
        result.log.push_back("  y_long extended from " + std::to_string(result.y255_length) +
                             " to " + std::to_string(result.key.y_long.size()));
      }
    }
    result.a = a;
    result.b = st.b;
    result.anchor = st.anchor;
    result.prefix = st.prefix;
    result.suffix = st.suffix;
    result.z_prime = st.z_prime;
    result.y = std::move(ks.y);
    result.y[0] = result.y[nc.n0];
    result.istar = std::move(ks.istar);
    result.keystream_base = reference.pair.base;
    result.pairs_consumed = supply.drawn();
    result.log.push_back("  recovered: b=" + std::to_string(st.b) +
                         " n0=" + std::to_string(nc.n0) + " c=" + std::to_string(nc.c));
    return result;
  }
  throw AttackError("cpa_ieacd failed after " + std::to_string(config.max_retries + 1) +
                    " indices; last failure: " + last_reason);
}

}  // namespace chaoscrack
