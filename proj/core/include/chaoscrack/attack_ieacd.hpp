// Chosen-plaintext attack on IEACD.
//
// Pairs of plain-images that differ by ±1 in one pixel `a` almost always get
// the same confusion keystream, so XORing their cipher-images cancels the
// keystream and leaves equations in the permutation alone. The attack walks
// the diffusion chain through those equations to rebuild Z' (Z in chain
// order), then peels the diffusion off to expose the keystream, N0 and C, and
// finally reads Y^L from an all-255 query.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "chaoscrack/attack_ieatd.hpp"
#include "chaoscrack/core.hpp"
#include "chaoscrack/ieacd.hpp"

namespace chaoscrack {

/// Two plain-images equal everywhere except pixel `a`, where they differ by `delta`.
struct ChosenPair {
  Image base;
  Image modified;
  std::size_t a = 0;
  int delta = 1;
};

/// delta = +1 unless base(a) == 255, then -1.
std::vector<ChosenPair> gen_chosen_pairs(std::span<const Image> bases, std::size_t a);
ChosenPair make_chosen_pair(const Image& base, std::size_t a);

/// A chosen pair with both cipher-images.
struct QueriedPair {
  ChosenPair pair;
  Image cipher0;
  Image cipher1;
};

QueriedPair query_pair(const EncryptionOracle& oracle, ChosenPair pair);

/// Result of one enumeration step over all pairs.
struct StepCandidates {
  std::vector<std::uint32_t> survivors;
  /// Set when nothing survives but some value fails in exactly one pair and
  /// that pair is the same for every such value: the likely bad pair.
  std::optional<std::size_t> suspect_pair;
};

/// Values j != a consistent with the equation at chain position b.
StepCandidates anchor_candidates(std::span<const QueriedPair> pairs, std::size_t a);

/// Unused values j consistent with being the chain predecessor of `current`
/// (valid while the pairs' first-round intermediates still agree).
StepCandidates predecessor_candidates(std::span<const QueriedPair> pairs, std::uint32_t current,
                                      const std::vector<bool>& used);

/// First-round intermediates I*(u(i)) of one pair, per image.
struct IstarPair {
  Byte first = 0;
  Byte second = 0;
};

/// Unused values j consistent with following `previous` after position b,
/// given the pairs' I*(u(i-1)).
StepCandidates successor_candidates(std::span<const QueriedPair> pairs, std::uint32_t previous,
                                    std::span<const IstarPair> istar_previous,
                                    const std::vector<bool>& used);

/// I*(u(i)) = I'(z'(i)) ⊕ (I'(z'(i-1)) ⊞ z'(i)), valid for i >= 1.
Byte istar_from_cipher(const Image& cipher, std::uint32_t z_prev, std::uint32_t z_cur);

/// Partial Z' plus the bookkeeping the recovery phases share.
struct ZPrimeRecovery {
  static constexpr std::uint32_t kUnknown = 0xFFFFFFFFu;

  std::vector<std::uint32_t> z_prime;  // kUnknown where not yet recovered
  std::vector<bool> used;
  std::size_t a = 0;
  std::size_t b = 0;
  std::uint32_t anchor = kUnknown;     // z'(b-1)
  std::vector<std::uint32_t> prefix;   // z'(0..b-2)
  std::vector<std::uint32_t> suffix;   // z'(b+1..HW-1)

  bool complete() const;
};

/// Why a recovery step could not produce a unique value.
enum class StepFailure {
  None,
  /// No candidate for z'(b-1): b = 0 or every pair is inconsistent.
  NoAnchor,
  /// More than one candidate survives: more pairs are needed.
  Ambiguous,
  /// One pair contradicts the others (its keystreams differ).
  BadPair,
  /// A suffix position has no candidate.
  Exhausted,
};

struct ZPrimeOutcome {
  ZPrimeRecovery state;
  StepFailure failure = StepFailure::None;
  std::optional<std::size_t> bad_pair;
  std::string detail;
};

/// Anchor phase: the sole value of z'(b-1). Throws AttackError otherwise.
std::uint32_t recover_anchor(std::span<const QueriedPair> pairs, std::size_t a);

struct PrefixRecovery {
  std::vector<std::uint32_t> prefix;  // z'(0..b-2)
  std::size_t b = 0;
};

/// Walks predecessors from the anchor until none exists (z'(0) reached).
PrefixRecovery recover_prefix(std::span<const QueriedPair> pairs, std::uint32_t anchor,
                              std::size_t a);

/// I*(u(i)) of both images of `pair` for i = 0..last, where z'(0..last) are
/// known. Entry 0 needs the end of the chain and is left zero.
std::vector<IstarPair> recover_istar_prefix(const QueriedPair& pair,
                                            std::span<const std::uint32_t> z_prime_prefix);

/// Extends Z' from position b+1 to the end. Throws AttackError on ambiguity
/// or when a position has no candidate.
std::vector<std::uint32_t> recover_suffix(std::span<const QueriedPair> pairs,
                                          std::span<const std::uint32_t> z_prime_head);

/// All three phases with failure classification instead of exceptions.
ZPrimeOutcome recover_z_prime(std::span<const QueriedPair> pairs, std::size_t a);

/// z(u(i)) = z'(i).
PermutationVector assemble_z(std::span<const std::uint32_t> z_prime, const InterleaveIndex& u);
/// z'(i) = z(u(i)).
std::vector<std::uint32_t> chain_order(const PermutationVector& z, const InterleaveIndex& u);

struct KeystreamRecovery {
  /// I*(u(i)) for every i, indexed by pixel position.
  Bytes istar;
  /// Y indexed by position in the permuted image; y[0] is unknown (left 0).
  Bytes y;
};

KeystreamRecovery recover_keystream(const Image& plain, const Image& cipher,
                                    std::span<const std::uint32_t> z_prime);

struct N0CRecovery {
  std::size_t n0 = 0;
  Byte c = 0;
  Byte y0_assumed = 0;
};

/// Brute-forces n0 on the permuted plaintext, skipping Y(0), then solves for
/// C taking Y(0) = Y(n0). Throws AttackError when no n0 below HW/2 fits.
/// Bright plaintexts on small images can leave n0 undetermined; the smallest
/// consistent value is returned. cpa_ieacd uses the zero image here.
N0CRecovery recover_n0_c(const Image& plain, std::span<const Byte> y,
                         std::span<const std::uint32_t> z_prime, std::span<const Byte> istar);

/// Closed-form success model of the attack.
struct SuccessModel {
  double p_c = 0.0;  // a unit change alters the keystream
  double p_s = 0.0;  // one chain element has a unique candidate
  double p_z = 0.0;  // Z' recovered exactly
};

SuccessModel success_model(std::size_t hw, std::size_t segments, std::size_t pairs);

struct CpaIeacdConfig {
  std::size_t width = 0;
  std::size_t height = 0;
  /// Modified pixel index; drawn from the RNG when absent.
  std::optional<std::size_t> index;
  std::size_t pairs = 5;
  /// Upper bound on pairs drawn for one index, replacements included.
  std::size_t max_pairs = 8;
  /// Further indices tried after a failure (b = 0, ambiguity, bad data).
  std::size_t max_retries = 4;
  std::uint64_t seed = 1;
  /// Base images consumed before synthetic ones are generated.
  std::vector<Image> bases;
  /// After the all-255 query, also query a plaintext built to reach the
  /// longest possible segment and keep the longer keystream. Bright images
  /// can need more than the all-255 image reveals.
  bool maximize_y_long = true;
};

struct CpaIeacdResult {
  EquivalentKey key;
  std::size_t a = 0;
  std::size_t b = 0;
  std::uint32_t anchor = 0;
  std::vector<std::uint32_t> prefix;
  std::vector<std::uint32_t> suffix;
  std::vector<std::uint32_t> z_prime;
  /// Keystream of the first pair's base image; y[0] holds the assumed value.
  Bytes y;
  /// I* of the first pair's base image.
  Bytes istar;
  /// Base image whose keystream is reported in `y`.
  Image keystream_base;
  /// Length of the longest all-255 segment (before any extension).
  std::size_t y255_length = 0;
  std::size_t pairs_consumed = 0;
  std::size_t pairs_dropped = 0;
  std::size_t retries = 0;
  std::vector<std::string> log;
};

CpaIeacdResult cpa_ieacd(const EncryptionOracle& oracle, const CpaIeacdConfig& config);

}  // namespace chaoscrack
