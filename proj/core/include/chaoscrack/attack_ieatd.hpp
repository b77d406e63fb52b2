// Attacks on IEATD: the weak-key mask attack, the autocorrelation-based
// chosen-plaintext attack, and the one-pair known-plaintext attack.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chaoscrack/core.hpp"

namespace chaoscrack {

/// Chosen-plaintext access to a cipher under a fixed, hidden key.
using EncryptionOracle = std::function<Image(const Image&)>;

/// True iff n0 >= ⌊hw/2⌋: the keystream is then the same for every plaintext.
bool detect_weak_key(std::size_t n0, std::size_t hw);

struct MaskKey {
  Bytes mask;
};

MaskKey mask_attack(const Image& known_plain, const Image& known_cipher);
Image apply_mask(const Image& cipher, const MaskKey& mask);

/// Normalized autocorrelation R(t) of `y` around its mean.
/// Throws ValidationError for a constant sequence or t >= |y|.
double autocorrelation(std::span<const Byte> y, std::size_t lag);

/// R(1..max_lag); element t-1 holds R(t).
std::vector<double> autocorrelation_profile(std::span<const Byte> y, std::size_t max_lag);

/// argmax of R(t) over t in [1, max_lag]; the smallest lag wins ties.
std::size_t find_n0_autocorr(std::span<const Byte> y, std::size_t max_lag);

/// Raised by the chosen-plaintext attack when every plaintext gets the same
/// keystream; mask_attack applies instead.
class WeakKeyError : public AttackError {
 public:
  using AttackError::AttackError;
};

struct CpaIeatdResult {
  EquivalentKey key;
  std::size_t autocorr_n0 = 0;   // raw argmax before confirmation
  double autocorr_peak = 0.0;
  std::size_t y255_length = 0;   // longest all-255 segment
};

/// Queries an all-zero and an all-255 image of the given size. With
/// `maximize_y_long`, a third query extends y_long to the longest segment
/// any plaintext can have (see longest_segment_plan).
CpaIeatdResult cpa_ieatd(const EncryptionOracle& oracle, std::size_t width, std::size_t height,
                         bool maximize_y_long = true);

struct KpaIeatdResult {
  EquivalentKey key;
  /// Candidates j that passed the first prefix check but failed confirmation.
  std::size_t rejected_candidates = 0;
};

/// Recovers (n0, y_long') from one known plaintext/ciphertext pair.
/// Throws AttackError when no n0 in [1, ⌊HW/2⌋ - 1] is consistent.
KpaIeatdResult kpa_ieatd(const Image& known_plain, const Image& known_cipher);

/// Brute-force n0 search on a keystream `y` aligned with `plain`.
/// Positions listed in `unknown` are skipped in every comparison.
/// Returns 0 when no candidate passes.
std::size_t search_n0(std::span<const Byte> plain, std::span<const Byte> y,
                      std::span<const std::size_t> unknown = {},
                      std::size_t* rejected = nullptr);

}  // namespace chaoscrack
