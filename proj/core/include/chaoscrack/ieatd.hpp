// IEATD: plaintext-dependent segmentation, segment-restarted keystream and
// XOR confusion. Also hosts the progressive decryptor used by the attacks.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaoscrack/chaos.hpp"
#include "chaoscrack/core.hpp"

namespace chaoscrack {

/// Segment lengths N(0..s-1); they sum to HW.
struct Segmentation {
  std::vector<std::size_t> lengths;

  std::size_t count() const noexcept { return lengths.size(); }
  std::size_t total() const noexcept;
  /// Index of the longest segment; ties resolve to the later segment.
  std::size_t longest() const;
  /// Offset of segment k in the concatenated sequence.
  std::size_t offset(std::size_t k) const;

  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

/// Greedy division: N(0) = n0, N(k) = N(k-1) + ⌊mean of segment k-1⌋. A
/// segment is emitted at full length only while that many pixels remain;
/// whatever is left becomes the final segment.
/// Throws ValidationError unless 1 <= n0 <= pixels.size().
Segmentation segment_lengths(std::span<const Byte> pixels, std::size_t n0);

struct Keystream {
  Bytes y;
  Segmentation segmentation;
  Bytes y_long;
};

/// Concatenates one restarted prefix of `source` per segment.
Keystream build_keystream(const KeystreamSource& source, const Segmentation& segmentation);

Image ieatd_encrypt(const Image& image, std::size_t n0, const KeystreamSource& source);
Image ieatd_encrypt(const Image& image, const SecretKey& key);

Image ieatd_decrypt(const Image& cipher, std::size_t n0, const KeystreamSource& source);
Image ieatd_decrypt(const Image& cipher, const SecretKey& key);

/// Output of decryption driven by an equivalent key.
struct ProgressiveResult {
  Bytes plain;
  /// Leading positions decrypted with the correct keystream prefix.
  std::size_t valid_prefix = 0;
};

/// XOR-unmasks `masked` segment by segment with prefixes of `y_long`,
/// re-deriving each N(k) from the recovered segment. Stops when
/// N(k) > |y_long| or the segment would overrun the end; then unmasks
/// min(remaining, |y_long|) more bytes. Bytes past that are left untouched.
ProgressiveResult progressive_unmask(std::span<const Byte> masked, std::size_t n0,
                                     std::span<const Byte> y_long);

struct ProgressiveImage {
  Image image;
  std::size_t valid_prefix = 0;
};

/// IEATD decryption with an equivalent key (n0, y_long).
ProgressiveImage progressive_decrypt(const Image& cipher, const EquivalentKey& key);

/// A plaintext, in segmentation order, containing a segment of the greatest
/// length any plaintext of `hw` pixels can produce under `n0`. Encrypting it
/// exposes the longest keystream prefix that decryption can ever need.
struct LongestSegmentPlan {
  Bytes plain;
  std::size_t offset = 0;
  std::size_t length = 0;
};

LongestSegmentPlan longest_segment_plan(std::size_t hw, std::size_t n0);

}  // namespace chaoscrack
