// IEACD: logistic-ranked permutation, IEATD-style confusion on the permuted
// image, two interleaved rounds of crossover diffusion and an output
// permutation. Every stage has an exact inverse here.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaoscrack/chaos.hpp"
#include "chaoscrack/core.hpp"
#include "chaoscrack/ieatd.hpp"

namespace chaoscrack {

/// Chain order U of the diffusion: even i walk the front half, odd i the back half.
class InterleaveIndex {
 public:
  /// Throws ValidationError for odd or zero `hw` (the map is not a bijection there).
  explicit InterleaveIndex(std::size_t hw);

  std::size_t size() const noexcept { return u_.size(); }
  std::uint32_t operator[](std::size_t i) const { return u_[i]; }
  const std::vector<std::uint32_t>& values() const noexcept { return u_; }

 private:
  std::vector<std::uint32_t> u_;
};

InterleaveIndex interleave_indices(std::size_t hw);

/// Gather: out(i) = in(z(i)).
Bytes permute_forward(std::span<const Byte> in, const PermutationVector& z);
Image permute_forward(const Image& image, const PermutationVector& z);
/// Scatter: out(z(i)) = in(i). Inverse of permute_forward.
Bytes permute_output(std::span<const Byte> in, const PermutationVector& z);
Image permute_output(const Image& image, const PermutationVector& z);

/// First round: out(u0) = in(u0) ⊕ (C ⊞ z(u0)),
/// out(u_i) = in(u_i) ⊕ (out(u_{i-1}) ⊞ z(u_i)).
Bytes crossover_round1(std::span<const Byte> in, const PermutationVector& z,
                       const InterleaveIndex& u, Byte c);
/// Second round, seeded by the first round's last chain element.
Bytes crossover_round2(std::span<const Byte> in, const PermutationVector& z,
                       const InterleaveIndex& u);
Bytes invert_round1(std::span<const Byte> out, const PermutationVector& z,
                    const InterleaveIndex& u, Byte c);
Bytes invert_round2(std::span<const Byte> out, const PermutationVector& z,
                    const InterleaveIndex& u);

/// The cipher with its secret material already expanded: the production path
/// derives z from the logistic map and uses the Ikeda keystream, golden tests
/// inject both.
struct IeacdMaterial {
  PermutationVector z;
  Byte c = 0;
  std::size_t n0 = 1;
};

IeacdMaterial ieacd_material(const SecretKey& key, std::size_t hw);

/// Every intermediate of one encryption.
struct IeacdTrace {
  Bytes permuted;     // I⋆
  Keystream keystream;
  Bytes confused;     // I⋆⋆
  Bytes diffused1;    // I*
  Bytes diffused2;    // I**
  Image cipher;       // I′
};

IeacdTrace ieacd_encrypt_trace(const Image& image, const IeacdMaterial& material,
                               const KeystreamSource& source);
Image ieacd_encrypt(const Image& image, const IeacdMaterial& material,
                    const KeystreamSource& source);
Image ieacd_encrypt(const Image& image, const SecretKey& key);

Image ieacd_decrypt(const Image& cipher, const IeacdMaterial& material,
                    const KeystreamSource& source);
Image ieacd_decrypt(const Image& cipher, const SecretKey& key);

/// Undoes the output permutation and both diffusion rounds, giving I⋆⋆.
Bytes remove_diffusion(const Image& cipher, const PermutationVector& z, Byte c);

struct IeacdEquivalentResult {
  Image image;
  Bytes without_diffusion;   // I⋆⋆
  Bytes without_confusion;   // I⋆ (valid up to valid_prefix)
  /// Permuted-domain positions recovered with the correct keystream.
  std::size_t valid_prefix = 0;
};

/// Decryption with an equivalent key (n0, c, z, y_long).
IeacdEquivalentResult ieacd_decrypt(const Image& cipher, const EquivalentKey& key);

}  // namespace chaoscrack
