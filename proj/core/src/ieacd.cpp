#include "chaoscrack/ieacd.hpp"

#include <string>

namespace chaoscrack {

namespace {

void require_even_hw(std::size_t hw) {
  if (hw == 0 || hw % 2 != 0) {
    throw ValidationError("IEACD needs an even, positive pixel count (got " +
                          std::to_string(hw) + ")");
  }
}

void require_sizes(std::size_t n, const PermutationVector& z, const InterleaveIndex& u) {
  if (z.size() != n || u.size() != n) throw ValidationError("diffusion: length mismatch");
  if (n < 2) throw ValidationError("diffusion needs at least two pixels");
}

}  // namespace

InterleaveIndex::InterleaveIndex(std::size_t hw) : u_(hw) {
  require_even_hw(hw);
  const std::size_t half = hw / 2;
  for (std::size_t i = 0; i < hw; ++i) {
    u_[i] = static_cast<std::uint32_t>(i % 2 == 0 ? i / 2 : i / 2 + half);
  }
}

InterleaveIndex interleave_indices(std::size_t hw) { return InterleaveIndex(hw); }

Bytes permute_forward(std::span<const Byte> in, const PermutationVector& z) {
  if (in.size() != z.size()) throw ValidationError("permutation: length mismatch");
  Bytes out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[z[i]];
  return out;
}

Image permute_forward(const Image& image, const PermutationVector& z) {
  return image.with_pixels(permute_forward(image.pixels(), z));
}

Bytes permute_output(std::span<const Byte> in, const PermutationVector& z) {
  if (in.size() != z.size()) throw ValidationError("permutation: length mismatch");
  Bytes out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[z[i]] = in[i];
  return out;
}

Image permute_output(const Image& image, const PermutationVector& z) {
  return image.with_pixels(permute_output(image.pixels(), z));
}

Bytes crossover_round1(std::span<const Byte> in, const PermutationVector& z,
                       const InterleaveIndex& u, Byte c) {
  const std::size_t n = in.size();
  require_sizes(n, z, u);
  Bytes out(n);
  out[u[0]] = byte_xor(in[u[0]], byte_addmod(c, z[u[0]]));
  for (std::size_t i = 1; i < n; ++i) {
    out[u[i]] = byte_xor(in[u[i]], byte_addmod(out[u[i - 1]], z[u[i]]));
  }
  return out;
}

Bytes crossover_round2(std::span<const Byte> in, const PermutationVector& z,
                       const InterleaveIndex& u) {
  const std::size_t n = in.size();
  require_sizes(n, z, u);
  Bytes out(n);
  out[u[0]] = byte_xor(in[u[0]], byte_addmod(in[u[n - 1]], z[u[0]]));
  for (std::size_t i = 1; i < n; ++i) {
    out[u[i]] = byte_xor(in[u[i]], byte_addmod(out[u[i - 1]], z[u[i]]));
  }
  return out;
}

Bytes invert_round1(std::span<const Byte> out, const PermutationVector& z,
                    const InterleaveIndex& u, Byte c) {
  const std::size_t n = out.size();
  require_sizes(n, z, u);
  Bytes in(n);
  in[u[0]] = byte_xor(out[u[0]], byte_addmod(c, z[u[0]]));
  for (std::size_t i = 1; i < n; ++i) {
    in[u[i]] = byte_xor(out[u[i]], byte_addmod(out[u[i - 1]], z[u[i]]));
  }
  return in;
}

Bytes invert_round2(std::span<const Byte> out, const PermutationVector& z,
                    const InterleaveIndex& u) {
  const std::size_t n = out.size();
  require_sizes(n, z, u);
  Bytes in(n);
  for (std::size_t i = 1; i < n; ++i) {
    in[u[i]] = byte_xor(out[u[i]], byte_addmod(out[u[i - 1]], z[u[i]]));
  }
  // The seed needs the chain's last input, recovered above.
  in[u[0]] = byte_xor(out[u[0]], byte_addmod(in[u[n - 1]], z[u[0]]));
  return in;
}

IeacdMaterial ieacd_material(const SecretKey& key, std::size_t hw) {
  key.validate();
  if (key.algorithm != Algorithm::Ieacd) throw ValidationError("key is not an ieacd key");
  return {derive_permutation(key, hw), static_cast<Byte>(*key.c), key.n0};
}

IeacdTrace ieacd_encrypt_trace(const Image& image, const IeacdMaterial& material,
                               const KeystreamSource& source) {
  require_even_hw(image.size());
  const InterleaveIndex u(image.size());
  IeacdTrace t;
  t.permuted = permute_forward(image.pixels(), material.z);
  t.keystream = build_keystream(source, segment_lengths(t.permuted, material.n0));
  t.confused = xor_bytes(t.permuted, t.keystream.y);
  t.diffused1 = crossover_round1(t.confused, material.z, u, material.c);
  t.diffused2 = crossover_round2(t.diffused1, material.z, u);
  t.cipher = image.with_pixels(permute_output(t.diffused2, material.z));
  return t;
}

Image ieacd_encrypt(const Image& image, const IeacdMaterial& material,
                    const KeystreamSource& source) {
  return ieacd_encrypt_trace(image, material, source).cipher;
}

Image ieacd_encrypt(const Image& image, const SecretKey& key) {
  return ieacd_encrypt(image, ieacd_material(key, image.size()), IkedaKeystream(key));
}

Bytes remove_diffusion(const Image& cipher, const PermutationVector& z, Byte c) {
  require_even_hw(cipher.size());
  const InterleaveIndex u(cipher.size());
  const Bytes diffused2 = permute_forward(cipher.pixels(), z);
  return invert_round1(invert_round2(diffused2, z, u), z, u, c);
}

Image ieacd_decrypt(const Image& cipher, const IeacdMaterial& material,
                    const KeystreamSource& source) {
  const Bytes confused = remove_diffusion(cipher, material.z, material.c);
  // Undoing confusion is IEATD decryption of the permuted image.
  const Image permuted = ieatd_decrypt(cipher.with_pixels(confused), material.n0, source);
  return permute_output(permuted, material.z);
}

Image ieacd_decrypt(const Image& cipher, const SecretKey& key) {
  return ieacd_decrypt(cipher, ieacd_material(key, cipher.size()), IkedaKeystream(key));
}

IeacdEquivalentResult ieacd_decrypt(const Image& cipher, const EquivalentKey& key) {
  key.validate();
  if (!key.z || !key.c) throw ValidationError("equivalent key lacks z or c");
  if (key.z->size() != cipher.size()) throw ValidationError("equivalent key size mismatch");
  IeacdEquivalentResult r;
  r.without_diffusion = remove_diffusion(cipher, *key.z, *key.c);
  auto unmasked = progressive_unmask(r.without_diffusion, key.n0, key.y_long);
  r.without_confusion = std::move(unmasked.plain);
  r.valid_prefix = unmasked.valid_prefix;
  r.image = cipher.with_pixels(permute_output(r.without_confusion, *key.z));
  return r;
}

}  // namespace chaoscrack
