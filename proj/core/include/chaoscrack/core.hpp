// Foundational value types shared by the ciphers and the attacks.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaoscrack {

using Byte = std::uint8_t;
using Bytes = std::vector<Byte>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files (PGM, key files).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Values outside their documented domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An attack that could not reach its post-condition.
class AttackError : public Error {
 public:
  using Error::Error;
};

/// 8-bit grayscale image, pixels in raster order.
class Image {
 public:
  Image() = default;
  Image(std::size_t width, std::size_t height, Byte fill = 0);
  Image(std::size_t width, std::size_t height, Bytes pixels);

  static Image constant(std::size_t width, std::size_t height, Byte value) {
    return Image(width, height, value);
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::span<const Byte> pixels() const noexcept { return pixels_; }
  std::span<Byte> pixels() noexcept { return pixels_; }
  const Bytes& bytes() const noexcept { return pixels_; }

  Byte operator[](std::size_t i) const { return pixels_[i]; }
  Byte& operator[](std::size_t i) { return pixels_[i]; }

  /// Same dimensions, different contents.
  Image with_pixels(Bytes pixels) const { return Image(width_, height_, std::move(pixels)); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  Bytes pixels_;
};

/// Permutation vector Z: a bijection on [0, HW).
class PermutationVector {
 public:
  PermutationVector() = default;
  /// Throws ValidationError unless `z` is a bijection on [0, z.size()).
  explicit PermutationVector(std::vector<std::uint32_t> z);

  static PermutationVector identity(std::size_t n);

  std::size_t size() const noexcept { return z_.size(); }
  std::uint32_t operator[](std::size_t i) const { return z_[i]; }
  const std::vector<std::uint32_t>& values() const noexcept { return z_; }

  /// Inverse bijection: inverse()[z[i]] == i.
  PermutationVector inverse() const;

  friend bool operator==(const PermutationVector&, const PermutationVector&) = default;

 private:
  std::vector<std::uint32_t> z_;
};

/// True iff `values` is a bijection on [0, values.size()).
bool is_bijection(std::span<const std::uint32_t> values);

enum class Algorithm { Ieatd, Ieacd };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& text);

/// Full secret key of either cipher. The last three fields only matter for IEACD.
struct SecretKey {
  Algorithm algorithm = Algorithm::Ieatd;
  std::size_t n0 = 1;
  double alpha = 6.0;
  double m = 19.5;
  double h = 0.1;
  std::vector<double> x0;
  std::optional<int> c;
  std::optional<double> q0;
  std::optional<double> beta;

  /// Throws ValidationError when a field is outside its range.
  void validate() const;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

/// Attacker-side surrogate key: enough to decrypt without the chaotic parameters.
struct EquivalentKey {
  std::size_t n0 = 1;
  std::optional<Byte> c;
  std::optional<PermutationVector> z;
  Bytes y_long;

  bool is_ieacd() const noexcept { return z.has_value(); }
  void validate() const;

  friend bool operator==(const EquivalentKey&, const EquivalentKey&) = default;
};

// Modular byte arithmetic.

constexpr Byte byte_xor(Byte a, Byte b) noexcept { return static_cast<Byte>(a ^ b); }

/// a ⊞ b = (a + b) mod 256; `b` may exceed 255 (permutation indices).
constexpr Byte byte_addmod(Byte a, std::uint64_t b) noexcept {
  return static_cast<Byte>((static_cast<std::uint64_t>(a) + b) & 0xFFu);
}

/// a ⊟ b = (a − b + 256) mod 256.
constexpr Byte byte_submod(Byte a, std::uint64_t b) noexcept {
  return static_cast<Byte>((static_cast<std::uint64_t>(a) + 256u - (b & 0xFFu)) & 0xFFu);
}

/// Pixel-wise XOR of two equally sized sequences.
Bytes xor_bytes(std::span<const Byte> a, std::span<const Byte> b);

/// ⌊sum / length⌋ with exact integer arithmetic.
std::size_t floor_mean(std::span<const Byte> values);

}  // namespace chaoscrack
