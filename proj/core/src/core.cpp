#include "chaoscrack/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace chaoscrack {

Image::Image(std::size_t width, std::size_t height, Byte fill)
    : Image(width, height, Bytes(width * height, fill)) {}

Image::Image(std::size_t width, std::size_t height, Bytes pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) {
    throw ValidationError("image dimensions must be positive");
  }
  if (pixels_.size() != width * height) {
    throw ValidationError("pixel count " + std::to_string(pixels_.size()) +
                          " does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

bool is_bijection(std::span<const std::uint32_t> values) {
  std::vector<bool> seen(values.size(), false);
  for (auto v : values) {
    if (v >= values.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

PermutationVector::PermutationVector(std::vector<std::uint32_t> z) : z_(std::move(z)) {
  if (!is_bijection(z_)) {
    throw ValidationError("permutation vector is not a bijection on [0, " +
                          std::to_string(z_.size()) + ")");
  }
}

PermutationVector PermutationVector::identity(std::size_t n) {
  std::vector<std::uint32_t> z(n);
  std::iota(z.begin(), z.end(), 0u);
  return PermutationVector(std::move(z));
}

PermutationVector PermutationVector::inverse() const {
  std::vector<std::uint32_t> inv(z_.size());
  for (std::size_t i = 0; i < z_.size(); ++i) inv[z_[i]] = static_cast<std::uint32_t>(i);
  return PermutationVector(std::move(inv));
}

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Ieatd ? "ieatd" : "ieacd";
}

Algorithm parse_algorithm(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "ieatd") return Algorithm::Ieatd;
  if (lower == "ieacd") return Algorithm::Ieacd;
  throw ValidationError("unknown algorithm '" + text + "' (expected ieatd or ieacd)");
}

namespace {

void require_range(const char* name, double v, double lo, double hi, bool open_lo = false) {
  const bool below = open_lo ? !(v > lo) : !(v >= lo);
  if (!std::isfinite(v) || below || !(v <= hi)) {
    throw ValidationError(std::string(name) + "=" + std::to_string(v) + " outside " +
                          (open_lo ? "(" : "[") + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
}

}  // namespace

void SecretKey::validate() const {
  if (n0 < 1) throw ValidationError("n0 must be >= 1");
  require_range("alpha", alpha, 1.0, 6.0);
  require_range("m", m, 18.0, 20.0);
  require_range("h", h, 0.1, 1.0);
  if (x0.empty()) throw ValidationError("x0 must hold at least one value");
  for (double v : x0) {
    if (!std::isfinite(v)) throw ValidationError("x0 contains a non-finite value");
  }
  if (algorithm == Algorithm::Ieacd) {
    if (!c || !q0 || !beta) throw ValidationError("ieacd keys require c, q0 and beta");
  }
  if (c && (*c < 0 || *c > 255)) throw ValidationError("c must be in [0, 255]");
  if (q0) {
    if (!std::isfinite(*q0) || !(*q0 > 0.0) || !(*q0 < 1.0)) {
      throw ValidationError("q0 must be in (0, 1)");
    }
  }
  if (beta) require_range("beta", *beta, 3.5699456, 4.0, /*open_lo=*/true);
}

void EquivalentKey::validate() const {
  if (n0 < 1) throw ValidationError("n0 must be >= 1");
  if (y_long.size() < n0) {
    throw ValidationError("y_long holds " + std::to_string(y_long.size()) +
                          " bytes, fewer than n0=" + std::to_string(n0));
  }
  if (z && !c) throw ValidationError("an equivalent key with z also needs c");
}

Bytes xor_bytes(std::span<const Byte> a, std::span<const Byte> b) {
  if (a.size() != b.size()) throw ValidationError("xor_bytes: length mismatch");
  Bytes out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = byte_xor(a[i], b[i]);
  return out;
}

std::size_t floor_mean(std::span<const Byte> values) {
  if (values.empty()) return 0;
  const std::uint64_t sum = std::accumulate(values.begin(), values.end(), std::uint64_t{0});
  return static_cast<std::size_t>(sum / values.size());
}

}  // namespace chaoscrack
