#include "chaoscrack/ieatd.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chaoscrack {

std::size_t Segmentation::total() const noexcept {
  return std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
}

std::size_t Segmentation::longest() const {
  if (lengths.empty()) throw ValidationError("empty segmentation");
  std::size_t best = 0;
  for (std::size_t k = 1; k < lengths.size(); ++k) {
    if (lengths[k] >= lengths[best]) best = k;
  }
  return best;
}

std::size_t Segmentation::offset(std::size_t k) const {
  return std::accumulate(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(k),
                         std::size_t{0});
}

Segmentation segment_lengths(std::span<const Byte> pixels, std::size_t n0) {
  if (n0 < 1) throw ValidationError("n0 must be >= 1");
  if (n0 > pixels.size()) {
    throw ValidationError("n0=" + std::to_string(n0) + " exceeds the pixel count " +
                          std::to_string(pixels.size()));
  }
  Segmentation seg;
  std::size_t pos = 0;
  std::size_t next = n0;
  while (pos < pixels.size()) {
    const std::size_t remaining = pixels.size() - pos;
    if (next > remaining) {
      seg.lengths.push_back(remaining);
      break;
    }
    seg.lengths.push_back(next);
    next += floor_mean(pixels.subspan(pos, next));
    pos += seg.lengths.back();
  }
  return seg;
}

Keystream build_keystream(const KeystreamSource& source, const Segmentation& segmentation) {
  Keystream ks;
  ks.segmentation = segmentation;
  ks.y.reserve(segmentation.total());
  for (const std::size_t n : segmentation.lengths) {
    const Bytes part = source.generate(n);
    ks.y.insert(ks.y.end(), part.begin(), part.end());
  }
  const std::size_t k = segmentation.longest();
  const auto first = ks.y.begin() + static_cast<std::ptrdiff_t>(segmentation.offset(k));
  ks.y_long.assign(first, first + static_cast<std::ptrdiff_t>(segmentation.lengths[k]));
  return ks;
}

Image ieatd_encrypt(const Image& image, std::size_t n0, const KeystreamSource& source) {
  const Keystream ks = build_keystream(source, segment_lengths(image.pixels(), n0));
  return image.with_pixels(xor_bytes(image.pixels(), ks.y));
}

Image ieatd_encrypt(const Image& image, const SecretKey& key) {
  key.validate();
  return ieatd_encrypt(image, key.n0, IkedaKeystream(key));
}

Image ieatd_decrypt(const Image& cipher, std::size_t n0, const KeystreamSource& source) {
  if (n0 < 1 || n0 > cipher.size()) throw ValidationError("n0 outside [1, HW]");
  const auto in = cipher.pixels();
  Bytes plain(in.size());
  std::size_t pos = 0;
  std::size_t next = n0;
  // Segment lengths depend on plaintext means, so they are rebuilt as we go.
  while (pos < in.size()) {
    const std::size_t len = std::min(next, in.size() - pos);
    const Bytes y = source.generate(len);
    for (std::size_t i = 0; i < len; ++i) plain[pos + i] = byte_xor(in[pos + i], y[i]);
    next += floor_mean(std::span<const Byte>(plain).subspan(pos, len));
    pos += len;
  }
  return cipher.with_pixels(std::move(plain));
}

Image ieatd_decrypt(const Image& cipher, const SecretKey& key) {
  key.validate();
  return ieatd_decrypt(cipher, key.n0, IkedaKeystream(key));
}

ProgressiveResult progressive_unmask(std::span<const Byte> masked, std::size_t n0,
                                     std::span<const Byte> y_long) {
  const std::size_t hw = masked.size();
  const std::size_t ny = y_long.size();
  ProgressiveResult out;
  out.plain.assign(masked.begin(), masked.end());
  if (n0 < 1 || ny < n0) return out;

  auto unmask = [&](std::size_t at, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) out.plain[at + i] = byte_xor(masked[at + i], y_long[i]);
  };

  std::size_t sum = 0;
  std::size_t len = n0;
  while (len <= ny && sum + len <= hw) {
    unmask(sum, len);
    const std::size_t mean = floor_mean(std::span<const Byte>(out.plain).subspan(sum, len));
    sum += len;
    len += mean;
  }
  const std::size_t tail = std::min(hw - sum, ny);
  unmask(sum, tail);
  out.valid_prefix = sum + tail;
  return out;
}

ProgressiveImage progressive_decrypt(const Image& cipher, const EquivalentKey& key) {
  auto r = progressive_unmask(cipher.pixels(), key.n0, key.y_long);
  return {cipher.with_pixels(std::move(r.plain)), r.valid_prefix};
}

namespace {

// Start of segment k when segments 0..k-1 grow by a total of g, placed as
// late as possible (255 per step, remainder just before).
std::size_t late_growth_start(std::size_t k, std::size_t n0, std::size_t g) {
  const std::size_t q = g / 255;
  const std::size_t r = g % 255;
  return k * n0 + 255 * q * (q - (q > 0 ? 1 : 0)) / 2 + r * q;
}

}  // namespace

LongestSegmentPlan longest_segment_plan(std::size_t hw, std::size_t n0) {
  if (n0 < 1 || n0 > hw) throw ValidationError("longest_segment_plan: need 1 <= n0 <= hw");
  // Segment k has length n0 + g and starts at S_k(g); for fixed g the start is
  // smallest with the growth pushed to the last steps. The segment's size is
  // min(n0 + g, hw - S_k), largest where the two cross.
  std::size_t best_len = n0, best_k = 0, best_g = 0;
  for (std::size_t k = 1; k * n0 < hw; ++k) {
    auto fits = [&](std::size_t g) { return late_growth_start(k, n0, g) + n0 + g <= hw; };
    std::size_t lo = 0, hi = 255 * k;
    if (!fits(0)) {
      hi = 0;
    } else {
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (fits(mid)) lo = mid; else hi = mid - 1;
      }
    }
    for (const std::size_t g : {lo, std::min(lo + 1, 255 * k)}) {
      const std::size_t start = late_growth_start(k, n0, g);
      if (start >= hw) continue;
      const std::size_t len = std::min(n0 + g, hw - start);
      if (len > best_len) {
        best_len = len;
        best_k = k;
        best_g = g;
      }
    }
  }

  LongestSegmentPlan plan;
  plan.plain.assign(hw, 0);
  const std::size_t q = best_g / 255;
  const std::size_t r = best_g % 255;
  std::size_t pos = 0;
  std::size_t len = n0;
  for (std::size_t i = 0; i < best_k; ++i) {
    const std::size_t growth = i + q >= best_k ? 255 : (i + q + 1 == best_k ? r : 0);
    std::fill_n(plan.plain.begin() + static_cast<std::ptrdiff_t>(pos), len,
                static_cast<Byte>(growth));
    pos += len;
    len += growth;
  }
  plan.offset = pos;
  plan.length = best_len;
  const Segmentation seg = segment_lengths(plan.plain, n0);
  if (seg.count() <= best_k || seg.offset(best_k) != plan.offset ||
      seg.lengths[best_k] != plan.length) {
    throw std::logic_error("longest_segment_plan: construction does not match its segmentation");
  }
  return plan;
}

}  // namespace chaoscrack
