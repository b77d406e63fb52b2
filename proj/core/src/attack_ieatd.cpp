#include "chaoscrack/attack_ieatd.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "chaoscrack/ieatd.hpp"

namespace chaoscrack {

bool detect_weak_key(std::size_t n0, std::size_t hw) { return n0 >= hw / 2; }

MaskKey mask_attack(const Image& known_plain, const Image& known_cipher) {
  if (known_plain.width() != known_cipher.width() ||
      known_plain.height() != known_cipher.height()) {
    throw ValidationError("mask_attack: image sizes differ");
  }
  return {xor_bytes(known_plain.pixels(), known_cipher.pixels())};
}

Image apply_mask(const Image& cipher, const MaskKey& mask) {
  if (mask.mask.size() != cipher.size()) throw ValidationError("apply_mask: size mismatch");
  return cipher.with_pixels(xor_bytes(cipher.pixels(), mask.mask));
}

namespace {

// Integer moments; only the final scaling happens in floating point.
struct Moments {
  std::vector<std::uint64_t> prefix;  // prefix[i] = y[0] + ... + y[i-1]
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
};

Moments moments(std::span<const Byte> y) {
  Moments m;
  m.prefix.resize(y.size() + 1, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    m.prefix[i + 1] = m.prefix[i] + y[i];
    m.sum_sq += static_cast<std::uint64_t>(y[i]) * y[i];
  }
  m.sum = m.prefix.back();
  return m;
}

// n^2 * Σ_{i<n-t} (y_i - μ)(y_{i+t} - μ), kept integral.
long double scaled_numerator(std::span<const Byte> y, const Moments& m, std::size_t t) {
  const std::size_t n = y.size();
  std::uint64_t cross = 0;
  const Byte* a = y.data();
  const Byte* b = y.data() + t;
  for (std::size_t i = 0, len = n - t; i < len; ++i) {
    cross += static_cast<std::uint32_t>(a[i]) * b[i];
  }
  const long double nn = static_cast<long double>(n);
  const long double head = static_cast<long double>(m.prefix[n - t]);
  const long double tail = static_cast<long double>(m.sum - m.prefix[t]);
  const long double s = static_cast<long double>(m.sum);
  return nn * nn * cross - nn * s * (head + tail) + static_cast<long double>(n - t) * s * s;
}

long double scaled_denominator(std::size_t n, const Moments& m) {
  const long double nn = static_cast<long double>(n);
  const long double s = static_cast<long double>(m.sum);
  return nn * nn * m.sum_sq - nn * s * s;
}

}  // namespace

double autocorrelation(std::span<const Byte> y, std::size_t lag) {
  if (lag >= y.size()) throw ValidationError("autocorrelation lag out of range");
  const Moments m = moments(y);
  const long double den = scaled_denominator(y.size(), m);
  if (den <= 0) throw ValidationError("autocorrelation of a constant sequence is undefined");
  return static_cast<double>(scaled_numerator(y, m, lag) / den);
}

std::vector<double> autocorrelation_profile(std::span<const Byte> y, std::size_t max_lag) {
  if (max_lag >= y.size()) throw ValidationError("autocorrelation lag out of range");
  const Moments m = moments(y);
  const long double den = scaled_denominator(y.size(), m);
  if (den <= 0) throw ValidationError("autocorrelation of a constant sequence is undefined");
  std::vector<double> r(max_lag);
  for (std::size_t t = 1; t <= max_lag; ++t) {
    r[t - 1] = static_cast<double>(scaled_numerator(y, m, t) / den);
  }
  return r;
}

std::size_t find_n0_autocorr(std::span<const Byte> y, std::size_t max_lag) {
  if (max_lag < 1) throw ValidationError("find_n0_autocorr needs max_lag >= 1");
  const auto r = autocorrelation_profile(y, max_lag);
  return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin()) + 1;
}

namespace {

bool ranges_equal(std::span<const Byte> y, std::size_t a, std::size_t b, std::size_t len,
                  std::span<const std::size_t> unknown) {
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t pa = a + i;
    const std::size_t pb = b + i;
    if (std::find(unknown.begin(), unknown.end(), pa) != unknown.end() ||
        std::find(unknown.begin(), unknown.end(), pb) != unknown.end()) {
      continue;
    }
    if (y[pa] != y[pb]) return false;
  }
  return true;
}

}  // namespace

std::size_t search_n0(std::span<const Byte> plain, std::span<const Byte> y,
                      std::span<const std::size_t> unknown, std::size_t* rejected) {
  const std::size_t hw = y.size();
  if (plain.size() != hw) throw ValidationError("search_n0: length mismatch");
  const std::size_t limit = hw / 2;
  std::size_t misses = 0;
  for (std::size_t j = 1; j < limit; ++j) {
    if (!ranges_equal(y, 0, j, j, unknown)) continue;
    // Walk the whole segmentation implied by j before accepting it. Each
    // segment must agree with the start of the next one, the final partial
    // segment included.
    std::size_t sum = 0;
    std::size_t prev = j;
    bool confirmed = false;
    while (true) {
      const std::size_t mean = floor_mean(plain.subspan(sum, prev));
      sum += prev;
      const std::size_t len = prev + mean;
      if (len >= hw - sum) {
        confirmed = true;
        break;
      }
      const std::size_t next = sum + len;
      if (!ranges_equal(y, sum, next, std::min(len, hw - next), unknown)) break;
      prev = len;
    }
    if (confirmed) {
      if (rejected) *rejected = misses;
      return j;
    }
    ++misses;
  }
  if (rejected) *rejected = misses;
  return 0;
}

KpaIeatdResult kpa_ieatd(const Image& known_plain, const Image& known_cipher) {
  if (known_plain.size() != known_cipher.size()) {
    throw ValidationError("kpa_ieatd: image sizes differ");
  }
  const Bytes y = xor_bytes(known_plain.pixels(), known_cipher.pixels());
  KpaIeatdResult result;
  const std::size_t n0 = search_n0(known_plain.pixels(), y, {}, &result.rejected_candidates);
  if (n0 == 0) {
    throw AttackError("kpa_ieatd: no n0 below HW/2 is consistent with the known pair");
  }
  const Segmentation seg = segment_lengths(known_plain.pixels(), n0);
  const std::size_t k = seg.longest();
  const auto first = y.begin() + static_cast<std::ptrdiff_t>(seg.offset(k));
  result.key.n0 = n0;
  result.key.y_long.assign(first, first + static_cast<std::ptrdiff_t>(seg.lengths[k]));
  return result;
}

CpaIeatdResult cpa_ieatd(const EncryptionOracle& oracle, std::size_t width, std::size_t height,
                         bool maximize_y_long) {
  const Image zero = Image::constant(width, height, 0);
  const Image full = Image::constant(width, height, 255);
  const std::size_t hw = zero.size();
  if (hw < 6) throw ValidationError("cpa_ieatd needs at least 6 pixels");

  // 0 ⊕ c = c: the zero image's cipher is its keystream.
  const Bytes y_zero = oracle(zero).bytes();
  const Bytes y_full = xor_bytes(full.pixels(), oracle(full).pixels());
  if (y_zero == y_full) {
    throw WeakKeyError("keystream does not depend on the plaintext (n0 >= HW/2); "
                       "use the mask attack");
  }

  CpaIeatdResult result;
  const auto r = autocorrelation_profile(y_zero, hw / 2 - 1);
  std::vector<std::size_t> lags(r.size());
  std::iota(lags.begin(), lags.end(), std::size_t{1});
  std::stable_sort(lags.begin(), lags.end(),
                   [&](std::size_t a, std::size_t b) { return r[a - 1] > r[b - 1]; });
  result.autocorr_n0 = lags.front();
  result.autocorr_peak = r[lags.front() - 1];

  // Every zero-image segment has length n0, so a true lag makes Y n0-periodic.
  std::size_t n0 = 0;
  for (const std::size_t t : lags) {
    if (std::equal(y_zero.begin() + static_cast<std::ptrdiff_t>(t), y_zero.end(),
                   y_zero.begin())) {
      n0 = t;
      break;
    }
  }
  if (n0 == 0) throw AttackError("cpa_ieatd: no autocorrelation peak is a consistent n0");

  const Segmentation seg = segment_lengths(full.pixels(), n0);
  const std::size_t k = seg.longest();
  const auto first = y_full.begin() + static_cast<std::ptrdiff_t>(seg.offset(k));
  result.key.n0 = n0;
  result.key.y_long.assign(first, first + static_cast<std::ptrdiff_t>(seg.lengths[k]));
  result.y255_length = result.key.y_long.size();

  if (maximize_y_long) {
    const auto plan = longest_segment_plan(hw, n0);
    if (plan.length > result.key.y_long.size()) {
      const Image probe = zero.with_pixels(plan.plain);
      const Bytes y = xor_bytes(probe.pixels(), oracle(probe).pixels());
      const auto at = y.begin() + static_cast<std::ptrdiff_t>(plan.offset);
      Bytes longer(at, at + static_cast<std::ptrdiff_t>(plan.length));
      if (!std::equal(result.key.y_long.begin(), result.key.y_long.end(), longer.begin())) {
        throw AttackError("cpa_ieatd: extended keystream disagrees with the all-255 one");
      }
      result.key.y_long = std::move(longer);
    }
  }
  return result;
}

}  // namespace chaoscrack
