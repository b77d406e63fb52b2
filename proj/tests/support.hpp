// Shared fixtures: the 4x4 worked example, hand-rolled generators, and a
// loop-by-loop reference cipher that shares no code with the library.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "chaoscrack/attack_ieatd.hpp"
#include "chaoscrack/chaos.hpp"
#include "chaoscrack/core.hpp"
#include "chaoscrack/ieacd.hpp"

namespace golden {

using chaoscrack::Byte;
using chaoscrack::Bytes;

inline const Bytes kPlain{7, 5, 7, 3, 3, 10, 0, 1, 6, 3, 3, 2, 3, 6, 5, 6};
inline const std::vector<std::uint32_t> kZ{14, 6, 4, 12, 2, 15, 10, 0, 8, 7, 9, 1, 11, 3, 5, 13};
inline const Bytes kStub{233, 33, 101, 80, 187, 24, 172, 246, 41, 29, 12, 24};
inline constexpr Byte kC = 216;
inline constexpr std::size_t kN0 = 4;

inline const Bytes kPermuted{5, 0, 3, 3, 7, 6, 3, 7, 6, 1, 3, 5, 2, 3, 10, 6};
inline const std::vector<std::size_t> kSegments{4, 6, 6};
inline const Bytes kKeystream{233, 33, 101, 80, 233, 33, 101, 80, 187, 24, 233, 33, 101, 80, 187, 24};
inline const Bytes kConfused{236, 33, 102, 83, 238, 39, 102, 87, 189, 25, 234, 36, 103, 83, 177, 30};
inline const Bytes kRound1{10, 148, 224, 92, 149, 241, 215, 58, 175, 130, 3, 121, 199, 167, 109, 89};
inline const Bytes kRound2{109, 116, 29, 109, 140, 174, 247, 171, 218, 249, 37, 23, 80, 22, 145, 225};
inline const Bytes kCipher{171, 23, 140, 22, 29, 145, 116, 249, 218, 37, 247, 80, 109, 225, 109, 174};

inline constexpr std::size_t kA = 7;
inline constexpr std::uint32_t kAnchor = 6;
inline const std::vector<std::uint32_t> kPrefix{14, 8};
inline constexpr std::size_t kB = 3;
inline const std::vector<std::uint32_t> kSuffix{4, 9, 12, 1, 2, 11, 15, 3, 10, 5, 0, 13};
inline const std::vector<std::uint32_t> kZPrime{14, 8, 6, 7, 4, 9, 12, 1, 2, 11, 15, 3, 10, 5, 0, 13};
inline const Bytes kKeystreamTail{33, 101, 80, 233, 33, 101, 80, 187, 24, 233, 33, 101, 80, 187, 24};

inline chaoscrack::Image plain() { return chaoscrack::Image(4, 4, kPlain); }

inline chaoscrack::IeacdMaterial material() {
  return {chaoscrack::PermutationVector(kZ), kC, kN0};
}

inline chaoscrack::EncryptionOracle oracle() {
  return [](const chaoscrack::Image& img) {
    return chaoscrack::ieacd_encrypt(img, material(), chaoscrack::FixedKeystream(kStub));
  };
}

}  // namespace golden

namespace gen {

using chaoscrack::Byte;
using chaoscrack::Bytes;

inline Bytes bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<Byte>(rng() & 0xFF);
  return out;
}

inline std::vector<std::uint32_t> permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(p[i - 1], p[rng() % i]);
  }
  return p;
}

inline std::size_t in_range(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + rng() % (hi - lo + 1);
}

/// Even-area size between 4x4 and 64x64 (width even).
inline std::pair<std::size_t, std::size_t> even_size(std::mt19937_64& rng) {
  return {2 * in_range(rng, 2, 32), in_range(rng, 4, 64)};
}

}  // namespace gen

namespace ref {

using chaoscrack::Byte;
using chaoscrack::Bytes;

// Straight transcription of the cipher definitions with plain int arithmetic.
inline std::vector<std::size_t> segments(const Bytes& p, std::size_t n0) {
  std::vector<std::size_t> out;
  std::size_t pos = 0, len = n0;
  while (pos < p.size()) {
    if (len > p.size() - pos) {
      out.push_back(p.size() - pos);
      break;
    }
    unsigned long sum = 0;
    for (std::size_t i = pos; i < pos + len; ++i) sum += p[i];
    out.push_back(len);
    pos += len;
    len += sum / out.back();
  }
  return out;
}

inline Bytes keystream(const Bytes& p, std::size_t n0, const std::function<Bytes(std::size_t)>& src) {
  Bytes y;
  for (const auto n : segments(p, n0)) {
    const Bytes part = src(n);
    y.insert(y.end(), part.begin(), part.begin() + static_cast<long>(n));
  }
  return y;
}

inline Bytes ieatd(const Bytes& p, std::size_t n0, const std::function<Bytes(std::size_t)>& src) {
  const Bytes y = keystream(p, n0, src);
  Bytes c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i] ^ y[i];
  return c;
}

inline Bytes ieacd(const Bytes& p, const std::vector<std::uint32_t>& z, int c, std::size_t n0,
                   const std::function<Bytes(std::size_t)>& src) {
  const std::size_t n = p.size();
  std::vector<std::size_t> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = i % 2 == 0 ? i / 2 : i / 2 + n / 2;
  Bytes star(n);
  for (std::size_t i = 0; i < n; ++i) star[i] = p[z[i]];
  const Bytes conf = ieatd(star, n0, src);
  Bytes r1(n), r2(n), out(n);
  r1[u[0]] = conf[u[0]] ^ ((c + z[u[0]]) % 256);
  for (std::size_t i = 1; i < n; ++i) r1[u[i]] = conf[u[i]] ^ ((r1[u[i - 1]] + z[u[i]]) % 256);
  r2[u[0]] = r1[u[0]] ^ ((r1[u[n - 1]] + z[u[0]]) % 256);
  for (std::size_t i = 1; i < n; ++i) r2[u[i]] = r1[u[i]] ^ ((r2[u[i - 1]] + z[u[i]]) % 256);
  for (std::size_t i = 0; i < n; ++i) out[z[i]] = r2[i];
  return out;
}

}  // namespace ref
