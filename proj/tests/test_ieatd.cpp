#include <algorithm>
#include <random>
#include <set>

#include "chaoscrack/ieatd.hpp"
#include "chaoscrack/synthetic.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chaoscrack;

namespace {

EquivalentKey key_from_known(const Image& known, std::size_t n0, const KeystreamSource& src) {
  const Keystream ks = build_keystream(src, segment_lengths(known.pixels(), n0));
  EquivalentKey key;
  key.n0 = n0;
  key.y_long = ks.y_long;
  return key;
}

// Longest full segment any plaintext can produce: explore every reachable
// (offset, length) state, since each segment's floor mean is free in [0, 255].
// Lengths past the end are clamped; they all end the same way.
std::size_t reachable_longest(std::size_t hw, std::size_t n0) {
  const std::size_t side = hw + 2;
  std::vector<bool> seen(side * side, false);
  std::vector<std::pair<std::size_t, std::size_t>> todo{{0, n0}};
  std::size_t best = 0;
  while (!todo.empty()) {
    const auto [pos, len] = todo.back();
    todo.pop_back();
    if (seen[pos * side + len]) continue;
    seen[pos * side + len] = true;
    if (len > hw - pos) {
      best = std::max(best, hw - pos);
      continue;
    }
    best = std::max(best, len);
    if (pos + len == hw) continue;
    const std::size_t next = pos + len;
    for (std::size_t m = 0; m < 256; ++m) {
      todo.push_back({next, std::min(len + m, hw - next + 1)});
    }
  }
  return best;
}

}  // namespace

TEST_CASE("segment_lengths") {
  CHECK(segment_lengths(golden::kPermuted, 4).lengths == golden::kSegments);
  CHECK(segment_lengths(Bytes(16, 0), 4).lengths == std::vector<std::size_t>{4, 4, 4, 4});
  CHECK(segment_lengths(Bytes(16, 255), 4).lengths == std::vector<std::size_t>{4, 12});
  CHECK(segment_lengths(Bytes(16, 0), 16).lengths == std::vector<std::size_t>{16});
  CHECK_THROWS_AS(segment_lengths(Bytes(16, 0), 0), ValidationError);
  CHECK_THROWS_AS(segment_lengths(Bytes(16, 0), 17), ValidationError);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const Bytes p = gen::bytes(rng, gen::in_range(rng, 1, 3000));
    const std::size_t n0 = gen::in_range(rng, 1, p.size());
    const auto seg = segment_lengths(p, n0);
    REQUIRE(seg.lengths == ref::segments(p, n0));
    REQUIRE(seg.total() == p.size());
  }
}

TEST_CASE("Segmentation longest and offset") {
  const Segmentation seg{{4, 6, 6}};
  CHECK(seg.longest() == 2);
  CHECK(seg.offset(0) == 0);
  CHECK(seg.offset(2) == 10);
}

TEST_CASE("build_keystream") {
  const FixedKeystream stub(golden::kStub);
  const Keystream ks = build_keystream(stub, Segmentation{golden::kSegments});
  CHECK(ks.y == golden::kKeystream);
  CHECK(ks.y_long == Bytes{233, 33, 101, 80, 187, 24});

  const Keystream zeros = build_keystream(FixedKeystream(Bytes(20, 0)), Segmentation{{3, 5, 2}});
  CHECK(zeros.y == Bytes(10, 0));
}

TEST_CASE("ieatd golden confusion") {
  const Image permuted(4, 4, golden::kPermuted);
  const FixedKeystream stub(golden::kStub);
  CHECK(ieatd_encrypt(permuted, 4, stub).bytes() == golden::kConfused);
  CHECK(ieatd_decrypt(Image(4, 4, golden::kConfused), 4, stub).bytes() == golden::kPermuted);
  // 0 xor y = y
  CHECK(ieatd_encrypt(Image(4, 4), 4, stub).bytes() ==
        Bytes{233, 33, 101, 80, 233, 33, 101, 80, 233, 33, 101, 80, 233, 33, 101, 80});
}

TEST_CASE("ieatd against the reference on random keys") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const auto [w, h] = gen::even_size(rng);
    const Image img(w, h, gen::bytes(rng, w * h));
    const SecretKey key = random_key(Algorithm::Ieatd, gen::in_range(rng, 1, w * h), rng, 3);
    const IkedaKeystream src(key);
    const auto expected =
        ref::ieatd(img.bytes(), key.n0, [&](std::size_t n) { return src.generate(n); });
    const Image c = ieatd_encrypt(img, key);
    REQUIRE(c.bytes() == expected);
    REQUIRE(ieatd_decrypt(c, key) == img);
  }
}

TEST_CASE("progressive decryption") {
  std::mt19937_64 rng(41);
  const SecretKey key = random_key(Algorithm::Ieatd, 100, rng);
  const IkedaKeystream src(key);
  const std::size_t w = 128, h = 128;

  SUBCASE("same image") {
    const Image zero(w, h, 0);
    const auto r = progressive_decrypt(ieatd_encrypt(zero, key), key_from_known(zero, 100, src));
    CHECK(r.valid_prefix == w * h);
    CHECK(r.image == zero);
  }
  SUBCASE("darker target") {
    const auto eq = key_from_known(Image(w, h, 128), 100, src);
    const Image target(w, h, 64);
    const auto r = progressive_decrypt(ieatd_encrypt(target, key), eq);
    CHECK(r.valid_prefix == w * h);
    CHECK(r.image == target);
  }
  SUBCASE("brighter target") {
    const auto eq = key_from_known(Image(w, h, 64), 100, src);
    const Image target(w, h, 128);
    const auto r = progressive_decrypt(ieatd_encrypt(target, key), eq);
    CHECK(r.valid_prefix < w * h);
    CHECK(std::equal(target.bytes().begin(),
                     target.bytes().begin() + static_cast<long>(r.valid_prefix),
                     r.image.bytes().begin()));
  }
}

TEST_CASE("progressive_unmask never overclaims") {
  // valid_prefix must be a prefix on which the output is correct.
  std::mt19937_64 rng(43);
  for (int t = 0; t < 200; ++t) {
    const std::size_t hw = gen::in_range(rng, 8, 600);
    const std::size_t n0 = gen::in_range(rng, 1, hw / 2);
    const Bytes stream = gen::bytes(rng, hw);
    const FixedKeystream src(stream);
    const Bytes known = gen::bytes(rng, hw), target = gen::bytes(rng, hw);
    const Bytes y_long = build_keystream(src, segment_lengths(known, n0)).y_long;
    const Bytes masked = xor_bytes(target, build_keystream(src, segment_lengths(target, n0)).y);
    const auto r = progressive_unmask(masked, n0, y_long);
    REQUIRE(r.valid_prefix <= hw);
    REQUIRE(std::equal(target.begin(), target.begin() + static_cast<long>(r.valid_prefix),
                       r.plain.begin()));
    if (y_long.size() == hw) REQUIRE(r.valid_prefix == hw);
  }
}

TEST_CASE("longest_segment_plan matches exhaustive search") {
  for (const std::size_t hw : {6u, 16u, 40u, 255u, 300u}) {
    for (std::size_t n0 = 1; n0 <= hw; n0 += (hw > 40 ? 23 : 1)) {
      const auto plan = longest_segment_plan(hw, n0);
      REQUIRE(plan.plain.size() == hw);
      const std::size_t best = reachable_longest(hw, n0);
      CAPTURE(hw);
      CAPTURE(n0);
      REQUIRE(plan.length == best);
      const auto seg = segment_lengths(plan.plain, n0);
      REQUIRE(*std::max_element(seg.lengths.begin(), seg.lengths.end()) == best);
      bool found = false;
      for (std::size_t k = 0; k < seg.count(); ++k) {
        if (seg.offset(k) == plan.offset && seg.lengths[k] == plan.length) found = true;
      }
      REQUIRE(found);
    }
  }
}

TEST_CASE("longest_segment_plan beats the all-255 image when it matters") {
  // All-255 gives 100, 355, 610, 865, 1120 and a 1046 tail; a mean-210 image
  // reaches a full 1150-pixel segment.
  const auto plan = longest_segment_plan(4096, 100);
  const auto full = segment_lengths(Bytes(4096, 255), 100);
  CHECK(full.lengths[full.longest()] == 1120);
  CHECK(segment_lengths(Bytes(4096, 210), 100).lengths[5] == 1150);
  CHECK(plan.length >= 1150);
}
