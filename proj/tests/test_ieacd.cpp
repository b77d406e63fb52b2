#include <random>

#include "chaoscrack/ieacd.hpp"
#include "chaoscrack/synthetic.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chaoscrack;

TEST_CASE("interleave index") {
  CHECK(InterleaveIndex(16).values() ==
        std::vector<std::uint32_t>{0, 8, 1, 9, 2, 10, 3, 11, 4, 12, 5, 13, 6, 14, 7, 15});
  CHECK(InterleaveIndex(2).values() == std::vector<std::uint32_t>{0, 1});
  CHECK_THROWS_AS(InterleaveIndex(5), ValidationError);
  CHECK_THROWS_AS(InterleaveIndex(0), ValidationError);
  for (std::size_t hw = 2; hw < 300; hw += 2) REQUIRE(is_bijection(InterleaveIndex(hw).values()));
}

TEST_CASE("permutations") {
  const PermutationVector z(golden::kZ);
  CHECK(permute_forward(golden::kPlain, z) == golden::kPermuted);
  CHECK(permute_forward(golden::kPlain, PermutationVector::identity(16)) == golden::kPlain);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const PermutationVector p(gen::permutation(rng, 16));
    const Bytes v = gen::bytes(rng, 16);
    REQUIRE(permute_output(permute_forward(v, p), p) == v);
    REQUIRE(permute_forward(permute_output(v, p), p) == v);
  }
}

TEST_CASE("crossover rounds, golden rows") {
  const PermutationVector z(golden::kZ);
  const InterleaveIndex u(16);
  const Bytes r1 = crossover_round1(golden::kConfused, z, u, golden::kC);
  CHECK(r1[0] == 10);
  CHECK(r1[8] == 175);
  CHECK(r1 == golden::kRound1);
  const Bytes r2 = crossover_round2(r1, z, u);
  CHECK(r2[0] == 109);
  CHECK(r2 == golden::kRound2);
  CHECK(invert_round2(r2, z, u) == r1);
  CHECK(invert_round1(r1, z, u, golden::kC) == golden::kConfused);

  // Zero input: only z's own contributions leak through, 0 xor (0 + 0) = 0 then 0 xor (0 + 1).
  CHECK(crossover_round2(Bytes(2, 0), PermutationVector::identity(2), InterleaveIndex(2)) ==
        Bytes{0, 1});
}

TEST_CASE("ieacd golden pipeline") {
  const auto t =
      ieacd_encrypt_trace(golden::plain(), golden::material(), FixedKeystream(golden::kStub));
  CHECK(t.permuted == golden::kPermuted);
  CHECK(t.keystream.segmentation.lengths == golden::kSegments);
  CHECK(t.keystream.y == golden::kKeystream);
  CHECK(t.confused == golden::kConfused);
  CHECK(t.diffused1 == golden::kRound1);
  CHECK(t.diffused2 == golden::kRound2);
  CHECK(t.cipher.bytes() == golden::kCipher);
  CHECK(ieacd_decrypt(t.cipher, golden::material(), FixedKeystream(golden::kStub)) ==
        golden::plain());
}

TEST_CASE("ieacd equivalent-key decryption of the golden cipher") {
  EquivalentKey key;
  key.n0 = golden::kN0;
  key.c = golden::kC;
  key.z = PermutationVector(golden::kZ);
  key.y_long = golden::kStub;
  const auto r = ieacd_decrypt(Image(4, 4, golden::kCipher), key);
  CHECK(r.without_diffusion == golden::kConfused);
  CHECK(r.without_confusion == golden::kPermuted);
  CHECK(r.valid_prefix == 16);
  CHECK(r.image == golden::plain());
}

TEST_CASE("ieacd against the reference on random keys") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    const auto [w, h] = gen::even_size(rng);
    const Image img(w, h, gen::bytes(rng, w * h));
    const SecretKey key = random_key(Algorithm::Ieacd, gen::in_range(rng, 1, w * h), rng, 5);
    const auto material = ieacd_material(key, img.size());
    const IkedaKeystream src(key);
    const Bytes expected = ref::ieacd(img.bytes(), material.z.values(), material.c, key.n0,
                                      [&](std::size_t n) { return src.generate(n); });
    const Image c = ieacd_encrypt(img, key);
    REQUIRE(c.bytes() == expected);
    REQUIRE(ieacd_decrypt(c, key) == img);
  }
}

TEST_CASE("ieacd rejects odd pixel counts") {
  std::mt19937_64 rng(1);
  const SecretKey key = random_key(Algorithm::Ieacd, 4, rng, 3);
  CHECK_THROWS_AS(ieacd_encrypt(Image(3, 3), key), ValidationError);
  CHECK_THROWS_AS(ieacd_decrypt(Image(5, 1), key), ValidationError);
}

TEST_CASE("mean-preserving unit change keeps the keystream") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t w = 16, h = 16;
    const Image img = natural_image(w, h, rng);
    const SecretKey key = random_key(Algorithm::Ieacd, gen::in_range(rng, 4, 60), rng, 5);
    const auto material = ieacd_material(key, img.size());
    const std::size_t a = gen::in_range(rng, 0, img.size() - 1);
    Image other = img;
    other[a] = img[a] == 255 ? 254 : img[a] + 1;
    const auto p0 = permute_forward(img.bytes(), material.z);
    const auto p1 = permute_forward(other.bytes(), material.z);
    if (ref::segments(p0, key.n0) != ref::segments(p1, key.n0)) continue;
    ++checked;
    const IkedaKeystream src(key);
    REQUIRE(ieacd_encrypt_trace(img, material, src).keystream.y ==
            ieacd_encrypt_trace(other, material, src).keystream.y);
  }
  CHECK(checked > 150);
}

// Swapping two entries of z never leaves the decryption exact. How far the
// damage spreads depends on whether a wrong byte shifts a segment boundary:
// the diffusion inverse itself only corrupts the neighbours of the bad entry.
TEST_CASE("a corrupted z breaks decryption") {
  std::mt19937_64 rng(29);
  const int trials = 200;
  double total = 0;
  std::size_t untouched = 0, majority = 0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t w = 32, h = 32;
    const Image img = natural_image(w, h, rng);
    const SecretKey key = random_key(Algorithm::Ieacd, gen::in_range(rng, 10, 200), rng, 5);
    auto material = ieacd_material(key, img.size());
    const IkedaKeystream src(key);
    const Image c = ieacd_encrypt(img, material, src);
    auto z = material.z.values();
    const std::size_t i = gen::in_range(rng, 0, z.size() - 1);
    std::size_t j = gen::in_range(rng, 0, z.size() - 2);
    if (j >= i) ++j;
    std::swap(z[i], z[j]);
    material.z = PermutationVector(z);
    const Image d = ieacd_decrypt(c, material, src);
    std::size_t diff = 0;
    for (std::size_t k = 0; k < img.size(); ++k) diff += d[k] != img[k];
    untouched += diff == 0;
    majority += 2 * diff > img.size();
    total += static_cast<double>(diff) / static_cast<double>(img.size());
  }
  MESSAGE("mean differing fraction " << total / trials << ", over half in " << majority << "/"
                                     << trials);
  CHECK(untouched == 0);
}
