#include <random>
#include <string>

#include "chaoscrack/core.hpp"
#include "chaoscrack/key_io.hpp"
#include "chaoscrack/pgm.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chaoscrack;

TEST_CASE("byte arithmetic") {
  CHECK(byte_xor(5, 233) == 236);
  CHECK(byte_xor(189, 18) == 175);
  for (int x = 0; x < 256; ++x) CHECK(byte_xor(static_cast<Byte>(x), 0) == x);

  CHECK(byte_addmod(216, 14) == 230);
  CHECK(byte_addmod(255, 1) == 0);
  CHECK(byte_addmod(89, 14) == 103);
  // permutation indices above 255 reduce mod 256
  CHECK(byte_addmod(10, 4097) == 11);

  CHECK(byte_submod(0, 1) == 255);
  CHECK(byte_submod(230, 14) == 216);
}

TEST_CASE("addmod/submod round trip, exhaustive") {
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 1024; ++b) {
      const auto x = static_cast<Byte>(a);
      REQUIRE(byte_submod(byte_addmod(x, b), b) == x);
      REQUIRE(byte_addmod(byte_submod(x, b), b) == x);
    }
  }
}

TEST_CASE("floor_mean and xor_bytes") {
  const Bytes v{1, 2, 2};
  CHECK(floor_mean(v) == 1);
  const Bytes big(70000, 255);
  CHECK(floor_mean(big) == 255);
  CHECK(xor_bytes(Bytes{1, 2}, Bytes{3, 3}) == Bytes{2, 1});
  CHECK_THROWS_AS(xor_bytes(Bytes{1}, Bytes{1, 2}), ValidationError);
}

TEST_CASE("PermutationVector") {
  const PermutationVector z(golden::kZ);
  const auto inv = z.inverse();
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(inv[z[i]] == i);
  CHECK_THROWS_AS(PermutationVector({0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(PermutationVector({0, 3}), ValidationError);
  CHECK(PermutationVector::identity(3).values() == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("Image") {
  CHECK_THROWS_AS(Image(2, 2, Bytes{1, 2, 3}), ValidationError);
  const auto img = Image::constant(3, 2, 9);
  CHECK(img.size() == 6);
  CHECK(img[5] == 9);
}

TEST_CASE("PGM") {
  SUBCASE("golden payload") {
    const std::string data = save_pgm(golden::plain());
    CHECK(data.rfind("P5\n4 4\n255\n", 0) == 0);
    const std::string payload = data.substr(data.size() - 16);
    CHECK(Bytes(payload.begin(), payload.end()) == golden::kPlain);
  }
  SUBCASE("round trip") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
      const std::size_t w = gen::in_range(rng, 1, 40), h = gen::in_range(rng, 1, 40);
      const Image img(w, h, gen::bytes(rng, w * h));
      CHECK(load_pgm(save_pgm(img)) == img);
    }
  }
  SUBCASE("comments in header") {
    const Image img = load_pgm(std::string("P5\n# made by hand\n2 1 # dims\n255\n\x01\x02"));
    CHECK(img.width() == 2);
    CHECK(img.bytes() == Bytes{1, 2});
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(load_pgm(std::string("P6\n1 1\n255\n\x01\x01\x01")), FormatError);
    CHECK_THROWS_AS(load_pgm(std::string("P5\n1 1\n15\n\x01")), FormatError);
    CHECK_THROWS_AS(load_pgm(std::string("P5\n2 2\n255\n\x01")), FormatError);
    CHECK_THROWS_AS(load_pgm(std::string("")), FormatError);
  }
}

TEST_CASE("secret key files") {
  const std::string text = "n0=100\nalpha=6\nm=19.5\nh=0.1\nx0=0.1,0.2,0.3\n";
  const SecretKey key = load_key(text);
  CHECK(key.n0 == 100);
  CHECK(key.algorithm == Algorithm::Ieatd);
  CHECK(key.x0.size() == 3);
  CHECK(load_key(save_key(key)) == key);

  CHECK_THROWS_AS(load_key("n0=100\nalpha=0.5\nm=19.5\nh=0.1\nx0=0.1\n"), ValidationError);
  CHECK_THROWS_AS(load_key("n0=0\nalpha=6\nm=19.5\nh=0.1\nx0=0.1\n"), ValidationError);
  CHECK_THROWS(load_key("n0=1\nalpha=6\nm=19.5\nh=0.1\nx0=0.1\nbogus=1\n"));

  const SecretKey ieacd = load_key(
      "# comment\nalgorithm=ieacd\nn0=100\nalpha=6\nm=19.5\nh=0.1\nx0=0.5\n\n"
      "c=216\nq0=0.75\nbeta=3.7488464\n");
  CHECK(ieacd.c == 216);
  CHECK(load_key(save_key(ieacd)) == ieacd);
}

TEST_CASE("equivalent key files") {
  EquivalentKey key;
  key.n0 = 4;
  key.c = golden::kC;
  key.z = PermutationVector(golden::kZ);
  key.y_long = golden::kStub;
  CHECK(load_equivalent_key(save_equivalent_key(key)) == key);

  EquivalentKey plain;
  plain.n0 = 3;
  plain.y_long = {1, 2, 3, 4, 5};
  const auto back = load_equivalent_key(save_equivalent_key(plain));
  CHECK(back == plain);
  CHECK_FALSE(back.is_ieacd());
}
