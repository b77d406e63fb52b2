#include <benchmark/benchmark.h>

#include <random>

#include "chaoscrack/attack_ieacd.hpp"
#include "chaoscrack/attack_ieatd.hpp"
#include "chaoscrack/ieacd.hpp"
#include "chaoscrack/ieatd.hpp"
#include "chaoscrack/smn.hpp"
#include "chaoscrack/synthetic.hpp"

using namespace chaoscrack;

namespace {

void BM_IeatdEncrypt(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const Image img = natural_image(side, side, rng);
  const SecretKey key = random_key(Algorithm::Ieatd, 100, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ieatd_encrypt(img, key));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * img.size()));
}
BENCHMARK(BM_IeatdEncrypt)->Arg(64)->Arg(256);

void BM_IeacdEncrypt(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const Image img = natural_image(side, side, rng);
  const SecretKey key = random_key(Algorithm::Ieacd, 100, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ieacd_encrypt(img, key));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * img.size()));
}
BENCHMARK(BM_IeacdEncrypt)->Arg(64)->Arg(256);

void BM_KpaIeatd(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Image known = natural_image(256, 256, rng);
  const SecretKey key = random_key(Algorithm::Ieatd, 100, rng);
  const Image cipher = ieatd_encrypt(known, key);
  for (auto _ : state) benchmark::DoNotOptimize(kpa_ieatd(known, cipher));
}
BENCHMARK(BM_KpaIeatd)->Unit(benchmark::kMillisecond);

void BM_CpaIeacd(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  const SecretKey key = random_key(Algorithm::Ieacd, 100, rng);
  const EncryptionOracle oracle = [&](const Image& img) { return ieacd_encrypt(img, key); };
  CpaIeacdConfig config;
  config.width = side;
  config.height = side;
  for (auto _ : state) benchmark::DoNotOptimize(cpa_ieacd(oracle, config));
}
BENCHMARK(BM_CpaIeacd)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BuildSmn(benchmark::State& state) {
  const auto fmt = FixedPointFormat::with_precision(static_cast<int>(state.range(0)));
  const auto params = FixedIkedaParams::reference(fmt);
  for (auto _ : state) benchmark::DoNotOptimize(build_smn(params, fmt));
}
BENCHMARK(BM_BuildSmn)->DenseRange(3, 8);

}  // namespace

BENCHMARK_MAIN();
