#include "chaoscrack/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "chaoscrack/attack_ieacd.hpp"
#include "chaoscrack/attack_ieatd.hpp"
#include "chaoscrack/ieacd.hpp"
#include "chaoscrack/ieatd.hpp"
#include "chaoscrack/key_io.hpp"
#include "chaoscrack/smn.hpp"
#include "chaoscrack/synthetic.hpp"

namespace chaoscrack {

namespace {

std::size_t or_default(std::size_t value, std::size_t fallback) {
  return value ? value : fallback;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

// Runs fn(t) for t in [0, count) on a small pool; results stay in trial order.
template <typename T>
std::vector<T> run_trials(std::size_t count, std::size_t threads,
                          const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  const std::size_t workers = std::clamp<std::size_t>(
      threads ? threads : std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t t; (t = next++) < count;) {
      try {
        out[t] = fn(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

void common_params(ExperimentReport& r, const ExperimentConfig& c, std::size_t w, std::size_t h,
                   std::size_t trials) {
  r.param("seed", std::to_string(c.seed));
  r.param("width", std::to_string(w));
  r.param("height", std::to_string(h));
  if (trials) r.param("trials", std::to_string(trials));
}

EncryptionOracle ieatd_oracle(const SecretKey& key) {
  return [key](const Image& img) { return ieatd_encrypt(img, key); };
}

EncryptionOracle ieacd_oracle(const SecretKey& key) {
  return [key](const Image& img) { return ieacd_encrypt(img, key); };
}

}  // namespace

ExperimentReport run_brightness(const ExperimentConfig& config) {
  const std::size_t w = or_default(config.width, 256);
  const std::size_t h = or_default(config.height, 256);
  ExperimentReport r{"brightness", {}, {}, {}};
  common_params(r, config, w, h, 0);
  r.param("n0", std::to_string(config.n0));

  auto rng = trial_rng(config.seed, 0);
  const SecretKey key = random_key(Algorithm::Ieatd, config.n0, rng);
  const Image known = Image::constant(w, h, 128);
  const auto kpa = kpa_ieatd(known, ieatd_encrypt(known, key));
  r.metric("n0_recovered", static_cast<double>(kpa.key.n0));
  r.metric("y_long_length", static_cast<double>(kpa.key.y_long.size()));
  for (const int level : {32, 64, 192}) {
    const Image target = Image::constant(w, h, static_cast<Byte>(level));
    const auto dec = progressive_decrypt(ieatd_encrypt(target, key), kpa.key);
    const std::string suffix = std::to_string(level);
    r.metric("valid_prefix_fraction_" + suffix,
             static_cast<double>(dec.valid_prefix) / static_cast<double>(target.size()));
    r.metric("exact_" + suffix, dec.image == target ? 1.0 : 0.0);
  }
  return r;
}

ExperimentReport run_pc_estimate(const ExperimentConfig& config) {
  const std::size_t w = or_default(config.width, 64);
  const std::size_t h = or_default(config.height, 64);
  const std::size_t trials = or_default(config.trials, 10000);
  const std::size_t hw = w * h;
  ExperimentReport r{"pc-estimate", {}, {}, {}};
  common_params(r, config, w, h, trials);
  r.param("n0", std::to_string(config.n0));

  struct Trial {
    bool changed = false;
    std::size_t segments = 0;
  };
  const auto results = run_trials<Trial>(trials, config.threads, [&](std::size_t t) {
    auto rng = trial_rng(config.seed, t);
    const Image img = random_image(w, h, rng);
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, hw - 1)(rng);
    int delta = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
    if (img[a] == 255) delta = -1;
    if (img[a] == 0) delta = 1;
    Bytes changed = img.bytes();
    changed[a] = static_cast<Byte>(changed[a] + delta);
    const Segmentation before = segment_lengths(img.pixels(), config.n0);
    return Trial{before != segment_lengths(changed, config.n0), before.count()};
  });

  double changed = 0;
  double segments = 0;
  for (const auto& t : results) {
    changed += t.changed ? 1 : 0;
    segments += static_cast<double>(t.segments);
  }
  const double n = static_cast<double>(trials);
  const double empirical = changed / n;
  const double mean_s = segments / n;
  const double model = mean_s / static_cast<double>(hw);
  const double sigma = std::sqrt(model * (1.0 - model) / n);
  r.metric("changes", changed);
  r.metric("mean_segments", mean_s);
  r.metric("pc_empirical", empirical);
  r.metric("pc_model", model);
  r.metric("pc_sigma", sigma);
  r.metric("pc_z", sigma > 0 ? (empirical - model) / sigma : 0.0);
  return r;
}

ExperimentReport run_success_rate(const ExperimentConfig& config) {
  const std::size_t w = or_default(config.width, 64);
  const std::size_t h = or_default(config.height, 64);
  const std::size_t trials = or_default(config.trials, 20);
  const std::size_t hw = w * h;
  ExperimentReport r{"success-rate", {}, {}, {}};
  common_params(r, config, w, h, trials);
  r.param("pairs", std::to_string(config.pairs));
  r.param("n0", std::to_string(config.n0));

  struct Trial {
    bool success = false;
    std::size_t pairs = 0;
    std::size_t retries = 0;
    std::size_t segments = 0;
  };
  const auto results = run_trials<Trial>(trials, config.threads, [&](std::size_t t) {
    auto rng = trial_rng(config.seed, t);
    const SecretKey key = random_key(Algorithm::Ieacd, config.n0, rng);
    CpaIeacdConfig cpa;
    cpa.width = w;
    cpa.height = h;
    cpa.pairs = config.pairs;
    cpa.max_pairs = config.pairs + 3;
    cpa.seed = rng();
    const Image held_out = natural_image(w, h, rng);
    Trial out;
    out.segments = segment_lengths(permute_forward(held_out, derive_permutation(key, hw)).pixels(),
                                   key.n0)
                       .count();
    try {
      const auto res = cpa_ieacd(ieacd_oracle(key), cpa);
      const auto dec = ieacd_decrypt(ieacd_encrypt(held_out, key), res.key);
      out.success = dec.image == held_out && dec.valid_prefix == hw;
      out.pairs = res.pairs_consumed;
      out.retries = res.retries;
    } catch (const AttackError&) {
      out.success = false;
    }
    return out;
  });

  double successes = 0, pairs = 0, retries = 0, segments = 0;
  for (const auto& t : results) {
    successes += t.success ? 1 : 0;
    pairs += static_cast<double>(t.pairs);
    retries += static_cast<double>(t.retries);
    segments += static_cast<double>(t.segments);
  }
  const double n = static_cast<double>(trials);
  const std::size_t mean_s = static_cast<std::size_t>(std::lround(segments / n));
  const auto model = success_model(hw, std::max<std::size_t>(mean_s, 1), config.pairs);
  r.metric("successes", successes);
  r.metric("success_rate", successes / n);
  r.metric("mean_pairs_consumed", pairs / n);
  r.metric("mean_retries", retries / n);
  r.metric("mean_segments", segments / n);
  r.metric("model_p_c", model.p_c);
  r.metric("model_p_s", model.p_s);
  r.metric("model_p_z", model.p_z);
  return r;
}

ExperimentReport run_smn_report(const ExperimentConfig& config) {
  ExperimentReport r{"smn-report", {}, {}, {}};
  r.param("alpha", "48/8");
  r.param("h", "1/8");
  r.param("m", "156/8");
  r.param("dims", "1");
  for (const int e : {3, 4}) {
    const auto fmt = FixedPointFormat::with_precision(e);
    const auto smn = build_smn(FixedIkedaParams::reference(fmt), fmt, 1);
    const std::string prefix = "e" + std::to_string(e) + ".";
    std::istringstream lines(smn_report(smn));
    for (std::string line; std::getline(lines, line);) {
      const auto eq = line.find('=');
      r.metric(prefix + line.substr(0, eq), std::stod(line.substr(eq + 1)));
    }
    if (!config.artifact_dir.empty()) {
      const auto path = std::filesystem::path(config.artifact_dir) / ("smn_e" + std::to_string(e) + ".dot");
      write_text_file(path, export_dot(smn));
      r.artifacts.push_back(path.string());
    }
  }
  return r;
}

ExperimentReport run_mask_trials(const ExperimentConfig& config) {
  const std::size_t w = or_default(config.width, 64);
  const std::size_t h = or_default(config.height, 64);
  const std::size_t trials = or_default(config.trials, 20);
  const std::size_t hw = w * h;
  ExperimentReport r{"mask", {}, {}, {}};
  common_params(r, config, w, h, trials);

  const auto results = run_trials<int>(trials, config.threads, [&](std::size_t t) {
    auto rng = trial_rng(config.seed, t);
    const std::size_t n0 = std::uniform_int_distribution<std::size_t>(hw / 2, hw)(rng);
    const SecretKey key = random_key(Algorithm::Ieatd, n0, rng);
    const Image known = natural_image(w, h, rng);
    const Image secret = natural_image(w, h, rng);
    const MaskKey mask = mask_attack(known, ieatd_encrypt(known, key));
    return apply_mask(ieatd_encrypt(secret, key), mask) == secret ? 1 : 0;
  });
  double ok = 0;
  for (const int v : results) ok += v;
  r.metric("successes", ok);
  r.metric("success_rate", ok / static_cast<double>(trials));
  return r;
}

ExperimentReport run_kpa_trials(const ExperimentConfig& config) {
  const std::size_t w = or_default(config.width, 256);
  const std::size_t h = or_default(config.height, 256);
  const std::size_t trials = or_default(config.trials, 20);
  const std::size_t hw = w * h;
  ExperimentReport r{"kpa", {}, {}, {}};
  common_params(r, config, w, h, trials);

  struct Trial {
    bool n0_match = false;
    double valid_fraction = 0;
  };
  const auto results = run_trials<Trial>(trials, config.threads, [&](std::size_t t) {
    auto rng = trial_rng(config.seed, t);
    const std::size_t n0 =
        std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(hw / 2 - 1, 1000))(rng);
    const SecretKey key = random_key(Algorithm::Ieatd, n0, rng);
    const Image known = natural_image(w, h, rng);
    const Image secret = natural_image(w, h, rng);
    Trial out;
    try {
      const auto res = kpa_ieatd(known, ieatd_encrypt(known, key));
      out.n0_match = res.key.n0 == n0;
      const auto dec = progressive_decrypt(ieatd_encrypt(secret, key), res.key);
      out.valid_fraction = static_cast<double>(dec.valid_prefix) / static_cast<double>(hw);
    } catch (const AttackError&) {
    }
    return out;
  });
  double matches = 0, valid = 0;
  for (const auto& t : results) {
    matches += t.n0_match ? 1 : 0;
    valid += t.valid_fraction;
  }
  r.metric("n0_matches", matches);
  r.metric("mean_held_out_valid_fraction", valid / static_cast<double>(trials));
  return r;
}

ExperimentReport run_autocorr_trials(const ExperimentConfig& config) {
  const std::size_t w = or_default(config.width, 256);
  const std::size_t h = or_default(config.height, 256);
  const std::size_t trials = or_default(config.trials, 20);
  ExperimentReport r{"autocorr", {}, {}, {}};
  common_params(r, config, w, h, trials);
  r.param("n0", std::to_string(config.n0));

  struct Trial {
    bool raw = false;
    bool confirmed = false;
  };
  const auto results = run_trials<Trial>(trials, config.threads, [&](std::size_t t) {
    auto rng = trial_rng(config.seed, t);
    const SecretKey key = random_key(Algorithm::Ieatd, config.n0, rng);
    Trial out;
    try {
      const auto res = cpa_ieatd(ieatd_oracle(key), w, h);
      out.raw = res.autocorr_n0 == config.n0;
      out.confirmed = res.key.n0 == config.n0;
    } catch (const AttackError&) {
    }
    return out;
  });
  double raw = 0, confirmed = 0;
  for (const auto& t : results) {
    raw += t.raw ? 1 : 0;
    confirmed += t.confirmed ? 1 : 0;
  }
  r.metric("argmax_matches", raw);
  r.metric("confirmed_matches", confirmed);
  return r;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"brightness", "pc-estimate", "success-rate",
                                              "smn-report", "mask",        "kpa",
                                              "autocorr"};
  return names;
}

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& config) {
  if (name == "brightness") return run_brightness(config);
  if (name == "pc-estimate") return run_pc_estimate(config);
  if (name == "success-rate") return run_success_rate(config);
  if (name == "smn-report") return run_smn_report(config);
  if (name == "mask") return run_mask_trials(config);
  if (name == "kpa") return run_kpa_trials(config);
  if (name == "autocorr") return run_autocorr_trials(config);
  throw ValidationError("unknown experiment: " + name);
}

}  // namespace chaoscrack
