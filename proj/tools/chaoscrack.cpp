// chaoscrack: encrypt/decrypt with IEATD and IEACD, run the attacks against a
// local oracle, inspect fixed-point state-mapping networks, run experiments.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "chaoscrack/attack_ieacd.hpp"
#include "chaoscrack/attack_ieatd.hpp"
#include "chaoscrack/experiments.hpp"
#include "chaoscrack/ieacd.hpp"
#include "chaoscrack/ieatd.hpp"
#include "chaoscrack/key_io.hpp"
#include "chaoscrack/pgm.hpp"
#include "chaoscrack/report.hpp"
#include "chaoscrack/smn.hpp"
#include "chaoscrack/synthetic.hpp"

using namespace chaoscrack;

namespace {

struct Options {
  std::string key;
  std::string eqkey;
  std::string in;
  std::string out;
  std::string target;
  std::string algorithm = "ieatd";
  std::optional<std::uint64_t> seed;
  std::size_t pairs = 5;
  std::size_t n0 = 100;
  std::size_t delay = 50;
  std::size_t width = 0;
  std::size_t height = 0;
  std::optional<std::size_t> index;
  std::size_t trials = 0;
  std::size_t threads = 0;
  int frac_bits = 3;
  int total_bits = 0;
  std::size_t dims = 1;
  std::string dot;
  bool no_cluster = false;
  std::string artifacts;
  std::string experiment;
  std::string kind = "natural";
};

void line(const std::string& k, const std::string& v) { std::cout << k << "=" << v << "\n"; }
void line(const std::string& k, std::size_t v) { line(k, std::to_string(v)); }

SecretKey oracle_key(const Options& o) {
  if (o.key.empty()) throw ValidationError("--key is required");
  return load_key(read_text_file(o.key));
}

// The attack code only ever sees this closure.
EncryptionOracle make_oracle(const SecretKey& key) {
  if (key.algorithm == Algorithm::Ieacd) {
    return [key](const Image& img) { return ieacd_encrypt(img, key); };
  }
  return [key](const Image& img) { return ieatd_encrypt(img, key); };
}

void write_eqkey(const Options& o, const EquivalentKey& key) {
  if (o.eqkey.empty()) return;
  write_text_file(o.eqkey, save_equivalent_key(key));
  line("eqkey", o.eqkey);
}

std::pair<std::size_t, std::size_t> attack_size(const Options& o) {
  if (o.width && o.height) return {o.width, o.height};
  if (!o.in.empty()) {
    const Image img = read_pgm_file(o.in);
    return {img.width(), img.height()};
  }
  throw ValidationError("give --width and --height (or --in to copy its size)");
}

// Optional held-out check: encrypt --target with the oracle, decrypt it with
// the recovered key and write the result to --out.
void check_target(const Options& o, const EncryptionOracle& oracle, const EquivalentKey& key) {
  if (o.target.empty()) return;
  const Image plain = read_pgm_file(o.target);
  const Image cipher = oracle(plain);
  Image recovered;
  std::size_t valid = 0;
  if (key.is_ieacd()) {
    auto r = ieacd_decrypt(cipher, key);
    recovered = std::move(r.image);
    valid = r.valid_prefix;
  } else {
    auto r = progressive_decrypt(cipher, key);
    recovered = std::move(r.image);
    valid = r.valid_prefix;
  }
  line("target_valid_prefix", valid);
  line("target_exact", recovered == plain ? "1" : "0");
  if (!o.out.empty()) write_pgm_file(o.out, recovered);
}

int cmd_keygen(const Options& o) {
  const Algorithm alg = parse_algorithm(o.algorithm);
  std::mt19937_64 rng(o.seed ? *o.seed : std::random_device{}());
  const SecretKey key = random_key(alg, o.n0, rng, o.delay);
  const std::string text = save_key(key);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
  return 0;
}

int cmd_synth(const Options& o) {
  if (!o.width || !o.height) throw ValidationError("synth needs --width and --height");
  std::mt19937_64 rng(o.seed ? *o.seed : std::random_device{}());
  const Image img = o.kind == "random" ? random_image(o.width, o.height, rng)
                                       : natural_image(o.width, o.height, rng);
  write_pgm_file(o.out, img);
  return 0;
}

int cmd_encrypt(const Options& o) {
  const SecretKey key = oracle_key(o);
  const Image plain = read_pgm_file(o.in);
  write_pgm_file(o.out, make_oracle(key)(plain));
  return 0;
}

int cmd_decrypt(const Options& o) {
  const Image cipher = read_pgm_file(o.in);
  if (!o.key.empty()) {
    const SecretKey key = oracle_key(o);
    const Image plain =
        key.algorithm == Algorithm::Ieacd ? ieacd_decrypt(cipher, key) : ieatd_decrypt(cipher, key);
    write_pgm_file(o.out, plain);
    return 0;
  }
  if (o.eqkey.empty()) throw ValidationError("decrypt needs --key or --eqkey");
  const EquivalentKey key = load_equivalent_key(read_text_file(o.eqkey));
  std::size_t valid = 0;
  if (key.is_ieacd()) {
    auto r = ieacd_decrypt(cipher, key);
    valid = r.valid_prefix;
    write_pgm_file(o.out, r.image);
  } else {
    auto r = progressive_decrypt(cipher, key);
    valid = r.valid_prefix;
    write_pgm_file(o.out, r.image);
  }
  line("valid_prefix", valid);
  line("pixels", cipher.size());
  return valid == cipher.size() ? 0 : 3;
}

int cmd_attack_mask(const Options& o) {
  const auto oracle = make_oracle(oracle_key(o));
  const Image known = read_pgm_file(o.in);
  line("phase", "query known plaintext");
  const MaskKey mask = mask_attack(known, oracle(known));
  line("phase", "mask recovered");
  line("mask_length", mask.mask.size());
  // A single segment covering the whole image reproduces the mask.
  EquivalentKey key;
  key.n0 = known.size();
  key.y_long = mask.mask;
  write_eqkey(o, key);
  check_target(o, oracle, key);
  return 0;
}

int cmd_attack_kpa(const Options& o) {
  const auto oracle = make_oracle(oracle_key(o));
  const Image known = read_pgm_file(o.in);
  line("phase", "query known plaintext");
  const auto res = kpa_ieatd(known, oracle(known));
  line("phase", "n0 search");
  line("rejected_candidates", res.rejected_candidates);
  line("n0", res.key.n0);
  line("y_long_length", res.key.y_long.size());
  write_eqkey(o, res.key);
  check_target(o, oracle, res.key);
  return 0;
}

int cmd_attack_cpa_ieatd(const Options& o) {
  const auto oracle = make_oracle(oracle_key(o));
  const auto [w, h] = attack_size(o);
  line("phase", "query all-0 and all-255 images");
  const auto res = cpa_ieatd(oracle, w, h);
  line("autocorr_argmax", res.autocorr_n0);
  line("autocorr_peak", format_double(res.autocorr_peak));
  line("n0", res.key.n0);
  line("y_long_length", res.key.y_long.size());
  write_eqkey(o, res.key);
  check_target(o, oracle, res.key);
  return 0;
}

int cmd_attack_cpa_ieacd(const Options& o) {
  const auto oracle = make_oracle(oracle_key(o));
  const auto [w, h] = attack_size(o);
  if ((w * h) % 2 != 0) throw ValidationError("IEACD needs an even pixel count");
  CpaIeacdConfig cfg;
  cfg.width = w;
  cfg.height = h;
  cfg.index = o.index;
  cfg.pairs = o.pairs;
  cfg.max_pairs = o.pairs + 3;
  cfg.seed = o.seed.value_or(1);
  const auto res = cpa_ieacd(oracle, cfg);
  for (const auto& entry : res.log) line("log", entry);
  line("a", res.a);
  line("b", res.b);
  line("anchor", res.anchor);
  line("prefix_length", res.prefix.size());
  line("suffix_length", res.suffix.size());
  line("pairs_consumed", res.pairs_consumed);
  line("pairs_dropped", res.pairs_dropped);
  line("retries", res.retries);
  line("n0", res.key.n0);
  line("c", std::size_t{*res.key.c});
  line("y_long_length", res.key.y_long.size());
  write_eqkey(o, res.key);
  check_target(o, oracle, res.key);
  return 0;
}

int cmd_smn(const Options& o) {
  FixedPointFormat fmt = FixedPointFormat::with_precision(o.frac_bits);
  if (o.total_bits) fmt.total_bits = o.total_bits;
  fmt.validate();
  const auto smn = build_smn(FixedIkedaParams::reference(fmt), fmt, o.dims);
  std::cout << smn_report(smn);
  if (!o.dot.empty()) {
    write_text_file(o.dot, export_dot(smn, {!o.no_cluster, 1u << 16}));
    line("artifact", o.dot);
  }
  return 0;
}

int cmd_experiment(const Options& o) {
  ExperimentConfig cfg;
  cfg.seed = o.seed.value_or(1);
  cfg.width = o.width;
  cfg.height = o.height;
  cfg.trials = o.trials;
  cfg.pairs = o.pairs;
  cfg.n0 = o.n0;
  cfg.threads = o.threads;
  cfg.artifact_dir = o.artifacts;
  const std::string text = run_experiment(o.experiment, cfg).to_text();
  std::cout << text;
  if (!o.out.empty()) write_text_file(o.out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaos-based image cipher workbench: IEATD/IEACD and attacks on them"};
  app.require_subcommand(1);
  Options o;

  auto seed_opt = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "RNG seed (runs are reproducible when given)");
  };

  auto* keygen = app.add_subcommand("keygen", "Generate a random secret key");
  keygen->add_option("--algorithm", o.algorithm, "ieatd or ieacd")->capture_default_str();
  keygen->add_option("--n0", o.n0, "Initial segment length")->capture_default_str();
  keygen->add_option("--delay", o.delay, "Length of X(0)")->capture_default_str();
  keygen->add_option("--out", o.out, "Key file (stdout when omitted)");
  seed_opt(keygen);

  auto* synth = app.add_subcommand("synth", "Write a synthetic test image");
  synth->add_option("--width", o.width)->required();
  synth->add_option("--height", o.height)->required();
  synth->add_option("--kind", o.kind, "natural or random")
      ->check(CLI::IsMember({"natural", "random"}))
      ->capture_default_str();
  synth->add_option("--out", o.out, "PGM file")->required();
  seed_opt(synth);

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a PGM image");
  encrypt->add_option("--key", o.key, "Secret key file")->required();
  encrypt->add_option("--in", o.in, "Plain PGM")->required()->check(CLI::ExistingFile);
  encrypt->add_option("--out", o.out, "Cipher PGM")->required();

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt with a secret or equivalent key");
  auto* dk = decrypt->add_option("--key", o.key, "Secret key file");
  decrypt->add_option("--eqkey", o.eqkey, "Equivalent key file")->excludes(dk);
  decrypt->add_option("--in", o.in, "Cipher PGM")->required()->check(CLI::ExistingFile);
  decrypt->add_option("--out", o.out, "Plain PGM")->required();

  auto* attack = app.add_subcommand("attack", "Attack a local oracle holding --key");
  attack->require_subcommand(1);
  auto attack_common = [&](CLI::App* c) {
    c->add_option("--key", o.key, "Oracle's secret key (never seen by the attack)")->required();
    c->add_option("--eqkey", o.eqkey, "Where to write the recovered equivalent key");
    c->add_option("--target", o.target, "Held-out plain PGM to encrypt and decrypt back");
    c->add_option("--out", o.out, "Where to write the decrypted target");
  };
  auto* mask = attack->add_subcommand("mask", "Weak-key mask attack (n0 >= HW/2)");
  attack_common(mask);
  mask->add_option("--in", o.in, "Known plain PGM")->required()->check(CLI::ExistingFile);
  auto* kpa = attack->add_subcommand("kpa-ieatd", "Known-plaintext attack on IEATD");
  attack_common(kpa);
  kpa->add_option("--in", o.in, "Known plain PGM")->required()->check(CLI::ExistingFile);
  auto* cpa1 = attack->add_subcommand("cpa-ieatd", "Chosen-plaintext attack on IEATD");
  attack_common(cpa1);
  cpa1->add_option("--width", o.width);
  cpa1->add_option("--height", o.height);
  cpa1->add_option("--in", o.in, "PGM whose size to use")->check(CLI::ExistingFile);
  auto* cpa2 = attack->add_subcommand("cpa-ieacd", "Chosen-plaintext attack on IEACD");
  attack_common(cpa2);
  cpa2->add_option("--width", o.width);
  cpa2->add_option("--height", o.height);
  cpa2->add_option("--in", o.in, "PGM whose size to use")->check(CLI::ExistingFile);
  cpa2->add_option("--pairs", o.pairs, "Chosen pairs per index")->capture_default_str();
  cpa2->add_option("--index", o.index, "Modified pixel (random when omitted)");
  seed_opt(cpa2);

  auto* smn = app.add_subcommand("smn", "State-mapping network of the fixed-point Ikeda map");
  smn->add_option("--frac-bits,-e", o.frac_bits, "Fraction bits e")->capture_default_str();
  smn->add_option("--total-bits,-w", o.total_bits, "Word width (default e+6)");
  smn->add_option("--dims", o.dims, "Delay-line length M")->capture_default_str();
  smn->add_option("--dot", o.dot, "Write the graph in DOT format");
  smn->add_flag("--no-cluster", o.no_cluster, "Do not group components in the DOT output");

  auto* experiment = app.add_subcommand("experiment", "Run a seeded experiment");
  experiment->add_option("name", o.experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  seed_opt(experiment);
  experiment->add_option("--width", o.width);
  experiment->add_option("--height", o.height);
  experiment->add_option("--trials", o.trials);
  experiment->add_option("--pairs", o.pairs)->capture_default_str();
  experiment->add_option("--n0", o.n0)->capture_default_str();
  experiment->add_option("--threads", o.threads);
  experiment->add_option("--out", o.out, "Also write the report here");
  experiment->add_option("--artifacts", o.artifacts, "Directory for DOT/PGM artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*keygen) return cmd_keygen(o);
    if (*synth) return cmd_synth(o);
    if (*encrypt) return cmd_encrypt(o);
    if (*decrypt) return cmd_decrypt(o);
    if (*mask) return cmd_attack_mask(o);
    if (*kpa) return cmd_attack_kpa(o);
    if (*cpa1) return cmd_attack_cpa_ieatd(o);
    if (*cpa2) return cmd_attack_cpa_ieacd(o);
    if (*smn) return cmd_smn(o);
    if (*experiment) return cmd_experiment(o);
  } catch (const WeakKeyError& e) {
    std::cerr << "weak key: " << e.what() << "\n";
    return 4;
  } catch (const AttackError& e) {
    std::cerr << "attack failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
