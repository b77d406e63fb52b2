// Seeded Monte Carlo experiments. Trial t draws from its own generator seeded
// with (seed, t), so results do not depend on how trials are scheduled.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chaoscrack/report.hpp"

namespace chaoscrack {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  /// Zero picks the experiment's own default.
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t trials = 0;
  std::size_t pairs = 5;
  std::size_t n0 = 100;
  /// Worker threads; zero means hardware concurrency.
  std::size_t threads = 0;
  /// DOT files from smn-report land here when non-empty.
  std::string artifact_dir;
};

/// Known const-128 pair, targets const-32/64/192 (256×256).
ExperimentReport run_brightness(const ExperimentConfig& config);
/// Single-pixel ±1 changes vs s/HW (64×64, 10^4 trials).
ExperimentReport run_pc_estimate(const ExperimentConfig& config);
/// cpa_ieacd end to end, checked by decrypting a held-out image (64×64, 20 trials).
ExperimentReport run_success_rate(const ExperimentConfig& config);
/// SMN statistics for e = 3 and e = 4 with the reference parameters.
ExperimentReport run_smn_report(const ExperimentConfig& config);
/// Mask attack under n0 >= HW/2 (64×64, 20 trials).
ExperimentReport run_mask_trials(const ExperimentConfig& config);
/// kpa_ieatd with a natural known image (256×256, 20 trials).
ExperimentReport run_kpa_trials(const ExperimentConfig& config);
/// Autocorrelation n0 estimate from the zero image (256×256, 20 trials).
ExperimentReport run_autocorr_trials(const ExperimentConfig& config);

const std::vector<std::string>& experiment_names();
/// Throws ValidationError for an unknown name.
ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& config);

}  // namespace chaoscrack
