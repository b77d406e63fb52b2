// Deterministic chaotic sources: the discretized Ikeda delay system, the
// logistic map, byte quantization and rank-based permutations.
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "chaoscrack/core.hpp"

namespace chaoscrack {

struct IkedaParams {
  double alpha = 6.0;
  double m = 19.5;
  double h = 0.1;
};

/// Delay-line state X_1..X_M of the discretized Ikeda system.
struct IkedaState {
  std::vector<double> x;
  IkedaParams params;
};

/// One step of the delay line. Every component shifts down by one and the
/// last component is advanced by an Euler step driven by sin(X_1). The newly
/// computed last component is the emitted sample.
std::pair<IkedaState, double> ikeda_step(const IkedaState& state);

/// Ring-buffer iterator over the same recurrence as ikeda_step, without
/// copying the delay line on every step.
class IkedaGenerator {
 public:
  IkedaGenerator(IkedaParams params, std::vector<double> x0);

  double next();
  /// Current delay line in X_1..X_M order.
  std::vector<double> state() const;

 private:
  IkedaParams params_;
  std::vector<double> ring_;
  std::size_t head_ = 0;  // index of X_1
};

/// Restarts from x0 and emits `count` samples.
std::vector<double> ikeda_sequence(const IkedaParams& params, std::span<const double> x0,
                                   std::size_t count);

/// Y = (⌊S·10^14⌋ mod 256) with a non-negative remainder.
Byte quantize(double sample);
Bytes quantize(std::span<const double> samples);

/// q(0), q(1), ..., q(count-1) of the logistic map. Throws ValidationError if
/// any value leaves the open interval (0, 1).
std::vector<double> logistic_sequence(double q0, double beta, std::size_t count);

/// z(i) = rank of q(i) in descending order, 0-based. Equal values are ranked
/// by index, smaller index first.
PermutationVector rank_permutation(std::span<const double> q);

/// Produces the first `count` bytes of a restartable keystream. Each call
/// starts from the same initial condition, so shorter outputs are prefixes of
/// longer ones.
class KeystreamSource {
 public:
  virtual ~KeystreamSource() = default;
  virtual Bytes generate(std::size_t count) const = 0;
};

/// The cipher's real keystream: quantized Ikeda samples.
class IkedaKeystream final : public KeystreamSource {
 public:
  IkedaKeystream(IkedaParams params, std::vector<double> x0);
  explicit IkedaKeystream(const SecretKey& key);

  Bytes generate(std::size_t count) const override;

 private:
  IkedaParams params_;
  std::vector<double> x0_;
};

/// Fixed byte stream, for golden tests independent of libm.
class FixedKeystream final : public KeystreamSource {
 public:
  explicit FixedKeystream(Bytes bytes) : bytes_(std::move(bytes)) {}

  /// Throws ValidationError if more bytes are requested than stored.
  Bytes generate(std::size_t count) const override;

 private:
  Bytes bytes_;
};

IkedaParams ikeda_params(const SecretKey& key);

/// Z for an IEACD key: rank_permutation(logistic_sequence(q0, beta, hw)).
PermutationVector derive_permutation(const SecretKey& key, std::size_t hw);

}  // namespace chaoscrack
