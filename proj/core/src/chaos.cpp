#include "chaoscrack/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace chaoscrack {

namespace {

double euler_update(const IkedaParams& p, double last, double first) {
  return last + p.h * (-p.alpha * last + p.m * std::sin(first));
}

void require_finite(double v) {
  if (!std::isfinite(v)) throw ValidationError("Ikeda state became non-finite");
}

}  // namespace

std::pair<IkedaState, double> ikeda_step(const IkedaState& state) {
  if (state.x.empty()) throw ValidationError("Ikeda state needs at least one component");
  const auto& x = state.x;
  const double sample = euler_update(state.params, x.back(), x.front());
  require_finite(sample);
  IkedaState next{std::vector<double>(x.begin() + 1, x.end()), state.params};
  next.x.push_back(sample);
  return {std::move(next), sample};
}

IkedaGenerator::IkedaGenerator(IkedaParams params, std::vector<double> x0)
    : params_(params), ring_(std::move(x0)) {
  if (ring_.empty()) throw ValidationError("Ikeda state needs at least one component");
}

double IkedaGenerator::next() {
  const std::size_t n = ring_.size();
  const std::size_t last = (head_ + n - 1) % n;
  const double sample = euler_update(params_, ring_[last], ring_[head_]);
  require_finite(sample);
  // X_1 drops out of the window; its slot becomes the new X_M.
  ring_[head_] = sample;
  head_ = (head_ + 1) % n;
  return sample;
}

std::vector<double> IkedaGenerator::state() const {
  std::vector<double> out(ring_.size());
  for (std::size_t i = 0; i < ring_.size(); ++i) out[i] = ring_[(head_ + i) % ring_.size()];
  return out;
}

std::vector<double> ikeda_sequence(const IkedaParams& params, std::span<const double> x0,
                                   std::size_t count) {
  IkedaGenerator gen(params, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> out(count);
  for (auto& s : out) s = gen.next();
  return out;
}

Byte quantize(double sample) {
  if (!std::isfinite(sample)) throw ValidationError("cannot quantize a non-finite sample");
  // fmod is exact, so this is the true remainder even beyond 2^63.
  double r = std::fmod(std::floor(sample * 1e14), 256.0);
  if (r < 0) r += 256.0;
  return static_cast<Byte>(static_cast<int>(r) & 0xFF);
}

Bytes quantize(std::span<const double> samples) {
  Bytes out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(),
                 [](double s) { return quantize(s); });
  return out;
}

std::vector<double> logistic_sequence(double q0, double beta, std::size_t count) {
  if (!(q0 > 0.0 && q0 < 1.0)) throw ValidationError("logistic q0 must be in (0, 1)");
  if (!(beta > 3.5699456 && beta <= 4.0)) {
    throw ValidationError("logistic beta must be in (3.5699456, 4]");
  }
  std::vector<double> q;
  q.reserve(count);
  double v = q0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(v > 0.0 && v < 1.0)) {
      throw ValidationError("logistic orbit left (0, 1) at step " + std::to_string(i));
    }
    q.push_back(v);
    v = beta * v * (1.0 - v);
  }
  return q;
}

PermutationVector rank_permutation(std::span<const double> q) {
  std::vector<std::uint32_t> order(q.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return q[a] > q[b]; });
  std::vector<std::uint32_t> z(q.size());
  for (std::size_t r = 0; r < order.size(); ++r) z[order[r]] = static_cast<std::uint32_t>(r);
  return PermutationVector(std::move(z));
}

IkedaKeystream::IkedaKeystream(IkedaParams params, std::vector<double> x0)
    : params_(params), x0_(std::move(x0)) {
  if (x0_.empty()) throw ValidationError("Ikeda state needs at least one component");
}

IkedaKeystream::IkedaKeystream(const SecretKey& key) : IkedaKeystream(ikeda_params(key), key.x0) {}

Bytes IkedaKeystream::generate(std::size_t count) const {
  IkedaGenerator gen(params_, x0_);
  Bytes out(count);
  for (auto& b : out) b = quantize(gen.next());
  return out;
}

Bytes FixedKeystream::generate(std::size_t count) const {
  if (count > bytes_.size()) {
    throw ValidationError("fixed keystream holds " + std::to_string(bytes_.size()) +
                          " bytes, " + std::to_string(count) + " requested");
  }
  return Bytes(bytes_.begin(), bytes_.begin() + static_cast<std::ptrdiff_t>(count));
}

IkedaParams ikeda_params(const SecretKey& key) { return {key.alpha, key.m, key.h}; }

PermutationVector derive_permutation(const SecretKey& key, std::size_t hw) {
  if (!key.q0 || !key.beta) throw ValidationError("key lacks logistic parameters q0/beta");
  return rank_permutation(logistic_sequence(*key.q0, *key.beta, hw));
}

}  // namespace chaoscrack
