// Test-image generators for the experiments and the chosen-plaintext attacks.
#pragma once

#include <cstddef>
#include <random>

#include "chaoscrack/core.hpp"

namespace chaoscrack {

/// Smooth gradient plus a few Gaussian blobs and mild noise, clamped to [0, 255].
/// Neighbouring pixels are correlated the way photographs are.
Image natural_image(std::size_t width, std::size_t height, std::mt19937_64& rng);

/// Independent uniform pixels.
Image random_image(std::size_t width, std::size_t height, std::mt19937_64& rng);

/// Key with the usual Ikeda parameters (α=6, m=19.5, h=0.1), the given n0 and
/// a random X(0) of length `delay` in (0, 1). IEACD keys also get a random C,
/// q(0) in (0.01, 0.99) and β in (3.6, 3.99).
SecretKey random_key(Algorithm algorithm, std::size_t n0, std::mt19937_64& rng,
                     std::size_t delay = 50);

}  // namespace chaoscrack
