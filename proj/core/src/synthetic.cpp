#include "chaoscrack/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace chaoscrack {

Image natural_image(std::size_t width, std::size_t height, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 4.0);

  const double base = 40.0 + 150.0 * unit(rng);
  const double gx = (unit(rng) - 0.5) * 120.0;
  const double gy = (unit(rng) - 0.5) * 120.0;

  struct Blob {
    double cx, cy, radius, amplitude;
  };
  std::vector<Blob> blobs(3 + static_cast<std::size_t>(unit(rng) * 4));
  for (auto& b : blobs) {
    b.cx = unit(rng) * static_cast<double>(width);
    b.cy = unit(rng) * static_cast<double>(height);
    b.radius = (0.08 + 0.3 * unit(rng)) * static_cast<double>(std::max(width, height));
    b.amplitude = (unit(rng) - 0.5) * 160.0;
  }

  Bytes px(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double fx = width > 1 ? static_cast<double>(x) / static_cast<double>(width - 1) : 0.0;
      const double fy =
          height > 1 ? static_cast<double>(y) / static_cast<double>(height - 1) : 0.0;
      double v = base + gx * (fx - 0.5) + gy * (fy - 0.5);
      for (const auto& b : blobs) {
        const double dx = static_cast<double>(x) - b.cx;
        const double dy = static_cast<double>(y) - b.cy;
        v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.radius * b.radius));
      }
      v += noise(rng);
      px[y * width + x] = static_cast<Byte>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return Image(width, height, std::move(px));
}

Image random_image(std::size_t width, std::size_t height, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> byte(0, 255);
  Bytes px(width * height);
  for (auto& p : px) p = static_cast<Byte>(byte(rng));
  return Image(width, height, std::move(px));
}

SecretKey random_key(Algorithm algorithm, std::size_t n0, std::mt19937_64& rng,
                     std::size_t delay) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SecretKey key;
  key.algorithm = algorithm;
  key.n0 = n0;
  key.x0.resize(delay);
  for (auto& x : key.x0) {
    do {
      x = unit(rng);
    } while (x == 0.0);
  }
  if (algorithm == Algorithm::Ieacd) {
    key.c = std::uniform_int_distribution<int>(0, 255)(rng);
    key.q0 = 0.01 + 0.98 * unit(rng);
    key.beta = 3.6 + 0.39 * unit(rng);
  }
  key.validate();
  return key;
}

}  // namespace chaoscrack
