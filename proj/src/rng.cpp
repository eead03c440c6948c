#include "odl/rng.hpp"

#include <random>

namespace odl {

__extension__ typedef unsigned __int128 u128;

std::size_t Rng::index(std::size_t n) noexcept {
  if (n <= 1) return 0;
  const auto range = static_cast<std::uint64_t>(n);
  u128 product = static_cast<u128>(next()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<u128>(next()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

double Rng::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(*this);
}

}  // namespace odl
