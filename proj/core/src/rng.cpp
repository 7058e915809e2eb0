#include "rankmix/rng.hpp"

#include <cmath>

namespace rankmix {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t index, StreamTag tag) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
  h = splitmix64(h ^ index);
  return h;
}

Engine make_engine(Seed master, std::uint64_t index, StreamTag tag) {
  const Seed s = derive_seed(master, index, tag);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Engine(seq);
}

double open_uniform(Engine& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = 0.0;
  do {
    u = unit(rng);
  } while (u <= 0.0);
  return u;
}

double sample_gumbel(Engine& rng, double beta) { return -beta * std::log(-std::log(open_uniform(rng))); }

}  // namespace rankmix
