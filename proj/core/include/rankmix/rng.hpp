#pragma once

#include <cstdint>
#include <random>

namespace rankmix {

using Seed = std::uint64_t;
using Engine = std::mt19937_64;

/// Tags separating independent random streams drawn from one master seed.
enum class StreamTag : std::uint64_t {
  kLabel = 1,
  kRanking = 2,
  kMask = 3,
  kUtilities = 4,
  kSizes = 5,
  kDirections = 6,
  kTrial = 7,
  kComponent = 8,
};

/// Mixes (master, index, tag) into a seed with splitmix64 finalizers. Distinct
/// triples give statistically independent engine seeds.
Seed derive_seed(Seed master, std::uint64_t index, StreamTag tag) noexcept;

/// Engine for the substream (master, index, tag).
Engine make_engine(Seed master, std::uint64_t index, StreamTag tag);

/// Uniform draw on the open interval (0, 1).
double open_uniform(Engine& rng);

/// Gumbel(mode 0, scale beta) via inverse CDF: -beta * ln(-ln U).
double sample_gumbel(Engine& rng, double beta);

}  // namespace rankmix
