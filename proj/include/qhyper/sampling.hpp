#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qhyper/rational.hpp"

namespace qhyper {

/// Default bound on sampled numerators and denominators.
inline constexpr long kDefaultHeight = 1000;

std::uint64_t fnv1a(std::string_view text);

/// Random rationals p/r with p, r uniform in [-height, height] \ {0}. The
/// stream is a pure function of (seed, item id, trial), so trials can run on
/// any thread in any order.
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::string_view item, std::uint64_t trial, long height = kDefaultHeight);

  QRational rational();

  /// A rational outside {0, 1, -1}.
  QRational q();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::uniform_int_distribution<long> magnitude_;
  long height_;

  long nonzero();
};

}  // namespace qhyper
