#include "qhyper/sampling.hpp"

#include "qhyper/errors.hpp"

namespace qhyper {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char ch : text) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t item, std::uint64_t trial) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(item), static_cast<std::uint32_t>(item >> 32),
                       static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
}

}  // namespace

Sampler::Sampler(std::uint64_t seed, std::string_view item, std::uint64_t trial, long height)
    : magnitude_(1, height), height_(height) {
  if (height < 2) throw ConfigError("sample height must be at least 2");
  auto seq = make_seq(seed, fnv1a(item), trial);
  engine_.seed(seq);
}

long Sampler::nonzero() {
  const long value = magnitude_(engine_);
  return (engine_() & 1U) != 0 ? value : -value;
}

QRational Sampler::rational() {
  const long p = nonzero();
  const long r = nonzero();
  return QRational(p, r);
}

QRational Sampler::q() {
  for (;;) {
    QRational value = rational();
    if (!value.is_one() && !(-value).is_one()) return value;
  }
}

}  // namespace qhyper
