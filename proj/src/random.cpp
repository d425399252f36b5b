#include "rspm/random.hpp"

#include <cmath>

namespace rspm {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

Seed Seed::split(std::uint64_t index, std::string_view label) const {
  std::uint64_t h = mix64(value_ + kGamma * (index + 1));
  h = mix64(h ^ mix64(fnv1a(label)));
  return Seed(h);
}

std::uint64_t Stream::next_u64() {
  ++counter_;
  return mix64(key_ + kGamma * counter_);
}

double Stream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::exponential() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  return -std::log1p(-u);
}

std::uint64_t Stream::below(std::uint64_t bound) {
  // Rejection on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

}  // namespace rspm
