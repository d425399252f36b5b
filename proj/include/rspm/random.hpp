#pragma once

#include <cstdint>
#include <string_view>

namespace rspm {

// Splittable seed. A child seed is a pure function of (parent, index, label),
// so trial i of an experiment sees the same stream regardless of which thread
// runs it or in what order.
class Seed {
 public:
  constexpr explicit Seed(std::uint64_t master = 0) : value_(master) {}

  constexpr std::uint64_t value() const { return value_; }

  Seed split(std::uint64_t index, std::string_view label) const;
  Seed split(std::string_view label) const { return split(0, label); }

  friend constexpr bool operator==(Seed a, Seed b) { return a.value_ == b.value_; }

 private:
  std::uint64_t value_;
};

// Counter-addressable generator: output i is splitmix64(key + (i+1)*gamma).
// Uses no std:: distributions so draws are identical on every platform.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(Seed seed) : key_(seed.value()) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  // Uniform on [0,1) with 53 random bits.
  double uniform();
  // Exp(1) by inverse transform -ln(1-u); u == 0 is redrawn so the variate is
  // strictly positive.
  double exponential();
  // Exp(rate).
  double exponential(double rate) { return exponential() / rate; }
  // Uniform integer in [0, bound), unbiased. bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace rspm
