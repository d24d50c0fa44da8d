#pragma once

// Small seeded generators for property tests.

#include <cstdint>
#include <random>

namespace gen {

class Source {
public:
  explicit Source(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::uint64_t seed() { return eng_(); }

private:
  std::mt19937_64 eng_;
};

}  // namespace gen
