#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace exiso::rng {

// splitmix64, used only to spread user seeds and derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random stream. All variates are generated from explicit
// formulas on top of mt19937_64 so that output is reproducible across
// runs and platforms; the std:: distribution classes are not used because
// their algorithms are implementation-defined.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : gen_(spread(seed)) {}

  // Substream for parallel work units: replicate r of a bootstrap, chunk of
  // a generator. Distinct indices give decorrelated, schedule-independent
  // streams.
  static Stream substream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    splitmix64(s);
    s ^= (index + 1) * 0xD1342543DE82EF95ULL;
    return Stream(splitmix64(s));
  }

  // Uniform on the open interval (0,1).
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform()); }

  // Standard normal via Box-Muller; the second deviate of each pair is
  // cached so consumption order stays deterministic.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t bits() { return gen_(); }

 private:
  static std::uint64_t spread(std::uint64_t seed) {
    std::uint64_t s = seed;
    return splitmix64(s);
  }

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace exiso::rng
