#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace qent {

// Deterministic RNG with a self-contained Box-Muller normal sampler.
// std::normal_distribution is implementation-defined, which would break
// byte-identical reruns across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {
    // 53-bit mantissa uniform in [0, 1)
    return (eng_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> complex_normal() {
    return {normal(), normal()};
  }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    return eng_() % n;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qent
