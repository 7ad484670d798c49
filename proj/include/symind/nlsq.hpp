#ifndef SYMIND_NLSQ_HPP
#define SYMIND_NLSQ_HPP

#include <cstdint>
#include <functional>
#include <random>

#include "symind/lie_core.hpp"

namespace symind {

// Deterministic RNG: bit-stable uniforms independent of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal() {
    double u1 = std::max(uniform01(), 1e-300);
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  Vec uniform_vec(int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Independent stream for a (seed, index) pair; sampling contracts are
  /// deterministic per index regardless of evaluation order.
  static Rng indexed(std::uint64_t seed, std::uint64_t index) {
    return Rng(seed * 0x2545f4914f6cdd1dULL + (index + 1) * 0x9e3779b97f4a7c15ULL);
  }

 private:
  std::uint64_t state_;
};

struct NlsqOptions {
  int max_iter = 80;
  double tol = 1e-12;       // stop when max |residual| falls below
  double step_tol = 1e-14;  // stop on tiny updates
  double fd_step = 1e-7;    // jacobian step
};

struct NlsqResult {
  Vec x;
  double max_resid = 0.0;
  int iters = 0;
  bool converged = false;
};

/// Small dense Levenberg-Marquardt with finite-difference Jacobian.
NlsqResult levenberg_marquardt(const std::function<Vec(const Vec&)>& residual, const Vec& x0,
                               const NlsqOptions& opts = {});

}  // namespace symind

#endif
