#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symgf {

using Mat  = Eigen::MatrixXd;
using Vec  = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

// Library-wide default tolerances.  Matrices handled here are O(1)-scaled and
// of dimension 2n <= 20, so fixed double-precision thresholds are adequate.
inline constexpr double kSymplecticTol = 1e-10;  // relative symplectic residual
inline constexpr double kRankRelTol    = 1e-8;   // sigma threshold relative to sigma_max
inline constexpr double kRankAbsTol    = 1e-12;  // absolute fallback when sigma_max < 1e-4

enum class ErrorCode {
  argument,
  dimension,
  singular,
  degenerate,
  precondition,
  caustic,
  io,
  config,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Deterministic 64-bit seeded generator.  The uniform and gaussian transforms
/// are spelled out (not std::*_distribution) so identical seeds give
/// bit-identical streams on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next_u64() {
    // xorshift* variant; full period, passes the usual batteries.
    uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  /// Uniform in the open interval (0,1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
  }

 private:
  uint64_t state_;
};

}  // namespace symgf
