#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cauchylab {

/// Error type for all precondition / input failures in the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    double a = x < 0 ? -x : x;
    if (a > m) m = a;
  }
  return m;
}

bool all_finite(std::span<const double> v);

/// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double x);

/// SplitMix64: the named PRNG behind every "random" field in this project.
/// Fixed algorithm, platform-independent, documented in the README so that
/// seeded examples reproduce bit-for-bit everywhere.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1, 1).
  double next_signed() { return 2.0 * next_double() - 1.0; }

private:
  std::uint64_t state_;
};

/// SHA-256 of a byte buffer, lowercase hex. Used for run-manifest content
/// hashes; validated against the NIST vectors in the unit tests.
std::string sha256_hex(std::span<const unsigned char> data);
std::string sha256_hex(const std::string& data);

/// Least-squares slope of log2(err) vs refinement level; for err halving
/// sequences this is the observed convergence order.
double convergence_order(const std::vector<double>& errs);

}  // namespace cauchylab
