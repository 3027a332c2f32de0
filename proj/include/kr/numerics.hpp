#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <string>

namespace kr {

// Error-compensated accumulator (Neumaier's variant of Kahan summation).
// Every norm and integral in the library reduces through this type in
// ascending point-index order, so results are bit-identical no matter how
// the surrounding loop is scheduled across threads.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// |v|^p with exact fast paths for the exponents used most.
inline double abs_pow(double v, double p) {
  const double a = std::abs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

// s^(1/p) for non-negative s.
inline double root_p(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

// Deterministic uniform source. mt19937_64's output sequence is pinned by
// the standard, and the 53-bit conversion below sidesteps the
// implementation-defined std::uniform_real_distribution, so seeded runs
// reproduce bit-for-bit across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
  std::uint64_t raw() { return eng_(); }

private:
  std::mt19937_64 eng_;
};

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a64_double(double v, std::uint64_t h) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  return fnv1a64(&bits, sizeof bits, h);
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace kr
