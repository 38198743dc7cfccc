#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsum {

namespace detail {
__extension__ typedef unsigned __int128 uint128;
}  // namespace detail

/// Exact rational mean k/N of a Boolean function (or any rational in [0,1]).
class Mean {
 public:
  /// Throws std::invalid_argument unless N >= 1 and k <= N.
  Mean(std::uint64_t k, std::uint64_t N);

  std::uint64_t numerator() const { return k_; }
  std::uint64_t denominator() const { return N_; }
  double value() const { return static_cast<double>(k_) / static_cast<double>(N_); }

  bool is_zero() const { return k_ == 0; }
  bool is_one() const { return k_ == N_; }

  friend bool operator==(const Mean& x, const Mean& y) {
    // Cross-multiplication in 128 bits cannot overflow.
    return static_cast<detail::uint128>(x.k_) * y.N_ == static_cast<detail::uint128>(y.k_) * x.N_;
  }

 private:
  std::uint64_t k_;
  std::uint64_t N_;
};

/// A Boolean function f : {0, ..., N-1} -> {0, 1} with N = 2^n.
class BooleanFunction {
 public:
  /// Throws std::invalid_argument if values.size() != 2^n or any entry is not 0/1.
  BooleanFunction(unsigned n, std::vector<std::uint8_t> values);

  /// The canonical function whose first k points are 1 and the rest 0.
  static BooleanFunction from_mean(unsigned n, std::uint64_t k);

  static BooleanFunction zeros(unsigned n) { return from_mean(n, 0); }
  static BooleanFunction ones(unsigned n);

  /// Parses the table encoding produced by to_string(). Accepts an optional
  /// "0x" prefix and either letter case for n >= 2.
  static BooleanFunction parse(unsigned n, std::string_view text);

  /// Lowercase hex of the N-bit table read as the integer sum f(i) 2^i, most
  /// significant nibble first, N/4 characters. For N < 4 the same integer is
  /// written in binary with one character per point.
  std::string to_string() const;

  unsigned n() const { return n_; }
  std::uint64_t size() const { return values_.size(); }
  bool operator()(std::uint64_t i) const { return values_[i] != 0; }
  std::span<const std::uint8_t> values() const { return values_; }
  std::uint64_t popcount() const;

 private:
  unsigned n_;
  std::vector<std::uint8_t> values_;
};

/// a_f = popcount / N, exact.
Mean mean(const BooleanFunction& f);

/// sigma_a = (M/pi) arcsin(sqrt(a)) together with theta_a = arcsin(sqrt(a)).
struct SigmaValue {
  double sigma = 0.0;
  double theta = 0.0;
  double a = 0.0;
  long long M = 1;

  /// Integrality is decided with tolerance 1e-9; integral values are stored
  /// snapped to the integer.
  bool is_integral() const;
  long long floor() const;
  long long ceil() const;
};

inline constexpr double kSigmaIntegralTolerance = 1e-9;

/// Throws std::invalid_argument if M < 1.
SigmaValue sigma_of(const Mean& a, long long M);

/// Real-valued variant for single-shot analytic evaluation. Throws
/// std::invalid_argument unless 0 <= a <= 1 and M >= 1.
SigmaValue sigma_of(double a, long long M);

enum class Measure {
  kUniformOnFunctions,  // p1: every f has weight 2^-N
  kUniformOnMeans,      // p2: every mean k/N has weight 1/(N+1)
};

std::string_view to_string(Measure m);

/// C(N,k) 2^-N. Exact 128-bit binomial for N <= 64, saddle-point log-space
/// evaluation beyond that.
double binomial_half_pmf(std::uint64_t k, std::uint64_t N);

/// Total weight of the mean class {f : a_f = k/N}. Throws if k > N or N == 0.
double class_weight(Measure measure, std::uint64_t k, std::uint64_t N);

/// class_weight for k = 0..N.
std::vector<double> class_weights(Measure measure, std::uint64_t N);

/// E|1/2 - a_f| under the measure. For p1 the closed form over the central
/// binomial coefficient is used. Throws if N == 0.
double first_moment(Measure measure, std::uint64_t N);

}  // namespace qsum
