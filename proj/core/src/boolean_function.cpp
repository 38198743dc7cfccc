#include "qsum/boolean_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsum/numeric.hpp"

namespace qsum {

Mean::Mean(std::uint64_t k, std::uint64_t N) : k_(k), N_(N) {
  if (N == 0) throw std::invalid_argument("Mean: denominator must be positive");
  if (k > N) throw std::invalid_argument("Mean: numerator exceeds denominator");
}

namespace {

constexpr unsigned kMaxQubits = 40;

std::uint64_t domain_size(unsigned n) {
  if (n > kMaxQubits) throw std::invalid_argument("BooleanFunction: n too large");
  return std::uint64_t{1} << n;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BooleanFunction::BooleanFunction(unsigned n, std::vector<std::uint8_t> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != domain_size(n)) {
    throw std::invalid_argument("BooleanFunction: table length must equal 2^n");
  }
  if (std::any_of(values_.begin(), values_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw std::invalid_argument("BooleanFunction: table entries must be 0 or 1");
  }
}

BooleanFunction BooleanFunction::from_mean(unsigned n, std::uint64_t k) {
  const std::uint64_t N = domain_size(n);
  if (k > N) throw std::invalid_argument("BooleanFunction::from_mean: k exceeds 2^n");
  std::vector<std::uint8_t> values(N, 0);
  std::fill_n(values.begin(), k, std::uint8_t{1});
  return BooleanFunction(n, std::move(values));
}

BooleanFunction BooleanFunction::ones(unsigned n) { return from_mean(n, domain_size(n)); }

BooleanFunction BooleanFunction::parse(unsigned n, std::string_view text) {
  const std::uint64_t N = domain_size(n);
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
  }
  std::vector<std::uint8_t> values(N, 0);
  if (N < 4) {
    if (text.size() != N) {
      throw std::invalid_argument("BooleanFunction::parse: expected " + std::to_string(N) +
                                  " binary digits");
    }
    for (std::size_t p = 0; p < text.size(); ++p) {
      if (text[p] != '0' && text[p] != '1') {
        throw std::invalid_argument("BooleanFunction::parse: invalid binary digit");
      }
      values[N - 1 - p] = static_cast<std::uint8_t>(text[p] - '0');
    }
    return BooleanFunction(n, std::move(values));
  }
  const std::uint64_t nibbles = N / 4;
  if (text.size() != nibbles) {
    throw std::invalid_argument("BooleanFunction::parse: expected " + std::to_string(nibbles) +
                                " hex digits");
  }
  for (std::size_t p = 0; p < text.size(); ++p) {
    const int d = hex_digit(text[p]);
    if (d < 0) throw std::invalid_argument("BooleanFunction::parse: invalid hex digit");
    const std::uint64_t base = 4 * (nibbles - 1 - p);
    for (unsigned b = 0; b < 4; ++b) values[base + b] = static_cast<std::uint8_t>((d >> b) & 1);
  }
  return BooleanFunction(n, std::move(values));
}

std::string BooleanFunction::to_string() const {
  const std::uint64_t N = size();
  std::string out;
  if (N < 4) {
    for (std::uint64_t p = 0; p < N; ++p) out.push_back(values_[N - 1 - p] ? '1' : '0');
    return out;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::uint64_t nibbles = N / 4;
  out.reserve(nibbles);
  for (std::uint64_t p = 0; p < nibbles; ++p) {
    const std::uint64_t base = 4 * (nibbles - 1 - p);
    int d = 0;
    for (unsigned b = 0; b < 4; ++b) d |= values_[base + b] << b;
    out.push_back(kDigits[d]);
  }
  return out;
}

std::uint64_t BooleanFunction::popcount() const {
  return static_cast<std::uint64_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

Mean mean(const BooleanFunction& f) { return Mean(f.popcount(), f.size()); }

bool SigmaValue::is_integral() const {
  return std::fabs(sigma - std::nearbyint(sigma)) < kSigmaIntegralTolerance;
}

long long SigmaValue::floor() const { return static_cast<long long>(std::floor(sigma)); }

long long SigmaValue::ceil() const { return static_cast<long long>(std::ceil(sigma)); }

SigmaValue sigma_of(double a, long long M) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("sigma_of: a must lie in [0, 1]");
  if (M < 1) throw std::invalid_argument("sigma_of: M must be at least 1");
  SigmaValue s;
  s.a = a;
  s.M = M;
  s.theta = std::asin(std::sqrt(a));
  s.sigma = static_cast<double>(M) * s.theta / kPi;
  const double nearest = std::nearbyint(s.sigma);
  if (std::fabs(s.sigma - nearest) < kSigmaIntegralTolerance) s.sigma = nearest;
  return s;
}

SigmaValue sigma_of(const Mean& a, long long M) {
  if (M < 1) throw std::invalid_argument("sigma_of: M must be at least 1");
  if (a.is_zero()) return SigmaValue{0.0, 0.0, 0.0, M};
  if (a.is_one()) return SigmaValue{0.5 * static_cast<double>(M), 0.5 * kPi, 1.0, M};
  return sigma_of(a.value(), M);
}

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::kUniformOnFunctions:
      return "p1";
    case Measure::kUniformOnMeans:
      return "p2";
  }
  return "?";
}

namespace {

// log(n!) - log(sqrt(2 pi n) (n/e)^n).
double stirling_error(std::uint64_t n) {
  if (n <= 15) {
    const long double x = static_cast<long double>(n);
    constexpr long double kHalfLog2Pi = 0.918938533204672741780329736406L;
    return static_cast<double>(std::lgamma(x + 1.0L) - (x + 0.5L) * std::log(x) + x - kHalfLog2Pi);
  }
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  const double x = static_cast<double>(n);
  const double xx = x * x;
  return (S0 - (S1 - (S2 - (S3 - S4 / xx) / xx) / xx) / xx) / x;
}

// Deviance term x log(x/np) + np - x, evaluated without cancellation.
double deviance(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    const double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    const double vv = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= vv;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

double exact_binomial(std::uint64_t N, std::uint64_t k) {
  if (k > N - k) k = N - k;
  detail::uint128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) c = c * (N - i) / (i + 1);
  return static_cast<double>(c);
}

}  // namespace

double binomial_half_pmf(std::uint64_t k, std::uint64_t N) {
  if (k > N) throw std::invalid_argument("binomial_half_pmf: k exceeds N");
  if (N <= 64) return std::ldexp(exact_binomial(N, k), -static_cast<int>(N));
  if (k == 0 || k == N) {
    return N > 2000 ? 0.0 : std::ldexp(1.0, -static_cast<int>(N));
  }
  const double n = static_cast<double>(N);
  const double x = static_cast<double>(k);
  const double half = 0.5 * n;
  const double lc = stirling_error(N) - stirling_error(k) - stirling_error(N - k) -
                    deviance(x, half) - deviance(n - x, half);
  constexpr double kLog2Pi = 1.837877066409345483560659472811;
  const double lf = kLog2Pi + std::log(x) + std::log1p(-x / n);
  return std::exp(lc - 0.5 * lf);
}

double class_weight(Measure measure, std::uint64_t k, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("class_weight: N must be positive");
  if (k > N) throw std::invalid_argument("class_weight: k exceeds N");
  switch (measure) {
    case Measure::kUniformOnFunctions:
      return binomial_half_pmf(k, N);
    case Measure::kUniformOnMeans:
      return 1.0 / static_cast<double>(N + 1);
  }
  throw std::invalid_argument("class_weight: unknown measure");
}

std::vector<double> class_weights(Measure measure, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("class_weights: N must be positive");
  std::vector<double> w(N + 1);
  for (std::uint64_t k = 0; k <= N; ++k) w[k] = class_weight(measure, k, N);
  return w;
}

double first_moment(Measure measure, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("first_moment: N must be positive");
  if (measure == Measure::kUniformOnFunctions) {
    // Odd N: 2^-N C(N-1, (N-1)/2).  Even N: 2^-(N+1) C(N, N/2).
    if (N % 2 == 1) return 0.5 * binomial_half_pmf((N - 1) / 2, N - 1);
    return 0.5 * binomial_half_pmf(N / 2, N);
  }
  CompensatedSum s;
  const double n = static_cast<double>(N);
  for (std::uint64_t k = 0; k <= N; ++k) s.add(std::fabs(0.5 - static_cast<double>(k) / n));
  return s.value() / static_cast<double>(N + 1);
}

}  // namespace qsum
