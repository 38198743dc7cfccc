#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qsum::oracle {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double kernel_direct_sum(double omega1, double omega2, long long M) {
  const double d = omega1 - omega2;
  std::complex<double> acc = 0.0;
  for (long long j = 0; j < M; ++j) acc += std::polar(1.0, -2.0 * kPi * d * static_cast<double>(j));
  return std::norm(acc) / static_cast<double>(M * M);
}

double subset_min_error(std::span<const double> probs, std::span<const double> outputs, double a,
                        double p) {
  const std::size_t M = probs.size();
  if (M > 20) throw std::invalid_argument("subset_min_error: M too large for enumeration");
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1U << M); ++mask) {
    double mass = 0.0;
    double worst = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      if (mask & (1U << j)) {
        mass += probs[j];
        worst = std::max(worst, std::fabs(outputs[j] - a));
      }
    }
    if (mass >= p - 1e-12) best = std::min(best, worst);
  }
  return best;
}

double factored_probability(long long j, double sigma, long long M) {
  using Real = long double;
  const Real pi = 3.141592653589793238462643383279502884L;
  const Real m = static_cast<Real>(M);
  auto eval = [&](Real s) {
    const Real x = static_cast<Real>(j) - s;
    const Real y = static_cast<Real>(j) + s;
    const Real sx = std::sin(pi * x / m);
    const Real sy = std::sin(pi * y / m);
    const Real num = std::sin(pi * x);
    return num * num / (2 * m * m * sx * sx) * (1 + sx * sx / (sy * sy));
  };
  const Real s0 = sigma;
  const Real near = std::min(std::fabs(std::sin(pi * (j - s0) / m)), std::fabs(std::sin(pi * (j + s0) / m)));
  if (near > 1e-5L) return static_cast<double>(eval(s0));
  // Removable singularity: symmetric averages are even in h, so two
  // Richardson steps remove the h^2 and h^4 terms.
  auto avg = [&](Real h) { return (eval(s0 + h) + eval(s0 - h)) / 2; };
  const Real h = 1e-3L;
  const Real a0 = avg(h);
  const Real a1 = avg(h / 2);
  const Real a2 = avg(h / 4);
  const Real r0 = (4 * a1 - a0) / 3;
  const Real r1 = (4 * a2 - a1) / 3;
  return static_cast<double>((16 * r1 - r0) / 15);
}

unsigned ceil_log2(std::uint64_t M) {
  if (M <= 1) return 0;
  unsigned bits = 0;
  for (std::uint64_t x = M - 1; x != 0; x >>= 1) ++bits;
  return bits;
}

}  // namespace qsum::oracle
