#include "qsum/numeric.hpp"

#include <cmath>

namespace qsum {

double sin_pi(double x) {
  // Odd symmetry first: adding 2 to a tiny negative x would drop its low bits.
  double sign = x < 0.0 ? -1.0 : 1.0;
  double r = std::fmod(std::fabs(x), 2.0);  // exact
  if (r >= 1.0) {
    r -= 1.0;
    sign = -sign;
  }
  if (r > 0.5) r = 1.0 - r;
  const double v = r <= 0.25 ? std::sin(kPi * r) : std::cos(kPi * (0.5 - r));
  return sign * v;
}

double cos_pi(double x) {
  double r = std::fmod(std::fabs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  double sign = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign = -1.0;
  }
  const double v = r <= 0.25 ? std::cos(kPi * r) : std::sin(kPi * (0.5 - r));
  return sign * v;
}

double dirichlet_ratio(double d, long long M) {
  const double m = static_cast<double>(M);
  // Offset from the nearest pole; sin^2 is invariant under the shift.
  const double r = d - m * std::nearbyint(d / m);
  if (std::fabs(r) < 1e-9) {
    const double pr = kPi * r;
    return 1.0 - (pr * pr / 3.0) * (1.0 - 1.0 / (m * m));
  }
  const double num = sin_pi(r);
  const double den = m * sin_pi(r / m);
  const double q = num / den;
  return q * q;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace qsum
