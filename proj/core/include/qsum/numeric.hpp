#pragma once

#include <cstddef>
#include <span>

namespace qsum {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// 8/pi^2, the success-probability floor of a single run.
inline constexpr double kEightOverPiSq = 8.0 / (kPi * kPi);
/// 4/pi^2, the lower end of the level-function domain.
inline constexpr double kFourOverPiSq = 4.0 / (kPi * kPi);

/// sin(pi x) with exact zeros at integers and exact +-1 at half-integers.
double sin_pi(double x);

/// cos(pi x) with exact zeros at half-integers and exact +-1 at integers.
double cos_pi(double x);

/// Squared Dirichlet ratio sin^2(pi d) / (M^2 sin^2(pi d / M)).
///
/// The value is 1 whenever d is a multiple of M. Within 1e-9 of such a pole a
/// second-order series replaces the direct quotient.
double dirichlet_ratio(double d, long long M);

/// Compensated (Neumaier) summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

}  // namespace qsum
