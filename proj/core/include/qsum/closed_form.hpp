#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qsum/boolean_function.hpp"
#include "qsum/rng.hpp"

namespace qsum {

/// |<S_M(omega1)|S_M(omega2)>|^2 = sin^2(M pi d) / (M^2 sin^2(pi d)) with
/// d = omega1 - omega2; equals 1 for integer d. Throws if M < 1.
double kernel(double omega1, double omega2, long long M);

/// Outcome law of one run for mean a and parameter M.
struct OutcomeDistribution {
  long long M = 1;
  /// probs[j], j = 0..M-1. Outcomes j >= M of the index register have probability 0.
  std::vector<double> probs;
  /// outputs[j] = sin^2(pi j / M).
  std::vector<double> outputs;
  double a = 0.0;
  /// Set when the distribution was built from an exact rational mean.
  std::optional<Mean> mean;
  SigmaValue sigma;
};

/// p(j) = (w(j - sigma) + w(j + sigma)) / 2 with
/// w(d) = sin^2(pi d) / (M^2 sin^2(pi d / M)) and w = 1 at the poles.
OutcomeDistribution distribution(const Mean& a, long long M);
OutcomeDistribution distribution(double a, long long M);

/// Fills probs[j], j < M = s.M, with the outcome law for sigma s. Shared by
/// distribution() and the error sweeps. Throws if probs.size() != M.
void outcome_probabilities(const SigmaValue& s, std::span<double> probs);

/// outputs[j] = sin^2(pi j / M) for j < M, exactly symmetric under j -> M - j.
std::vector<double> output_values(long long M);

/// sin^2(pi j / M). Throws std::out_of_range unless 0 <= j < M.
double output_value(long long j, long long M);

/// Errors and probabilities of the two outputs next to sigma. err_up and
/// err_down equal |abar(ceil) - a| and |abar(floor) - a|.
struct CeilFloorPair {
  long long ceil = 0;
  long long floor = 0;
  double err_up = 0.0;
  double prob_up = 0.0;
  double err_down = 0.0;
  double prob_down = 0.0;
};

/// Throws std::invalid_argument if sigma_a is an integer (the exact case) or M < 2.
CeilFloorPair ceil_floor_pair(const Mean& a, long long M);
CeilFloorPair ceil_floor_pair(double a, long long M);

/// Inverse-CDF draw of an outcome j.
long long sample(const OutcomeDistribution& dist, Rng& rng);

/// Median of `runs` independent outputs. Throws std::invalid_argument if
/// runs is even or not positive.
double median_amplify(const Mean& a, long long M, int runs, Rng& rng);
double median_amplify(const OutcomeDistribution& dist, int runs, Rng& rng);

}  // namespace qsum
