#include "qsum/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsum/numeric.hpp"

namespace qsum {

double kernel(double omega1, double omega2, long long M) {
  if (M < 1) throw std::invalid_argument("kernel: M must be at least 1");
  const double d = omega1 - omega2;
  const double r = d - std::nearbyint(d);
  return dirichlet_ratio(static_cast<double>(M) * r, M);
}

double output_value(long long j, long long M) {
  if (M < 1 || j < 0 || j >= M) throw std::out_of_range("output_value: need 0 <= j < M");
  const long long t = std::min(j, M - j);
  const double c = cos_pi(2.0 * static_cast<double>(t) / static_cast<double>(M));
  return 0.5 * (1.0 - c);
}

void outcome_probabilities(const SigmaValue& s, std::span<double> probs) {
  const long long M = s.M;
  if (probs.size() != static_cast<std::size_t>(M)) {
    throw std::invalid_argument("outcome_probabilities: output span must have length M");
  }
  const double sigma = s.sigma;
  for (long long j = 0; j < M; ++j) {
    const double jd = static_cast<double>(j);
    probs[j] = 0.5 * (dirichlet_ratio(jd - sigma, M) + dirichlet_ratio(jd + sigma, M));
  }
}

std::vector<double> output_values(long long M) {
  if (M < 1) throw std::invalid_argument("output_values: M must be at least 1");
  std::vector<double> out(static_cast<std::size_t>(M));
  for (long long j = 0; j < M; ++j) out[j] = output_value(j, M);
  return out;
}

namespace {

OutcomeDistribution build(double a, std::optional<Mean> exact, const SigmaValue& sigma, long long M) {
  OutcomeDistribution d;
  d.M = M;
  d.a = a;
  d.mean = exact;
  d.sigma = sigma;
  d.probs.resize(static_cast<std::size_t>(M));
  outcome_probabilities(sigma, d.probs);
  d.outputs = output_values(M);
  return d;
}

double pair_probability(double delta, double other, long long M, bool merged) {
  const double m = static_cast<double>(M);
  const double base = dirichlet_ratio(delta, M);
  if (merged) return base;
  const double num = sin_pi(delta / m);
  const double den = sin_pi(other / m);
  return base * (1.0 + (num * num) / (den * den));
}

// |sin^2(theta + x) - sin^2(theta)| for direction = +1, theta - x for -1.
double pair_error(double x, double a, double direction) {
  return std::fabs(std::sin(x) * (2.0 * std::sqrt(a * (1.0 - a)) * std::cos(x) +
                                  direction * (1.0 - 2.0 * a) * std::sin(x)));
}

CeilFloorPair pair_for(const SigmaValue& sv, long long M) {
  if (M < 2) throw std::invalid_argument("ceil_floor_pair: M must be at least 2");
  if (sv.is_integral()) {
    throw std::invalid_argument("ceil_floor_pair: sigma_a is an integer (exact case)");
  }
  const double s = sv.sigma;
  const double a = sv.a;
  const double m = static_cast<double>(M);
  CeilFloorPair r;
  r.ceil = sv.ceil();
  r.floor = sv.floor();
  const double up = static_cast<double>(r.ceil) - s;
  const double down = s - static_cast<double>(r.floor);
  r.err_up = pair_error(kPi * up / m, a, 1.0);
  r.err_down = pair_error(kPi * down / m, a, -1.0);
  // The two outcomes carrying the same output coincide when ceil = M/2 or floor = 0.
  r.prob_up = pair_probability(up, static_cast<double>(r.ceil) + s, M, 2 * r.ceil == M);
  r.prob_down = pair_probability(down, s + static_cast<double>(r.floor), M, r.floor == 0);
  return r;
}

}  // namespace

OutcomeDistribution distribution(const Mean& a, long long M) {
  const SigmaValue s = sigma_of(a, M);
  return build(a.value(), a, s, M);
}

OutcomeDistribution distribution(double a, long long M) {
  const SigmaValue s = sigma_of(a, M);
  return build(a, std::nullopt, s, M);
}

CeilFloorPair ceil_floor_pair(const Mean& a, long long M) { return pair_for(sigma_of(a, M), M); }

CeilFloorPair ceil_floor_pair(double a, long long M) { return pair_for(sigma_of(a, M), M); }

long long sample(const OutcomeDistribution& dist, Rng& rng) {
  double total = 0.0;
  for (double p : dist.probs) total += p;
  const double u = rng.uniform() * total;
  double cdf = 0.0;
  long long chosen = -1;
  for (long long j = 0; j < dist.M; ++j) {
    const double p = dist.probs[j];
    if (p <= 0.0) continue;
    cdf += p;
    chosen = j;
    if (u < cdf) break;
  }
  if (chosen < 0) throw std::logic_error("sample: distribution has no mass");
  return chosen;
}

double median_amplify(const OutcomeDistribution& dist, int runs, Rng& rng) {
  if (runs <= 0 || runs % 2 == 0) {
    throw std::invalid_argument("median_amplify: runs must be a positive odd integer");
  }
  std::vector<double> outs(static_cast<std::size_t>(runs));
  for (auto& o : outs) o = dist.outputs[static_cast<std::size_t>(sample(dist, rng))];
  auto mid = outs.begin() + runs / 2;
  std::nth_element(outs.begin(), mid, outs.end());
  return *mid;
}

double median_amplify(const Mean& a, long long M, int runs, Rng& rng) {
  if (runs <= 0 || runs % 2 == 0) {
    throw std::invalid_argument("median_amplify: runs must be a positive odd integer");
  }
  return median_amplify(distribution(a, M), runs, rng);
}

}  // namespace qsum
