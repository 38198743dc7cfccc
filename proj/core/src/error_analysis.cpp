#include "qsum/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"
#include "qsum/numeric.hpp"

namespace qsum {

namespace {

void check_level(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("probability level must lie in (0, 1]");
}

void check_unit(double delta, const char* what) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": delta must lie in [0, 1]");
  }
}

}  // namespace

double error_at_level(std::span<const double> probs, std::span<const double> outputs, double a,
                      double p) {
  check_level(p);
  const std::size_t M = probs.size();
  if (M == 0 || outputs.size() != M) {
    throw std::invalid_argument("error_at_level: probs and outputs must have equal nonzero length");
  }
  // Fold j and M - j, which share an output; folded outputs increase with t.
  const std::size_t H = M / 2;
  auto mass = [&](std::size_t t) {
    return (t == 0 || 2 * t == M) ? probs[t] : probs[t] + probs[M - t];
  };
  std::size_t lo = 0;
  while (lo + 1 <= H && outputs[lo + 1] <= a) ++lo;
  std::ptrdiff_t left = static_cast<std::ptrdiff_t>(lo);
  std::size_t right = lo + 1;

  const double target = p - kLevelSlack;
  double cum = 0.0;
  double reached = 0.0;
  while (left >= 0 || right <= H) {
    const double dl = left >= 0 ? a - outputs[left] : std::numeric_limits<double>::infinity();
    const double dr = right <= H ? outputs[right] - a : std::numeric_limits<double>::infinity();
    const double d = std::min(dl, dr);
    if (dl == d) cum += mass(static_cast<std::size_t>(left--));
    if (dr == d) cum += mass(right++);
    reached = d;
    if (cum >= target) return reached;
  }
  return reached;
}

double error_at_level(const OutcomeDistribution& dist, double p) {
  return error_at_level(dist.probs, dist.outputs, dist.a, p);
}

double error_at_level(const Mean& a, long long M, double p) {
  check_level(p);
  return error_at_level(distribution(a, M), p);
}

std::string_view to_string(Setting s) {
  return s == Setting::kWorstProbabilistic ? "worst" : "avg";
}

bool ErrorRecord::satisfies_bound() const {
  if (!bound) return true;
  switch (bound_kind) {
    case BoundKind::kUpper:
      return value <= *bound * (1.0 + 1e-12);
    case BoundKind::kLower:
      return value >= *bound;
    case BoundKind::kNone:
      return true;
  }
  return true;
}

bool is_eight_over_pi_sq(double p) { return std::fabs(p - kEightOverPiSq) <= 1e-15; }

namespace {

constexpr std::uint64_t kChunk = 1024;

bool in_average_bound_range(double p) { return p > 0.5 && (p <= kEightOverPiSq || is_eight_over_pi_sq(p)); }

void attach_worst_bound(ErrorRecord& r) {
  r.bound_kind = BoundKind::kUpper;
  if (is_eight_over_pi_sq(r.p)) {
    r.bound = 0.75 * kPi / static_cast<double>(r.M);
    r.bound_ref = "ImprovedCor";
  } else {
    r.bound = c_bound(r.p, r.M) * kPi / static_cast<double>(r.M);
    r.bound_ref = "GlobalCor";
  }
}

void attach_avg_bound(ErrorRecord& r, double beta) {
  if (r.measure == Measure::kUniformOnFunctions && in_average_bound_range(r.p)) {
    if (r.M % 4 == 0) {
      r.bound = wa4_upper_bound(r.M, r.N);
      r.bound_kind = BoundKind::kUpper;
      r.bound_ref = "WA4";
      return;
    }
    if (r.M > 4 && beta > 1.0) {
      r.bound = wan4_lower_bound(r.M, r.N, beta);
      r.bound_kind = BoundKind::kLower;
      r.bound_ref = "WAn4";
      return;
    }
  }
  // The average never exceeds the worst case.
  attach_worst_bound(r);
}

struct SweepPlan {
  std::uint64_t count = 0;
  std::uint64_t stride = 1;
  std::uint64_t N = 1;

  std::uint64_t k_at(std::uint64_t i) const { return std::min(i * stride, N); }
};

SweepPlan make_plan(std::uint64_t N, const SweepOptions& opts) {
  if (N == 0) throw std::invalid_argument("error sweep: N must be positive");
  if (opts.stride == 0) throw std::invalid_argument("error sweep: stride must be positive");
  SweepPlan plan;
  plan.N = N;
  plan.stride = opts.stride;
  // k = 0, stride, 2 stride, ... and finally N itself.
  plan.count = (N + opts.stride - 1) / opts.stride + 1;
  return plan;
}

void check_sweep_args(long long M, std::span<const double> ps) {
  if (M < 1) throw std::invalid_argument("error sweep: M must be at least 1");
  for (double p : ps) check_level(p);
}

}  // namespace

std::vector<ErrorRecord> worst_probabilistic_errors(long long M, std::uint64_t N,
                                                    std::span<const double> ps,
                                                    const SweepOptions& opts) {
  check_sweep_args(M, ps);
  const SweepPlan plan = make_plan(N, opts);
  const std::vector<double> outputs = output_values(M);
  const std::size_t P = ps.size();
  const std::uint64_t chunks = (plan.count + kChunk - 1) / kChunk;

  struct Best {
    double value = -1.0;
    std::uint64_t k = 0;
  };
  std::vector<Best> best(chunks * P);
  detail::parallel_chunks(chunks, opts.threads, [&](std::uint64_t c) {
    std::vector<double> probs(static_cast<std::size_t>(M));
    const std::uint64_t end = std::min(plan.count, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      const std::uint64_t k = plan.k_at(i);
      const Mean a(k, N);
      outcome_probabilities(sigma_of(a, M), probs);
      for (std::size_t q = 0; q < P; ++q) {
        const double e = error_at_level(probs, outputs, a.value(), ps[q]);
        Best& b = best[c * P + q];
        if (e > b.value) b = Best{e, k};
      }
    }
  });

  std::vector<ErrorRecord> out(P);
  for (std::size_t q = 0; q < P; ++q) {
    Best overall;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const Best& b = best[c * P + q];
      if (b.value > overall.value) overall = b;
    }
    ErrorRecord& r = out[q];
    r.M = M;
    r.N = N;
    r.p = ps[q];
    r.setting = Setting::kWorstProbabilistic;
    r.value = overall.value;
    r.witness_k = overall.k;
    r.exhaustive = plan.stride == 1;
    attach_worst_bound(r);
  }
  return out;
}

ErrorRecord worst_probabilistic_error(long long M, std::uint64_t N, double p,
                                      const SweepOptions& opts) {
  const double ps[] = {p};
  return worst_probabilistic_errors(M, N, ps, opts).front();
}

std::vector<ErrorRecord> avg_probabilistic_errors(long long M, std::uint64_t N,
                                                  std::span<const double> ps, Measure measure,
                                                  double beta, const SweepOptions& opts) {
  check_sweep_args(M, ps);
  if (opts.stride != 1) {
    throw std::invalid_argument("avg_probabilistic_error: the average needs the full k-sweep");
  }
  const SweepPlan plan = make_plan(N, opts);
  const std::vector<double> outputs = output_values(M);
  const std::size_t P = ps.size();
  const std::uint64_t count = N + 1;
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;

  std::vector<double> partial(chunks * P, 0.0);
  detail::parallel_chunks(chunks, opts.threads, [&](std::uint64_t c) {
    std::vector<double> probs(static_cast<std::size_t>(M));
    std::vector<CompensatedSum> sums(P);
    const std::uint64_t end = std::min(count, (c + 1) * kChunk);
    for (std::uint64_t k = c * kChunk; k < end; ++k) {
      const double w = class_weight(measure, k, N);
      if (w == 0.0) continue;
      const Mean a(k, N);
      outcome_probabilities(sigma_of(a, M), probs);
      for (std::size_t q = 0; q < P; ++q) {
        sums[q].add(w * error_at_level(probs, outputs, a.value(), ps[q]));
      }
    }
    for (std::size_t q = 0; q < P; ++q) partial[c * P + q] = sums[q].value();
  });

  std::vector<ErrorRecord> out(P);
  for (std::size_t q = 0; q < P; ++q) {
    CompensatedSum total;
    for (std::uint64_t c = 0; c < chunks; ++c) total.add(partial[c * P + q]);
    ErrorRecord& r = out[q];
    r.M = M;
    r.N = N;
    r.p = ps[q];
    r.setting = Setting::kAvgProbabilistic;
    r.measure = measure;
    r.value = total.value();
    r.exhaustive = plan.stride == 1;
    attach_avg_bound(r, beta);
  }
  return out;
}

ErrorRecord avg_probabilistic_error(long long M, std::uint64_t N, double p, Measure measure,
                                    double beta, const SweepOptions& opts) {
  const double ps[] = {p};
  return avg_probabilistic_errors(M, N, ps, measure, beta, opts).front();
}

double v_func(double delta) {
  if (delta == 0.0) return 1.0;
  const double q = sin_pi(delta) / (kPi * delta);
  return q * q;
}

double v_inverse(double p) {
  constexpr double kEdge = 1e-12;
  if (!(p >= kFourOverPiSq - kEdge && p <= kEightOverPiSq + kEdge)) {
    throw std::invalid_argument("v_inverse: p must lie in [4/pi^2, 8/pi^2]");
  }
  // v decreases from 8/pi^2 at 1/4 to 4/pi^2 at 1/2.
  double lo = 0.25;
  double hi = 0.5;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (v_func(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double c_bound(double p, long long M) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("c_bound: p must lie in [0, 1]");
  if (M < 1) throw std::invalid_argument("c_bound: M must be at least 1");
  if (p < kFourOverPiSq) return 0.5;
  if (p <= kEightOverPiSq || is_eight_over_pi_sq(p)) return 1.0 - v_inverse(p);
  return static_cast<double>(M) / kPi;
}

double g_func(double delta) {
  check_unit(delta, "g_func");
  return v_func(delta) + v_func(1.0 - delta);
}

double h_func(double delta) {
  check_unit(delta, "h_func");
  return std::max(v_func(delta), v_func(1.0 - delta));
}

double w_func(double delta, long long M) {
  check_unit(delta, "w_func");
  if (M < 1) throw std::invalid_argument("w_func: M must be at least 1");
  return dirichlet_ratio(delta, M);
}

double wa4_upper_bound(long long M, std::uint64_t N) {
  if (M < 4 || M % 4 != 0) throw std::invalid_argument("wa4_upper_bound: M must be a multiple of 4");
  if (N == 0) throw std::invalid_argument("wa4_upper_bound: N must be positive");
  const double m = static_cast<double>(M);
  const double worst = 0.75 * kPi / m;
  if (N == 1) return worst;
  const double n1 = static_cast<double>(N - 1);
  const double avg = std::sqrt(3.0 / (2.0 * kPi)) * std::sqrt(1.0 + kPi * kPi / (4.0 * m * m)) /
                     std::sqrt(n1) * std::exp(1.0 / (12.0 * n1));
  return std::min(worst, avg);
}

double wan4_lower_bound(long long M, std::uint64_t N, double beta) {
  if (M <= 4 || M % 4 == 0) {
    throw std::invalid_argument("wan4_lower_bound: M must exceed 4 and not be a multiple of 4");
  }
  if (!(beta > 1.0)) throw std::invalid_argument("wan4_lower_bound: beta must exceed 1");
  const double m = static_cast<double>(M);
  const double s = 8.0 * beta * m;
  const double tail = 1.0 - 2.0 * std::exp(-static_cast<double>(N) * kPi * kPi / (s * s));
  return (kPi / (4.0 * m)) * (1.0 - 1.0 / m - 1.0 / beta) * tail;
}

QueryPlan queries_for_epsilon(double epsilon, double p) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("queries_for_epsilon: epsilon must lie in (0, 1)");
  }
  if (!(p > 0.5 && (p <= kEightOverPiSq || is_eight_over_pi_sq(p)))) {
    throw std::invalid_argument("queries_for_epsilon: p must lie in (1/2, 8/pi^2]");
  }
  QueryPlan plan;
  plan.M = static_cast<long long>(std::ceil((1.0 - v_inverse(p)) * kPi / epsilon));
  plan.queries = plan.M - 1;
  return plan;
}

}  // namespace qsum
