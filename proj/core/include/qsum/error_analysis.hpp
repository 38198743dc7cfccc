#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsum/boolean_function.hpp"
#include "qsum/closed_form.hpp"

namespace qsum {

/// Cumulative probability counts as reaching p once it is >= p - 1e-12.
inline constexpr double kLevelSlack = 1e-12;

/// Smallest alpha with sum_{j : |outputs[j] - a| <= alpha} probs[j] >= p.
///
/// Outcomes are taken in order of increasing distance from a; outcomes with
/// equal output (j and M - j) enter together. Throws unless 0 < p <= 1.
double error_at_level(std::span<const double> probs, std::span<const double> outputs, double a,
                      double p);
double error_at_level(const OutcomeDistribution& dist, double p);
double error_at_level(const Mean& a, long long M, double p);

enum class Setting { kWorstProbabilistic, kAvgProbabilistic };
enum class BoundKind { kNone, kUpper, kLower };

std::string_view to_string(Setting s);

struct ErrorRecord {
  long long M = 1;
  std::uint64_t N = 1;
  double p = 0.0;
  Setting setting = Setting::kWorstProbabilistic;
  std::optional<Measure> measure;
  double value = 0.0;
  std::optional<double> bound;
  BoundKind bound_kind = BoundKind::kNone;
  /// ImprovedCor, GlobalCor, WA4 or WAn4; empty without a bound.
  std::string bound_ref;
  /// Worst setting: the k attaining the maximum (smallest such k).
  std::optional<std::uint64_t> witness_k;
  /// False when the k-sweep was stride-sampled.
  bool exhaustive = true;

  /// Upper bounds allow relative slack 1e-12; lower bounds are hard.
  bool satisfies_bound() const;
};

struct SweepOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Evaluate every stride-th k (plus k = N). 1 means the full sweep.
  std::uint64_t stride = 1;
};

/// max over k = 0..N of error_at_level(k/N, M, p), one record per level in ps.
std::vector<ErrorRecord> worst_probabilistic_errors(long long M, std::uint64_t N,
                                                    std::span<const double> ps,
                                                    const SweepOptions& opts = {});
ErrorRecord worst_probabilistic_error(long long M, std::uint64_t N, double p,
                                      const SweepOptions& opts = {});

/// sum over k of class_weight(measure, k, N) error_at_level(k/N, M, p).
/// beta is only used for the WAn4 lower bound.
std::vector<ErrorRecord> avg_probabilistic_errors(long long M, std::uint64_t N,
                                                  std::span<const double> ps, Measure measure,
                                                  double beta = 2.0,
                                                  const SweepOptions& opts = {});
ErrorRecord avg_probabilistic_error(long long M, std::uint64_t N, double p, Measure measure,
                                    double beta = 2.0, const SweepOptions& opts = {});

/// v(d) = sin^2(pi d) / (pi d)^2, with v(0) = 1.
double v_func(double delta);

/// Inverse of v on [1/4, 1/2] by bisection. Throws std::invalid_argument
/// unless 4/pi^2 <= p <= 8/pi^2.
double v_inverse(double p);

/// Upper estimate of the sharp constant C(p): 1/2 below 4/pi^2,
/// 1 - v^-1(p) on [4/pi^2, 8/pi^2], M/pi above. Throws unless 0 <= p <= 1.
double c_bound(double p, long long M);

/// v(d) + v(1 - d). Throws unless 0 <= d <= 1.
double g_func(double delta);
/// max{v(d), v(1 - d)}. Throws unless 0 <= d <= 1.
double h_func(double delta);
/// sin^2(pi d) / (M^2 sin^2(pi d / M)). Throws unless 0 <= d <= 1 and M >= 1.
double w_func(double delta, long long M);

/// min{3pi/(4M), sqrt(3/(2pi)) sqrt(1 + pi^2/(4M^2)) e^{1/(12(N-1))} / sqrt(N-1)}.
/// Throws unless M is a positive multiple of 4 and N >= 1.
double wa4_upper_bound(long long M, std::uint64_t N);

/// (pi/(4M)) (1 - 1/M - 1/beta) (1 - 2 exp(-N pi^2 / (8 beta M)^2)).
/// Throws unless M > 4, M is not a multiple of 4 and beta > 1.
double wan4_lower_bound(long long M, std::uint64_t N, double beta);

struct QueryPlan {
  long long M = 1;
  long long queries = 0;
};

/// M = ceil((1 - v^-1(p)) pi / eps), queries = M - 1. Throws unless
/// 0 < eps < 1 and 1/2 < p <= 8/pi^2.
QueryPlan queries_for_epsilon(double epsilon, double p);

/// True when p equals 8/pi^2 up to 1e-15.
bool is_eight_over_pi_sq(double p);

}  // namespace qsum
