#include "qsum/error_analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "qsum/numeric.hpp"

namespace qsum {
namespace {

constexpr double kLevels[] = {0.51, 0.6, 0.75, kEightOverPiSq};

TEST(ErrorAtLevel, ExactCases) {
  EXPECT_EQ(error_at_level(Mean(0, 4), 8, 0.8), 0.0);
  EXPECT_EQ(error_at_level(Mean(1, 2), 4, 0.75), 0.0);
}

TEST(ErrorAtLevel, AgreesWithSubsetEnumeration) {
  const OutcomeDistribution d = distribution(Mean(17, 64), 8);
  const double e = error_at_level(d, kEightOverPiSq);
  EXPECT_LE(e, 3.0 * kPi / 32.0);
  EXPECT_NEAR(e, oracle::subset_min_error(d.probs, d.outputs, d.a, kEightOverPiSq), 1e-12);
  for (long long M = 1; M <= 10; ++M) {
    for (std::uint64_t k = 0; k <= 32; ++k) {
      const OutcomeDistribution dk = distribution(Mean(k, 32), M);
      for (double p : {0.3, 0.51, 0.75, 0.9, 1.0}) {
        EXPECT_NEAR(error_at_level(dk, p), oracle::subset_min_error(dk.probs, dk.outputs, dk.a, p), 1e-12)
            << "M=" << M << " k=" << k << " p=" << p;
      }
    }
  }
}

TEST(ErrorAtLevel, NondecreasingInP) {
  for (long long M : {3LL, 8LL, 13LL, 40LL}) {
    for (std::uint64_t k = 0; k <= 64; ++k) {
      const OutcomeDistribution d = distribution(Mean(k, 64), M);
      double prev = 0.0;
      for (int i = 1; i <= 100; ++i) {
        const double e = error_at_level(d, i / 100.0);
        EXPECT_GE(e, prev);
        prev = e;
      }
    }
  }
}

TEST(ErrorAtLevel, RejectsBadLevel) {
  EXPECT_THROW(error_at_level(Mean(1, 2), 4, 0.0), std::invalid_argument);
  EXPECT_THROW(error_at_level(Mean(1, 2), 4, 1.5), std::invalid_argument);
}

TEST(Worst, SmallImprovedBound) {
  const ErrorRecord r = worst_probabilistic_error(4, 4, 0.75);
  EXPECT_LE(r.value, 3.0 * kPi / 16.0);
  EXPECT_TRUE(r.satisfies_bound());
}

TEST(Worst, HandEnumeratedCase) {
  // M = 2: outputs 0 and 1. k = 0 and k = 2 are exact; k = 1 splits mass
  // 1/2, 1/2, so level 0.6 needs both outcomes and the error is 1/2.
  const ErrorRecord r = worst_probabilistic_error(2, 2, 0.6);
  EXPECT_DOUBLE_EQ(r.value, 0.5);
  ASSERT_TRUE(r.witness_k.has_value());
  EXPECT_EQ(*r.witness_k, 1U);
}

TEST(Worst, AsymptoticWindow) {
  const long long M = 64;
  const ErrorRecord r = worst_probabilistic_error(M, std::uint64_t{1} << 20, 0.75);
  const double scale = (1.0 - v_inverse(0.75)) * kPi / M;
  EXPECT_GE(r.value / scale, 0.85);
  EXPECT_LE(r.value / scale, 1.0);
}

TEST(Worst, UpperBoundChain) {
  for (std::uint64_t N : {4ULL, 256ULL, 4096ULL}) {
    for (long long M = 2; M <= 64; ++M) {
      const auto records = worst_probabilistic_errors(M, N, kLevels);
      for (const ErrorRecord& r : records) {
        EXPECT_LE(r.value, c_bound(r.p, M) * kPi / M + 1e-12) << "M=" << M << " N=" << N << " p=" << r.p;
        EXPECT_TRUE(r.satisfies_bound());
        EXPECT_EQ(r.bound_kind, BoundKind::kUpper);
      }
    }
  }
}

TEST(Worst, BoundReferences) {
  EXPECT_EQ(worst_probabilistic_error(8, 16, kEightOverPiSq).bound_ref, "ImprovedCor");
  EXPECT_EQ(worst_probabilistic_error(8, 16, 0.75).bound_ref, "GlobalCor");
}

TEST(Worst, MatchesSerialMaximum) {
  for (long long M : {5LL, 16LL}) {
    const std::uint64_t N = 300;
    double ref = 0.0;
    for (std::uint64_t k = 0; k <= N; ++k) ref = std::max(ref, error_at_level(Mean(k, N), M, 0.75));
    EXPECT_EQ(worst_probabilistic_error(M, N, 0.75).value, ref);
  }
}

TEST(Worst, ThreadCountDoesNotChangeResults) {
  SweepOptions one;
  one.threads = 1;
  SweepOptions many;
  many.threads = 4;
  const auto a = worst_probabilistic_errors(24, 5000, kLevels, one);
  const auto b = worst_probabilistic_errors(24, 5000, kLevels, many);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].witness_k, b[i].witness_k);
  }
  const auto c = avg_probabilistic_errors(24, 5000, kLevels, Measure::kUniformOnFunctions, 2.0, one);
  const auto d = avg_probabilistic_errors(24, 5000, kLevels, Measure::kUniformOnFunctions, 2.0, many);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].value, d[i].value);
}

TEST(Worst, StrideMarksRecordNonExhaustive) {
  SweepOptions opts;
  opts.stride = 7;
  const ErrorRecord r = worst_probabilistic_error(16, 1000, 0.75, opts);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_LE(r.value, worst_probabilistic_error(16, 1000, 0.75).value);
}

TEST(Average, TwoPointMeasure) {
  for (long long M : {3LL, 4LL, 9LL}) {
    const ErrorRecord r = avg_probabilistic_error(M, 1, 0.7, Measure::kUniformOnFunctions);
    const double want = 0.5 * error_at_level(Mean(0, 1), M, 0.7) + 0.5 * error_at_level(Mean(1, 1), M, 0.7);
    EXPECT_NEAR(r.value, want, 1e-15);
  }
}

TEST(Average, DivisibleByFourUpperBound) {
  const std::uint64_t N = 4096;
  const ErrorRecord r = avg_probabilistic_error(32, N, 0.75, Measure::kUniformOnFunctions);
  const double second = std::sqrt(3.0 / (2.0 * kPi)) * std::sqrt(1.0 + kPi * kPi / 4096.0) /
                        std::sqrt(4095.0) * std::exp(1.0 / (12.0 * 4095.0));
  EXPECT_LE(r.value, std::min(3.0 * kPi / 128.0, second));
  EXPECT_EQ(r.bound_ref, "WA4");
  EXPECT_TRUE(r.satisfies_bound());
}

TEST(Average, UniformMeansExhaustiveSum) {
  const std::uint64_t N = 4096;
  const ErrorRecord r = avg_probabilistic_error(32, N, 0.75, Measure::kUniformOnMeans);
  CompensatedSum direct;
  for (std::uint64_t k = 0; k <= N; ++k) direct.add(error_at_level(Mean(k, N), 32, 0.75));
  const double want = direct.value() / static_cast<double>(N + 1);
  EXPECT_NEAR(r.value, want, 1e-13);
  EXPECT_GT(r.value, 0.0);
  EXPECT_LE(r.value, 3.0 * kPi / 128.0);
}

TEST(Average, NonDivisibleLowerBound) {
  const ErrorRecord r = avg_probabilistic_error(6, 4096, 0.75, Measure::kUniformOnFunctions, 2.0);
  EXPECT_EQ(r.bound_ref, "WAn4");
  EXPECT_EQ(r.bound_kind, BoundKind::kLower);
  EXPECT_GT(*r.bound, 0.0);
  EXPECT_GE(r.value, *r.bound);
  EXPECT_TRUE(r.satisfies_bound());
}

TEST(Average, RejectsStride) {
  SweepOptions opts;
  opts.stride = 3;
  EXPECT_THROW(avg_probabilistic_error(6, 100, 0.75, Measure::kUniformOnMeans, 2.0, opts),
               std::invalid_argument);
}

TEST(LevelFunction, Anchors) {
  EXPECT_NEAR(v_inverse(kEightOverPiSq), 0.25, 1e-10);
  EXPECT_NEAR(v_inverse(kFourOverPiSq), 0.5, 1e-10);
  EXPECT_NEAR((1.0 - v_inverse(0.75)) * kPi, 2.23, 0.01);
  EXPECT_NEAR((1.0 - v_inverse(0.501)) * kPi, 1.75, 0.01);
  for (int i = 0; i <= 100; ++i) {
    const double p = kFourOverPiSq + (kEightOverPiSq - kFourOverPiSq) * i / 100.0;
    EXPECT_NEAR(v_func(v_inverse(p)), p, 1e-10);
  }
  EXPECT_THROW(v_inverse(0.3), std::invalid_argument);
  EXPECT_THROW(v_inverse(0.9), std::invalid_argument);
}

TEST(LevelFunction, DecreasingOnQuarterToHalf) {
  double prev = v_func(0.25);
  for (int i = 1; i <= 10000; ++i) {
    const double v = v_func(0.25 + 0.25 * i / 10000.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(LevelFunction, LinearEstimate) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double p = kFourOverPiSq + (kEightOverPiSq - kFourOverPiSq) * i / 999.0;
    worst = std::max(worst, std::fabs(kPi * kPi * p / 16.0 + 0.25 - (1.0 - v_inverse(p))));
  }
  EXPECT_LE(worst, 0.0085);
}

TEST(CBound, Branches) {
  EXPECT_EQ(c_bound(0.1, 16), 0.5);
  EXPECT_NEAR(c_bound(kEightOverPiSq, 16), 0.75, 1e-12);
  EXPECT_DOUBLE_EQ(c_bound(0.9, 16), 16.0 / kPi);
  EXPECT_THROW(c_bound(1.5, 16), std::invalid_argument);
}

TEST(Helpers, SpecialValues) {
  EXPECT_NEAR(g_func(0.5), kEightOverPiSq, 1e-15);
  EXPECT_NEAR(h_func(0.25), kEightOverPiSq, 1e-15);
  EXPECT_EQ(v_func(0.0), 1.0);
  EXPECT_EQ(g_func(0.0), 1.0);
  EXPECT_EQ(w_func(0.0, 9), 1.0);
  for (long long M : {1LL, 2LL, 5LL, 64LL, 1000LL}) {
    const double s = std::sin(kPi / (2.0 * M));
    EXPECT_NEAR(w_func(0.5, M), 1.0 / (M * M * s * s), 1e-12);
    EXPECT_GE(w_func(0.5, M), kFourOverPiSq);
  }
  EXPECT_THROW(g_func(1.5), std::invalid_argument);
}

TEST(Helpers, GridInequalities) {
  for (int i = 0; i <= 10000; ++i) {
    const double d = i / 10000.0;
    if (i == 5000) {
      EXPECT_NEAR(g_func(d), kEightOverPiSq, 1e-15);
    } else {
      EXPECT_GT(g_func(d), kEightOverPiSq);
    }
    if (d <= 0.25 || d >= 0.75) EXPECT_GE(h_func(d), kEightOverPiSq - 1e-15);
  }
}

TEST(Wa4, Evaluations) {
  const double second = std::sqrt(3.0 / (2.0 * kPi)) * std::sqrt(1.0 + kPi * kPi / 64.0) * std::exp(1.0 / 12.0);
  EXPECT_DOUBLE_EQ(wa4_upper_bound(4, 2), std::min(3.0 * kPi / 16.0, second));
  const long long big = 1LL << 20;
  const double n1 = 4095.0;
  const double tail = std::sqrt(3.0 / (2.0 * kPi)) *
                      std::sqrt(1.0 + kPi * kPi / (4.0 * static_cast<double>(big) * big)) /
                      std::sqrt(n1) * std::exp(1.0 / (12.0 * n1));
  EXPECT_LT(0.75 * kPi / big, tail);
  EXPECT_DOUBLE_EQ(wa4_upper_bound(big, 4096), 0.75 * kPi / big);
  EXPECT_LE(avg_probabilistic_error(32, 4096, 0.75, Measure::kUniformOnFunctions).value,
            wa4_upper_bound(32, 4096));
  EXPECT_THROW(wa4_upper_bound(6, 16), std::invalid_argument);
}

TEST(Wan4, Evaluations) {
  const double b = wan4_lower_bound(6, 4096, 2.0);
  EXPECT_GT(b, 0.0);
  EXPECT_LE(b, avg_probabilistic_error(6, 4096, 0.75, Measure::kUniformOnFunctions).value);
  EXPECT_LE(wan4_lower_bound(6, 4096, 1.0001), 0.0);
  const double m = 7.0;
  const double s = 8.0 * 4.0 * m;
  const double want = kPi / (4.0 * m) * (1.0 - 1.0 / m - 0.25) * (1.0 - 2.0 * std::exp(-65536.0 * kPi * kPi / (s * s)));
  EXPECT_NEAR(wan4_lower_bound(7, 65536, 4.0), want, 1e-15);
  EXPECT_THROW(wan4_lower_bound(8, 16, 2.0), std::invalid_argument);
  EXPECT_THROW(wan4_lower_bound(6, 16, 1.0), std::invalid_argument);
  EXPECT_THROW(wan4_lower_bound(3, 16, 2.0), std::invalid_argument);
}

TEST(QueriesForEpsilon, Examples) {
  const QueryPlan a = queries_for_epsilon(0.01, kEightOverPiSq);
  EXPECT_EQ(a.M, 236);
  EXPECT_EQ(a.queries, 235);
  EXPECT_EQ(queries_for_epsilon(0.1, 0.75).M, 23);
  EXPECT_THROW(queries_for_epsilon(0.0, 0.75), std::invalid_argument);
  EXPECT_THROW(queries_for_epsilon(0.1, 0.4), std::invalid_argument);
  EXPECT_THROW(queries_for_epsilon(0.1, 0.9), std::invalid_argument);
}

TEST(QueriesForEpsilon, PlanAchievesAccuracy) {
  const QueryPlan plan = queries_for_epsilon(0.01, kEightOverPiSq);
  EXPECT_LE(worst_probabilistic_error(plan.M, std::uint64_t{1} << 20, kEightOverPiSq).value, 0.01);
}

TEST(IntegerRounding, RecoversExactMean) {
  for (std::uint64_t N : {2ULL, 4ULL, 8ULL}) {
    const auto M = static_cast<long long>(std::floor(1.5 * kPi * static_cast<double>(N))) + 1;
    for (std::uint64_t k = 0; k <= N; ++k) {
      const OutcomeDistribution d = distribution(Mean(k, N), M);
      double mass = 0.0;
      for (long long j = 0; j < M; ++j) {
        if (std::llround(d.outputs[j] * static_cast<double>(N)) == static_cast<long long>(k)) mass += d.probs[j];
      }
      EXPECT_GE(mass, kEightOverPiSq - 1e-12) << "N=" << N << " k=" << k;
    }
  }
}

}  // namespace
}  // namespace qsum
