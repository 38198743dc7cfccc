#include "qsum/boolean_function.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "qsum/numeric.hpp"

namespace qsum {
namespace {

// 2^-N C(N, k) from an exact big-integer binomial, rounded once.
double big_binomial_half_pmf(unsigned k, unsigned N) {
  using boost::multiprecision::cpp_int;
  using Dec = boost::multiprecision::cpp_dec_float_50;
  cpp_int c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * (N - i) / (i + 1);
  Dec v(c);
  for (unsigned i = 0; i < N; ++i) v /= 2;
  return v.convert_to<double>();
}

TEST(Mean, OfZeroFunctionIsZero) {
  const Mean a = mean(BooleanFunction::zeros(3));
  EXPECT_TRUE(a.is_zero());
  EXPECT_EQ(a, Mean(0, 8));
}

TEST(Mean, OfOneFunctionIsOne) {
  const Mean a = mean(BooleanFunction::ones(2));
  EXPECT_TRUE(a.is_one());
  EXPECT_DOUBLE_EQ(a.value(), 1.0);
}

TEST(Mean, CountsOnes) {
  const BooleanFunction f(3, {1, 0, 1, 1, 0, 0, 0, 0});
  EXPECT_EQ(mean(f), Mean(3, 8));
  EXPECT_EQ(f.popcount(), 3U);
}

TEST(Mean, EqualityIsRational) {
  EXPECT_EQ(Mean(1, 2), Mean(512, 1024));
  EXPECT_FALSE(Mean(1, 3) == Mean(2, 5));
  EXPECT_THROW(Mean(3, 2), std::invalid_argument);
  EXPECT_THROW(Mean(0, 0), std::invalid_argument);
}

TEST(BooleanFunction, RejectsBadTables) {
  EXPECT_THROW(BooleanFunction(2, {0, 1, 0}), std::invalid_argument);
  EXPECT_THROW(BooleanFunction(1, {0, 2}), std::invalid_argument);
  EXPECT_THROW(BooleanFunction::from_mean(2, 5), std::invalid_argument);
}

TEST(BooleanFunction, HexRoundTrip) {
  const BooleanFunction f = BooleanFunction::parse(3, "0F");
  EXPECT_EQ(f.popcount(), 4U);
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_TRUE(f(i));
  for (std::uint64_t i = 4; i < 8; ++i) EXPECT_FALSE(f(i));
  EXPECT_EQ(f.to_string(), "0f");
  EXPECT_EQ(BooleanFunction::parse(3, "0x0f").values()[0], 1);
  const BooleanFunction g(4, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  EXPECT_EQ(g.to_string(), "8001");
  EXPECT_EQ(BooleanFunction::parse(4, g.to_string()).values()[15], 1);
}

TEST(BooleanFunction, SmallTablesUseBinary) {
  const BooleanFunction f(1, {1, 0});
  EXPECT_EQ(f.to_string(), "01");
  EXPECT_EQ(BooleanFunction::parse(1, "01").values()[0], 1);
  EXPECT_EQ(BooleanFunction::parse(0, "1").popcount(), 1U);
}

TEST(BooleanFunction, ParseRejectsMalformedText) {
  EXPECT_THROW(BooleanFunction::parse(3, "0G"), std::invalid_argument);
  EXPECT_THROW(BooleanFunction::parse(3, "00F"), std::invalid_argument);
  EXPECT_THROW(BooleanFunction::parse(1, "2"), std::invalid_argument);
}

TEST(Sigma, SpecialValues) {
  EXPECT_EQ(sigma_of(Mean(0, 8), 8).sigma, 0.0);
  const SigmaValue half = sigma_of(Mean(1, 2), 8);
  EXPECT_TRUE(half.is_integral());
  EXPECT_EQ(half.sigma, 2.0);
  const SigmaValue three_quarters = sigma_of(Mean(3, 4), 12);
  EXPECT_TRUE(three_quarters.is_integral());
  EXPECT_EQ(three_quarters.sigma, 4.0);
}

TEST(Sigma, FloorAndCeil) {
  const SigmaValue s = sigma_of(Mean(3, 8), 8);
  EXPECT_FALSE(s.is_integral());
  EXPECT_EQ(s.floor(), 1);
  EXPECT_EQ(s.ceil(), 2);
  EXPECT_NEAR(s.sigma, 8.0 * std::asin(std::sqrt(0.375)) / kPi, 1e-14);
  EXPECT_THROW(sigma_of(Mean(1, 2), 0), std::invalid_argument);
  EXPECT_THROW(sigma_of(1.5, 4), std::invalid_argument);
}

TEST(ClassWeight, SmallCases) {
  EXPECT_DOUBLE_EQ(class_weight(Measure::kUniformOnFunctions, 0, 4), 1.0 / 16.0);
  for (std::uint64_t k = 0; k <= 4; ++k) {
    EXPECT_DOUBLE_EQ(class_weight(Measure::kUniformOnMeans, k, 4), 0.2);
  }
  EXPECT_THROW(class_weight(Measure::kUniformOnFunctions, 5, 4), std::invalid_argument);
}

TEST(ClassWeight, MatchesBigIntegerBinomial) {
  const double ref = big_binomial_half_pmf(512, 1024);
  EXPECT_NEAR(class_weight(Measure::kUniformOnFunctions, 512, 1024), ref, 1e-12 * ref);
  // 2^-1024 is subnormal; the decimal oracle flushes it to zero.
  EXPECT_EQ(binomial_half_pmf(0, 1024), std::ldexp(1.0, -1024));
  EXPECT_EQ(binomial_half_pmf(1024, 1024), std::ldexp(1.0, -1024));
  for (unsigned k : {1U, 100U, 300U, 511U, 700U, 1023U}) {
    const double r = big_binomial_half_pmf(k, 1024);
    EXPECT_NEAR(binomial_half_pmf(k, 1024), r, 1e-12 * r) << "k=" << k;
  }
  for (unsigned k : {0U, 13U, 32U, 50U, 64U}) {
    const double r = big_binomial_half_pmf(k, 64);
    EXPECT_NEAR(binomial_half_pmf(k, 64), r, 1e-15 * r) << "k=" << k;
  }
}

TEST(ClassWeight, SumsToOne) {
  for (std::uint64_t N : {1ULL, 7ULL, 64ULL, 65ULL, 1000ULL, 4096ULL, 1ULL << 20}) {
    for (Measure m : {Measure::kUniformOnFunctions, Measure::kUniformOnMeans}) {
      EXPECT_NEAR(compensated_sum(class_weights(m, N)), 1.0, 1e-12) << "N=" << N;
    }
  }
}

TEST(FirstMoment, SmallCases) {
  EXPECT_NEAR(first_moment(Measure::kUniformOnFunctions, 3), 0.25, 1e-15);
  EXPECT_NEAR(first_moment(Measure::kUniformOnFunctions, 2), 0.25, 1e-15);
  EXPECT_NEAR(first_moment(Measure::kUniformOnMeans, 2), 1.0 / 3.0, 1e-15);
}

TEST(FirstMoment, ClosedFormMatchesDirectSum) {
  for (std::uint64_t N = 1; N <= 24; ++N) {
    double direct = 0.0;
    for (unsigned k = 0; k <= N; ++k) {
      direct += big_binomial_half_pmf(k, static_cast<unsigned>(N)) *
                std::fabs(0.5 - static_cast<double>(k) / static_cast<double>(N));
    }
    EXPECT_NEAR(first_moment(Measure::kUniformOnFunctions, N), direct, 1e-14) << "N=" << N;
  }
}

TEST(FirstMoment, Asymptotics) {
  const double N = 4096.0;
  const double scaled = first_moment(Measure::kUniformOnFunctions, 4096) * std::sqrt(2.0 * kPi * N);
  EXPECT_GE(scaled, 0.99);
  EXPECT_LE(scaled, 1.01);
  EXPECT_LE(std::fabs(first_moment(Measure::kUniformOnMeans, 4096) - 0.25), 1.0 / N);
}

}  // namespace
}  // namespace qsum
