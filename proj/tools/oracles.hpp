#pragma once

// Independent reference computations used by the verification suites and the
// tests. Nothing here calls into the code path it is used to check.

#include <complex>
#include <cstdint>
#include <span>

namespace qsum::oracle {

/// |sum_{j<M} exp(-2 pi i (omega1 - omega2) j)|^2 / M^2 by direct summation.
double kernel_direct_sum(double omega1, double omega2, long long M);

/// min over all outcome subsets A with mass >= p - 1e-12 of max_{j in A}
/// |outputs[j] - a|, by enumerating all 2^M subsets. M <= 20.
double subset_min_error(std::span<const double> probs, std::span<const double> outputs, double a,
                        double p);

/// Factored outcome law: sin^2(pi(j-s)) / (2 M^2 sin^2(pi(j-s)/M)) *
/// (1 + sin^2(pi(j-s)/M) / sin^2(pi(j+s)/M)) in long double. Near a
/// vanishing denominator the limit is extrapolated from symmetric offsets of s.
double factored_probability(long long j, double sigma, long long M);

/// ceil(log2 M) from the bit width of M - 1.
unsigned ceil_log2(std::uint64_t M);

}  // namespace qsum::oracle
