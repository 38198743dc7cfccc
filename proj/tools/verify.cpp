#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "qsum/boolean_function.hpp"
#include "qsum/closed_form.hpp"
#include "qsum/error_analysis.hpp"
#include "qsum/numeric.hpp"
#include "qsum/quantum_sim.hpp"
#include "qsum/rng.hpp"

namespace qsum::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

StateVector random_state(const QubitLayout& layout, Rng& rng) {
  std::vector<Complex> amps(layout.dim());
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector::from_amplitudes(layout, std::move(amps));
}

BooleanFunction random_function(unsigned n, Rng& rng) {
  std::vector<std::uint8_t> v(std::size_t{1} << n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return BooleanFunction(n, std::move(v));
}

double vec_distance(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
  return std::sqrt(s);
}

std::vector<Complex> apply_q(const BooleanFunction& f, const std::vector<Complex>& v) {
  const QubitLayout L = QubitLayout::for_problem(f.n(), 1);
  StateVector s = StateVector::from_amplitudes(L, v);
  apply_grover(s, f);
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

// --- criterion 1 -----------------------------------------------------------

CheckResult oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string where;
  long runs = 0;
  for (unsigned n = 1; n <= 6; ++n) {
    const std::uint64_t N = std::uint64_t{1} << n;
    for (long long M = 1; M <= 16; ++M) {
      for (std::uint64_t k = 0; k <= N; ++k) {
        const QsRun run = run_qs(BooleanFunction::from_mean(n, k), M);
        const OutcomeDistribution d = distribution(Mean(k, N), M);
        for (std::size_t j = 0; j < run.marginal.size(); ++j) {
          const double ref = j < d.probs.size() ? d.probs[j] : 0.0;
          const double dev = std::fabs(run.marginal[j] - ref);
          if (dev > worst) {
            worst = dev;
            where = "n=" + std::to_string(n) + " M=" + std::to_string(M) + " k=" + std::to_string(k);
          }
        }
        ++runs;
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst <= 1e-9 && secs <= 60.0;
  return {pass, std::to_string(runs) + " runs, max |dev| " + sci(worst) +
                    (where.empty() ? "" : " at " + where) + ", " + fixed(secs, 2) + " s"};
}

// --- criterion 2 -----------------------------------------------------------

CheckResult accounting() {
  long runs = 0;
  long bad = 0;
  auto check = [&](unsigned n, long long M, std::uint64_t k) {
    const QsRun run = run_qs(BooleanFunction::from_mean(n, k), M);
    const auto want_q = M - 1;
    const auto want_qubits = n + oracle::ceil_log2(static_cast<std::uint64_t>(M));
    if (run.query_count != want_q || run.qubit_count != want_qubits ||
        run.layout.total_qubits() != want_qubits) {
      ++bad;
    }
    ++runs;
  };
  for (unsigned n = 1; n <= 6; ++n) {
    const std::uint64_t N = std::uint64_t{1} << n;
    for (long long M = 1; M <= 16; ++M) {
      for (std::uint64_t k = 0; k <= N; ++k) check(n, M, k);
    }
  }
  for (long long M = 17; M <= 64; ++M) check(1, M, 1);
  return {bad == 0, std::to_string(runs) + " runs, " + std::to_string(bad) + " mismatches"};
}

// --- criterion 3 -----------------------------------------------------------

double exact_mass(std::span<const double> probs, std::span<const double> outputs, double a) {
  double mass = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (std::fabs(outputs[j] - a) <= 1e-12) mass += probs[j];
  }
  return mass;
}

CheckResult exactness() {
  double worst = 0.0;
  long cases = 0;
  auto closed = [&](const Mean& a, long long M) {
    const OutcomeDistribution d = distribution(a, M);
    worst = std::max(worst, std::fabs(exact_mass(d.probs, d.outputs, a.value()) - 1.0));
    ++cases;
  };
  auto gate = [&](unsigned n, std::uint64_t k, long long M) {
    const QsRun run = run_qs(BooleanFunction::from_mean(n, k), M);
    const std::vector<double> outputs = output_values(M);
    const std::span<const double> head(run.marginal.data(), static_cast<std::size_t>(M));
    const double a = static_cast<double>(k) / static_cast<double>(std::uint64_t{1} << n);
    worst = std::max(worst, std::fabs(exact_mass(head, outputs, a) - 1.0));
    ++cases;
  };
  for (unsigned n = 0; n <= 10; ++n) {
    const std::uint64_t N = std::uint64_t{1} << n;
    for (long long M = 1; M <= 64; ++M) {
      closed(Mean(0, N), M);
      if (M % 2 == 0) closed(Mean(N, N), M);
      if (M % 4 == 0 && N >= 2) closed(Mean(N / 2, N), M);
    }
  }
  for (unsigned n = 1; n <= 4; ++n) {
    const std::uint64_t N = std::uint64_t{1} << n;
    for (long long M = 1; M <= 16; ++M) {
      gate(n, 0, M);
      if (M % 2 == 0) gate(n, N, M);
      if (M % 4 == 0) gate(n, N / 2, M);
    }
  }
  return {worst <= 1e-12, std::to_string(cases) + " cases, max |mass - 1| " + sci(worst)};
}

// --- criterion 4 -----------------------------------------------------------

CheckResult three_quarter_bound() {
  const std::uint64_t N = 4096;
  double min_gap = 1e300;
  long long at = 0;
  bool pass = true;
  for (long long M = 2; M <= 64; ++M) {
    const ErrorRecord r = worst_probabilistic_error(M, N, kEightOverPiSq);
    const double bound = 0.75 * kPi / static_cast<double>(M);
    const double gap = bound - r.value;
    if (r.value > bound + 1e-12) pass = false;
    if (gap < min_gap) {
      min_gap = gap;
      at = M;
    }
  }
  return {pass, "M=2..64, N=2^12, min(3pi/4M - e) = " + sci(min_gap) + " at M=" + std::to_string(at)};
}

// --- criterion 5 -----------------------------------------------------------

CheckResult asymptotic_sharpness() {
  const auto t0 = Clock::now();
  const long long M = 64;
  const std::uint64_t N = std::uint64_t{1} << 20;
  const double ps[] = {0.51, 0.6, 0.75, kEightOverPiSq};
  const auto records = worst_probabilistic_errors(M, N, ps);
  bool pass = true;
  std::string detail;
  for (const ErrorRecord& r : records) {
    const double scale = (1.0 - v_inverse(r.p)) * kPi / static_cast<double>(M);
    const double ratio = r.value / scale;
    if (!(ratio >= 0.85 && ratio <= 1.0)) pass = false;
    detail += "p=" + fixed(r.p, 4) + ":" + fixed(ratio, 4) + " ";
  }
  const double secs = seconds_since(t0);
  if (secs > 600.0) pass = false;
  return {pass, "ratios " + detail + "(" + fixed(secs, 1) + " s)"};
}

// --- criterion 6 -----------------------------------------------------------

CheckResult level_function_anchors() {
  const double at8 = v_inverse(kEightOverPiSq);
  const double at4 = v_inverse(kFourOverPiSq);
  const double c75 = (1.0 - v_inverse(0.75)) * kPi;
  const double c501 = (1.0 - v_inverse(0.501)) * kPi;
  double residual = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double p = kFourOverPiSq + (kEightOverPiSq - kFourOverPiSq) * i / 999.0;
    residual = std::max(residual, std::fabs(kPi * kPi * p / 16.0 + 0.25 - (1.0 - v_inverse(p))));
  }
  const bool pass = std::fabs(at8 - 0.25) <= 1e-10 && std::fabs(at4 - 0.5) <= 1e-10 &&
                    std::fabs(c75 - 2.23) <= 0.01 && std::fabs(c501 - 1.75) <= 0.01 &&
                    residual <= 0.0085;
  return {pass, "v^-1(8/pi^2)=" + fixed(at8, 12) + " v^-1(4/pi^2)=" + fixed(at4, 12) +
                    " (1-v^-1(.75))pi=" + fixed(c75, 4) + " (1-v^-1(.501))pi=" + fixed(c501, 4) +
                    " linear residual=" + fixed(residual, 5)};
}

// --- criterion 7 -----------------------------------------------------------

CheckResult first_moments() {
  double worst = 0.0;
  for (std::uint64_t N = 1; N <= 24; ++N) {
    double direct = 0.0;
    for (std::uint64_t k = 0; k <= N; ++k) {
      direct += class_weight(Measure::kUniformOnFunctions, k, N) *
                std::fabs(0.5 - static_cast<double>(k) / static_cast<double>(N));
    }
    worst = std::max(worst, std::fabs(first_moment(Measure::kUniformOnFunctions, N) - direct));
  }
  const std::uint64_t N = 4096;
  const double scaled =
      first_moment(Measure::kUniformOnFunctions, N) * std::sqrt(2.0 * kPi * static_cast<double>(N));
  const double uniform_means = first_moment(Measure::kUniformOnMeans, N);
  const bool pass = worst <= 1e-14 && scaled >= 0.99 && scaled <= 1.01 && uniform_means >= 0.24 &&
                    uniform_means <= 0.26;
  return {pass, "closed-vs-direct max " + sci(worst) + ", p1*sqrt(2piN)=" + fixed(scaled, 6) +
                    ", p2=" + fixed(uniform_means, 6)};
}

// --- criterion 8 -----------------------------------------------------------

CheckResult average_dichotomy() {
  const std::uint64_t N = 4096;
  const double p = 0.75;
  bool pass = true;
  std::string detail;
  for (long long M : {4LL, 8LL, 16LL, 32LL}) {
    const ErrorRecord r = avg_probabilistic_error(M, N, p, Measure::kUniformOnFunctions);
    const double bound = wa4_upper_bound(M, N);
    if (!(r.value <= bound)) pass = false;
    detail += "M=" + std::to_string(M) + ":" + sci(r.value) + "<=" + sci(bound) + " ";
  }
  for (long long M : {5LL, 6LL, 7LL, 18LL}) {
    const ErrorRecord r = avg_probabilistic_error(M, N, p, Measure::kUniformOnFunctions);
    const double bound = wan4_lower_bound(M, N, 2.0);
    if (!(r.value >= bound)) pass = false;
    detail += "M=" + std::to_string(M) + ":" + sci(r.value) + ">=" + sci(bound) + " ";
  }
  return {pass, detail};
}

// --- criterion 9 -----------------------------------------------------------

CheckResult subset_oracle() {
  const double ps[] = {0.51, 0.75, kEightOverPiSq};
  double worst = 0.0;
  long cases = 0;
  for (long long M = 1; M <= 8; ++M) {
    for (std::uint64_t k = 0; k <= 16; ++k) {
      const OutcomeDistribution d = distribution(Mean(k, 16), M);
      for (double p : ps) {
        const double greedy = error_at_level(Mean(k, 16), M, p);
        const double brute = oracle::subset_min_error(d.probs, d.outputs, d.a, p);
        worst = std::max(worst, std::fabs(greedy - brute));
        ++cases;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(cases) + " cases, max |greedy - subsets| " + sci(worst)};
}

// --- criterion 10 ----------------------------------------------------------

CheckResult unitarity() {
  Rng rng(20240611);
  double drift = 0.0;
  auto track = [&](const StateVector& s) { drift = std::max(drift, std::fabs(s.norm_squared() - 1.0)); };
  struct Case {
    unsigned n;
    long long M;
    bool ancilla;
  };
  for (const Case c : {Case{3, 6, false}, Case{4, 5, false}, Case{2, 8, true}, Case{5, 3, true},
                       Case{6, 16, false}}) {
    const QubitLayout L = QubitLayout::for_problem(c.n, c.M, c.ancilla);
    for (int rep = 0; rep < 5; ++rep) {
      const BooleanFunction f = random_function(c.n, rng);
      StateVector s = random_state(L, rng);
      for (Primitive p : {Primitive::kS0, Primitive::kWalshHadamard, Primitive::kQft,
                          Primitive::kQftInverse}) {
        apply_primitive(s, p);
        track(s);
      }
      apply_primitive(s, Primitive::kQuery, f);
      track(s);
      apply_grover(s, f);
      track(s);
      apply_lambda(s, f);
      track(s);
      if (c.ancilla) {
        apply_standard_query(s, f);
        track(s);
      }
    }
  }
  for (unsigned n = 1; n <= 6; ++n) {
    for (long long M : {1LL, 3LL, 7LL, 16LL}) {
      track(run_qs(random_function(n, rng), M).final_state);
    }
  }
  return {drift <= 1e-10, "max norm drift " + sci(drift)};
}

CheckResult grover_subspace() {
  Rng rng(7);
  double worst = 0.0;
  auto check = [&](const BooleanFunction& f) {
    const GroverVectors g = grover_vectors(f);
    const GroverSpectrum s = grover_spectrum(mean(f));
    const auto& q = s.subspace_matrix;
    const auto q0 = apply_q(f, g.psi0);
    const auto q1 = apply_q(f, g.psi1);
    std::vector<Complex> e0(g.psi0.size());
    std::vector<Complex> e1(g.psi0.size());
    for (std::size_t y = 0; y < e0.size(); ++y) {
      e0[y] = q[0][0] * g.psi0[y] + q[1][0] * g.psi1[y];
      e1[y] = q[0][1] * g.psi0[y] + q[1][1] * g.psi1[y];
    }
    worst = std::max({worst, vec_distance(q0, e0), vec_distance(q1, e1)});
  };
  for (unsigned n = 1; n <= 6; ++n) {
    for (std::uint64_t k = 0; k <= (std::uint64_t{1} << n); ++k) check(BooleanFunction::from_mean(n, k));
    for (int rep = 0; rep < 10; ++rep) check(random_function(n, rng));
  }
  return {worst <= 1e-12, "max deviation from the 2x2 action " + sci(worst)};
}

CheckResult representation_identity() {
  Rng rng(11);
  double rep_worst = 0.0;
  double eig_worst = 0.0;
  auto check = [&](const BooleanFunction& f) {
    const GroverVectors g = grover_vectors(f);
    const GroverSpectrum s = grover_spectrum(mean(f));
    const Complex ep = std::polar(1.0, s.theta);
    const Complex em = std::polar(1.0, -s.theta);
    const Complex pre = Complex(0.0, -1.0) / std::sqrt(2.0);
    std::vector<Complex> rebuilt(g.psi.size());
    for (std::size_t y = 0; y < rebuilt.size(); ++y) {
      rebuilt[y] = pre * (ep * g.psi_plus[y] - em * g.psi_minus[y]);
    }
    rep_worst = std::max(rep_worst, vec_distance(rebuilt, g.psi));
    const auto qp = apply_q(f, g.psi_plus);
    const auto qm = apply_q(f, g.psi_minus);
    std::vector<Complex> lp(g.psi.size());
    std::vector<Complex> lm(g.psi.size());
    for (std::size_t y = 0; y < lp.size(); ++y) {
      lp[y] = s.lambda_plus * g.psi_plus[y];
      lm[y] = s.lambda_minus * g.psi_minus[y];
    }
    eig_worst = std::max({eig_worst, vec_distance(qp, lp), vec_distance(qm, lm)});
  };
  for (unsigned n = 1; n <= 6; ++n) {
    for (std::uint64_t k = 0; k <= (std::uint64_t{1} << n); ++k) check(BooleanFunction::from_mean(n, k));
    for (int rep = 0; rep < 10; ++rep) check(random_function(n, rng));
  }
  return {rep_worst <= 1e-10 && eig_worst <= 1e-10,
          "representation " + sci(rep_worst) + ", eigenrelation " + sci(eig_worst)};
}

CheckResult kernel_direct() {
  Rng rng(157);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const long long M = 1 + static_cast<long long>(rng.next_u64() % 64);
    const double w1 = 6.0 * rng.uniform() - 3.0;
    // Every fourth point sits exactly on an integer difference.
    const double w2 = (i % 4 == 0) ? w1 - static_cast<double>(i % 7) : 6.0 * rng.uniform() - 3.0;
    worst = std::max(worst, std::fabs(kernel(w1, w2, M) - oracle::kernel_direct_sum(w1, w2, M)));
  }
  return {worst <= 1e-12, "1000 points, max |kernel - direct sum| " + sci(worst)};
}

CheckResult normalization_symmetry() {
  double norm_worst = 0.0;
  double sym_worst = 0.0;
  for (unsigned n = 0; n <= 10; ++n) {
    const std::uint64_t N = std::uint64_t{1} << n;
    for (std::uint64_t k = 0; k <= N; ++k) {
      for (long long M = 1; M <= 64; ++M) {
        const OutcomeDistribution d = distribution(Mean(k, N), M);
        norm_worst = std::max(norm_worst, std::fabs(compensated_sum(d.probs) - 1.0));
        for (long long j = 1; j < M; ++j) {
          sym_worst = std::max({sym_worst, std::fabs(d.probs[j] - d.probs[M - j]),
                                std::fabs(d.outputs[j] - d.outputs[M - j])});
        }
      }
    }
  }
  return {norm_worst <= 1e-12 && sym_worst <= 1e-12,
          "N<=2^10, M<=64: max |sum - 1| " + sci(norm_worst) + ", max asymmetry " + sci(sym_worst)};
}

std::vector<Check> build_checks() {
  return {
      {1, "oracle-equivalence", "gate-level marginals equal the closed form (n<=6, M<=16)", oracle_equivalence},
      {2, "unitarity", "query count M-1 and qubit count n+ceil(log2 M)", accounting},
      {3, "bounds", "exact output with probability 1 when sigma is an integer", exactness},
      {4, "bounds", "worst error <= 3pi/(4M) at p=8/pi^2, N=2^12", three_quarter_bound},
      {5, "bounds", "worst error / ((1-v^-1(p))pi/M) in [0.85, 1] at M=64, N=2^20", asymptotic_sharpness},
      {6, "calculus", "level-function anchors and linear estimate", level_function_anchors},
      {7, "calculus", "first-moment identities", first_moments},
      {8, "average-case", "divisibility dichotomy of the p1 average error", average_dichotomy},
      {9, "bounds", "greedy level error equals subset enumeration", subset_oracle},
      {10, "unitarity", "norm preservation of every operator", unitarity},
      {10, "unitarity", "Grover action on span{psi0, psi1}", grover_subspace},
      {10, "unitarity", "representation of psi and eigenrelations", representation_identity},
      {10, "calculus", "kernel versus direct complex sum", kernel_direct},
      {10, "calculus", "distribution normalization and j <-> M-j symmetry", normalization_symmetry},
  };
}

}  // namespace

const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = build_checks();
  return checks;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"unitarity", "oracle-equivalence", "bounds",
                                                 "calculus",  "average-case",       "all"};
  return names;
}

bool is_suite(std::string_view name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool run_suite(std::string_view suite, std::ostream& out) {
  if (!is_suite(suite)) throw std::invalid_argument("unknown suite: " + std::string(suite));
  bool all_pass = true;
  for (const Check& c : all_checks()) {
    if (suite != "all" && c.suite != suite) continue;
    CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && r.pass;
    out << (r.pass ? "PASS" : "FAIL") << "  [" << c.criterion << "] " << c.name << " | "
        << r.detail << '\n';
    out.flush();
  }
  out << (all_pass ? "suite " : "suite ") << suite << (all_pass ? ": PASS" : ": FAIL") << '\n';
  return all_pass;
}

}  // namespace qsum::verify
