#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qsum/boolean_function.hpp"
#include "qsum/closed_form.hpp"
#include "qsum/error_analysis.hpp"
#include "qsum/numeric.hpp"
#include "qsum/quantum_sim.hpp"
#include "verify.hpp"

namespace qsum::cli {

namespace {

// Largest n accepted for exact means; N = 2^n must fit the k-sweeps.
constexpr unsigned kMaxN = 40;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

long long parse_integer(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::uint64_t size_from_n(unsigned n) {
  if (n > kMaxN) throw UsageError("--n must be at most " + std::to_string(kMaxN));
  return std::uint64_t{1} << n;
}

void check_m(long long M) {
  if (M < 1) throw UsageError("--m must be at least 1");
}

Measure parse_measure(const std::string& s) {
  if (s == "p1") return Measure::kUniformOnFunctions;
  if (s == "p2") return Measure::kUniformOnMeans;
  throw UsageError("--measure must be p1 or p2");
}

Setting parse_setting(const std::string& s) {
  if (s == "worst") return Setting::kWorstProbabilistic;
  if (s == "avg") return Setting::kAvgProbabilistic;
  throw UsageError("--setting must be worst or avg");
}

void write_error_header(std::ostream& out) { out << "M,N,p,setting,measure,value,bound,bound_ref\n"; }

void write_error_row(std::ostream& out, const ErrorRecord& r) {
  out << r.M << ',' << r.N << ',' << format_double(r.p) << ',' << to_string(r.setting) << ',';
  if (r.measure) out << to_string(*r.measure);
  out << ',' << format_double(r.value) << ',';
  if (r.bound) out << format_double(*r.bound);
  out << ',' << r.bound_ref << '\n';
}

std::vector<ErrorRecord> error_rows(Setting setting, long long M, std::uint64_t N,
                                    std::span<const double> ps, Measure measure, double beta) {
  if (setting == Setting::kWorstProbabilistic) return worst_probabilistic_errors(M, N, ps);
  return avg_probabilistic_errors(M, N, ps, measure, beta);
}

struct Options {
  long long m = 0;
  unsigned n = 0;
  std::uint64_t k = 0;
  std::string f;
  std::uint64_t seed = 0;
  std::string setting;
  std::string p;
  std::string m_list;
  std::string measure = "p1";
  double beta = 2.0;
  std::string suite;
  std::string out_path;
};

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_level(const std::string& text) {
  if (text == "8/pi2") return kEightOverPiSq;
  if (text == "4/pi2") return kFourOverPiSq;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("not a level: '" + text + "'");
  }
  if (!(v > 0.0 && v <= 1.0)) throw UsageError("level must lie in (0, 1]: '" + text + "'");
  return v;
}

std::vector<long long> parse_m_list(const std::string& text) {
  std::vector<long long> ms;
  if (text.empty()) throw UsageError("empty M list");
  for (const std::string& item : split(text, ',')) {
    const std::vector<std::string> parts = split(item, ':');
    if (parts.size() == 1) {
      ms.push_back(parse_integer(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const long long lo = parse_integer(parts[0]);
      const long long hi = parse_integer(parts[1]);
      if (lo < 1 || hi < lo) throw UsageError("invalid M range: '" + item + "'");
      if (parts.size() == 3 && !parts[2].empty() && parts[2][0] == 'x') {
        const long long factor = parse_integer(std::string_view(parts[2]).substr(1));
        if (factor < 2) throw UsageError("geometric factor must be at least 2: '" + item + "'");
        for (long long M = lo; M <= hi; M *= factor) {
          ms.push_back(M);
          if (M > std::numeric_limits<long long>::max() / factor) break;
        }
      } else {
        const long long step = parts.size() == 3 ? parse_integer(parts[2]) : 1;
        if (step < 1) throw UsageError("step must be at least 1: '" + item + "'");
        for (long long M = lo; M <= hi; M += step) ms.push_back(M);
      }
    } else {
      throw UsageError("invalid M item: '" + item + "'");
    }
  }
  for (long long M : ms) check_m(M);
  return ms;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum summation: outcome laws, gate-level simulation and error analysis", "qsum"};
  app.require_subcommand(1);
  Options o;

  auto* dist = app.add_subcommand("dist", "Outcome distribution for the mean k/2^n");
  dist->add_option("--m", o.m, "Number of index states M")->required();
  dist->add_option("--n", o.n, "Input bits n (N = 2^n)")->required();
  dist->add_option("--k", o.k, "Number of ones k")->required();

  auto* sim = app.add_subcommand("simulate", "Gate-level run with one measurement");
  sim->add_option("--m", o.m, "Number of index states M")->required();
  sim->add_option("--n", o.n, "Input bits n")->required();
  sim->add_option("--f", o.f, "Truth table in hex, most significant nibble first")->required();
  sim->add_option("--seed", o.seed, "Measurement seed")->required();

  auto* error = app.add_subcommand("error", "Worst or average probabilistic error");
  error->add_option("--setting", o.setting, "worst or avg")->required();
  error->add_option("--m", o.m, "Number of index states M")->required();
  error->add_option("--n", o.n, "Input bits n")->required();
  error->add_option("--p", o.p, "Level p: decimal, 8/pi2 or 4/pi2")->required();
  error->add_option("--measure", o.measure, "p1 or p2 (average setting)");
  error->add_option("--beta", o.beta, "Exponent beta for the non-divisible lower bound");

  auto* curve = app.add_subcommand("curve", "Error sweep over M and p");
  curve->add_option("--setting", o.setting, "worst or avg")->required();
  curve->add_option("--m", o.m_list, "M values: a, a:b, a:b:s or a:b:xF, comma separated")->required();
  curve->add_option("--n", o.n, "Input bits n")->required();
  curve->add_option("--p", o.p, "Comma-separated levels")->required();
  curve->add_option("--measure", o.measure, "p1 or p2 (average setting)");
  curve->add_option("--beta", o.beta, "Exponent beta for the non-divisible lower bound");

  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("--suite", o.suite, "unitarity, oracle-equivalence, bounds, calculus, average-case or all")
      ->required();

  for (auto* sub : {dist, sim, error, curve, verify}) {
    sub->add_option("--out", o.out_path, "Write output to this file instead of standard output");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  std::ostringstream buffer;
  int code = 0;
  try {
    if (*dist) {
      check_m(o.m);
      const std::uint64_t N = size_from_n(o.n);
      if (o.k > N) throw UsageError("--k must satisfy 0 <= k <= 2^n");
      const OutcomeDistribution d = distribution(Mean(o.k, N), o.m);
      buffer << "j,prob,abar\n";
      for (long long j = 0; j < o.m; ++j) {
        buffer << j << ',' << format_double(d.probs[j]) << ',' << format_double(d.outputs[j]) << '\n';
      }
    } else if (*sim) {
      check_m(o.m);
      size_from_n(o.n);
      const BooleanFunction f = BooleanFunction::parse(o.n, o.f);
      const QsRun r = run_qs(f, o.m, o.seed);
      const OutcomeDistribution d = distribution(mean(f), o.m);
      const auto j = static_cast<long long>(r.measurement->outcome);
      buffer << "outcome " << j << '\n'
             << "output " << format_double(*r.output) << '\n'
             << "probability " << format_double(d.probs[j]) << '\n'
             << "statevector_probability " << format_double(r.measurement->probability) << '\n'
             << "queries " << r.query_count << '\n'
             << "qubits " << r.qubit_count << '\n';
    } else if (*error) {
      check_m(o.m);
      const std::uint64_t N = size_from_n(o.n);
      const double p = parse_level(o.p);
      const auto rows = error_rows(parse_setting(o.setting), o.m, N, std::span(&p, 1),
                                   parse_measure(o.measure), o.beta);
      write_error_header(buffer);
      for (const auto& r : rows) write_error_row(buffer, r);
    } else if (*curve) {
      const Setting setting = parse_setting(o.setting);
      const Measure measure = parse_measure(o.measure);
      const std::uint64_t N = size_from_n(o.n);
      const std::vector<long long> ms = parse_m_list(o.m_list);
      std::vector<double> ps;
      for (const std::string& item : split(o.p, ',')) ps.push_back(parse_level(item));
      if (ps.empty()) throw UsageError("empty --p list");
      write_error_header(buffer);
      for (long long M : ms) {
        for (const auto& r : error_rows(setting, M, N, ps, measure, o.beta)) write_error_row(buffer, r);
      }
    } else if (*verify) {
      if (!verify::is_suite(o.suite)) throw UsageError("unknown suite: '" + o.suite + "'");
      if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file) throw UsageError("cannot open " + o.out_path);
        sink = &file;
      }
      return verify::run_suite(o.suite, *sink) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << o.out_path << '\n';
      return 2;
    }
    sink = &file;
  }
  *sink << buffer.str();
  sink->flush();
  return code;
}

}  // namespace qsum::cli
