#include "qsum/quantum_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qsum/closed_form.hpp"
#include "qsum/numeric.hpp"

namespace qsum {

namespace {

constexpr unsigned kMaxTotalQubits = 30;

void walsh_hadamard(std::span<Complex> v) {
  const std::size_t N = v.size();
  for (std::size_t h = 1; h < N; h <<= 1) {
    for (std::size_t i = 0; i < N; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex x = v[j];
        const Complex y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (auto& x : v) x *= scale;
}

void phase_query(std::span<Complex> v, const BooleanFunction& f) {
  for (std::size_t y = 0; y < v.size(); ++y) {
    if (f(y)) v[y] = -v[y];
  }
}

void grover_step(std::span<Complex> v, const BooleanFunction& f) {
  phase_query(v, f);
  walsh_hadamard(v);
  v[0] = -v[0];
  walsh_hadamard(v);
  for (auto& x : v) x = -x;
}

// Calls fn(fiber, j) on every data-register fiber, i.e. for each index value j
// and ancilla value i the 2^n amplitudes sharing them.
template <typename Fn>
void for_each_data_fiber(StateVector& state, Fn&& fn) {
  const QubitLayout& L = state.layout();
  const std::uint64_t N = L.data_dim();
  auto amps = state.amplitudes();
  if (!L.ancilla) {
    for (std::uint64_t j = 0; j < L.index_dim(); ++j) fn(amps.subspan(j * N, N), j);
    return;
  }
  std::vector<Complex> buf(N);
  for (std::uint64_t j = 0; j < L.index_dim(); ++j) {
    for (std::uint64_t i = 0; i < 2; ++i) {
      for (std::uint64_t y = 0; y < N; ++y) buf[y] = amps[L.basis_index(j, y, i)];
      fn(std::span<Complex>(buf), j);
      for (std::uint64_t y = 0; y < N; ++y) amps[L.basis_index(j, y, i)] = buf[y];
    }
  }
}

void check_f(const StateVector& state, const BooleanFunction& f) {
  if (f.n() != state.layout().n) {
    throw std::invalid_argument("Boolean function size does not match the data register");
  }
}

// Dense F_M (inverse = false) or F_M^-1 on the first M slices of the index register.
void apply_fourier(StateVector& state, bool inverse) {
  const QubitLayout& L = state.layout();
  if (static_cast<std::uint64_t>(L.M) > L.index_dim()) {
    throw std::invalid_argument("QFT: M exceeds the index register dimension 2^m");
  }
  const auto M = static_cast<std::uint64_t>(L.M);
  const double norm = 1.0 / std::sqrt(static_cast<double>(M));
  // phase[r] = exp(2 pi i r / M), with r = (j k) mod M taken exactly.
  std::vector<Complex> phase(M);
  for (std::uint64_t r = 0; r < M; ++r) {
    const double t = 2.0 * static_cast<double>(r) / static_cast<double>(M);
    phase[r] = Complex(cos_pi(t), inverse ? -sin_pi(t) : sin_pi(t));
  }
  auto amps = state.amplitudes();
  std::vector<Complex> in(M);
  std::vector<Complex> out(M);
  for (std::uint64_t y = 0; y < L.data_dim(); ++y) {
    for (std::uint64_t i = 0; i <= (L.ancilla ? 1U : 0U); ++i) {
      for (std::uint64_t j = 0; j < M; ++j) in[j] = amps[L.basis_index(j, y, i)];
      for (std::uint64_t k = 0; k < M; ++k) {
        Complex acc = 0.0;
        for (std::uint64_t j = 0; j < M; ++j) acc += phase[(j * k) % M] * in[j];
        out[k] = acc * norm;
      }
      for (std::uint64_t k = 0; k < M; ++k) amps[L.basis_index(k, y, i)] = out[k];
    }
  }
}

}  // namespace

QubitLayout QubitLayout::for_problem(unsigned n, long long M, bool ancilla) {
  if (M < 1) throw std::invalid_argument("QubitLayout: M must be at least 1");
  unsigned m = 0;
  while ((1LL << m) < M) ++m;
  QubitLayout L{n, m, M, ancilla};
  L.validate();
  return L;
}

void QubitLayout::validate() const {
  if (M < 1) throw std::invalid_argument("QubitLayout: M must be at least 1");
  if (total_qubits() > kMaxTotalQubits) {
    throw std::invalid_argument("QubitLayout: too many qubits for a dense statevector");
  }
  if (static_cast<std::uint64_t>(M) > index_dim()) {
    throw std::invalid_argument("QubitLayout: M exceeds 2^m");
  }
}

StateVector StateVector::zero(const QubitLayout& layout) { return basis(layout, 0); }

StateVector StateVector::basis(const QubitLayout& layout, std::uint64_t index) {
  if (layout.total_qubits() > kMaxTotalQubits) {
    throw std::invalid_argument("StateVector: too many qubits for a dense statevector");
  }
  if (index >= layout.dim()) throw std::invalid_argument("StateVector: basis index out of range");
  std::vector<Complex> amps(layout.dim(), Complex(0.0, 0.0));
  amps[index] = 1.0;
  return StateVector(layout, std::move(amps));
}

StateVector StateVector::from_amplitudes(const QubitLayout& layout,
                                         std::vector<Complex> amplitudes) {
  if (layout.total_qubits() > kMaxTotalQubits || amplitudes.size() != layout.dim()) {
    throw std::invalid_argument("StateVector: amplitude count does not match the layout");
  }
  return StateVector(layout, std::move(amplitudes));
}

double StateVector::norm_squared() const {
  CompensatedSum s;
  for (const auto& a : amplitudes_) s.add(std::norm(a));
  return s.value();
}

double StateVector::distance(const StateVector& other) const {
  if (other.amplitudes_.size() != amplitudes_.size()) {
    throw std::invalid_argument("StateVector::distance: layouts differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) s += std::norm(amplitudes_[i] - other[i]);
  return std::sqrt(s);
}

void apply_primitive(StateVector& state, Primitive which) {
  state.layout().validate();
  switch (which) {
    case Primitive::kS0:
      for_each_data_fiber(state, [](std::span<Complex> v, std::uint64_t) { v[0] = -v[0]; });
      return;
    case Primitive::kWalshHadamard:
      for_each_data_fiber(state, [](std::span<Complex> v, std::uint64_t) { walsh_hadamard(v); });
      return;
    case Primitive::kQft:
      apply_fourier(state, false);
      return;
    case Primitive::kQftInverse:
      apply_fourier(state, true);
      return;
    case Primitive::kQuery:
      throw std::invalid_argument("apply_primitive: the query primitive requires a Boolean function");
  }
}

void apply_primitive(StateVector& state, Primitive which, const BooleanFunction& f) {
  if (which != Primitive::kQuery) {
    apply_primitive(state, which);
    return;
  }
  state.layout().validate();
  check_f(state, f);
  for_each_data_fiber(state, [&f](std::span<Complex> v, std::uint64_t) { phase_query(v, f); });
}

void apply_standard_query(StateVector& state, const BooleanFunction& f) {
  const QubitLayout& L = state.layout();
  if (!L.ancilla) throw std::invalid_argument("apply_standard_query: layout has no ancilla qubit");
  check_f(state, f);
  auto amps = state.amplitudes();
  for (std::uint64_t j = 0; j < L.index_dim(); ++j) {
    for (std::uint64_t y = 0; y < L.data_dim(); ++y) {
      if (f(y)) std::swap(amps[L.basis_index(j, y, 0)], amps[L.basis_index(j, y, 1)]);
    }
  }
}

void apply_grover(StateVector& state, const BooleanFunction& f) {
  check_f(state, f);
  for_each_data_fiber(state, [&f](std::span<Complex> v, std::uint64_t) { grover_step(v, f); });
}

std::int64_t apply_lambda(StateVector& state, const BooleanFunction& f) {
  state.layout().validate();
  check_f(state, f);
  for_each_data_fiber(state, [&f](std::span<Complex> v, std::uint64_t j) {
    for (std::uint64_t r = 0; r < j; ++r) grover_step(v, f);
  });
  return state.layout().M - 1;
}

GroverSpectrum grover_spectrum(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("grover_spectrum: a must lie in [0, 1]");
  GroverSpectrum s;
  s.theta = std::asin(std::sqrt(a));
  if (a == 0.0 || a == 1.0) {
    const double sign = a == 0.0 ? 1.0 : -1.0;
    s.lambda_plus = s.lambda_minus = Complex(sign, 0.0);
  } else {
    const double re = 1.0 - 2.0 * a;
    const double im = 2.0 * std::sqrt(a * (1.0 - a));
    s.lambda_plus = Complex(re, im);
    s.lambda_minus = Complex(re, -im);
  }
  s.subspace_matrix = {{{1.0 - 2.0 * a, -2.0 * a}, {2.0 * (1.0 - a), 1.0 - 2.0 * a}}};
  return s;
}

GroverSpectrum grover_spectrum(const Mean& a) {
  if (a.is_zero()) return grover_spectrum(0.0);
  if (a.is_one()) return grover_spectrum(1.0);
  return grover_spectrum(a.value());
}

GroverVectors grover_vectors(const BooleanFunction& f) {
  const std::uint64_t N = f.size();
  const double amp = 1.0 / std::sqrt(static_cast<double>(N));
  GroverVectors g;
  g.psi.assign(N, Complex(amp, 0.0));
  g.psi0.assign(N, Complex(0.0, 0.0));
  g.psi1.assign(N, Complex(0.0, 0.0));
  for (std::uint64_t y = 0; y < N; ++y) (f(y) ? g.psi1 : g.psi0)[y] = amp;
  g.psi_plus.assign(N, Complex(0.0, 0.0));
  g.psi_minus.assign(N, Complex(0.0, 0.0));

  const Mean a = mean(f);
  if (a.is_zero() || a.is_one()) {
    // i^(1-a) sqrt(2) |psi>
    const Complex c = a.is_zero() ? Complex(0.0, std::sqrt(2.0)) : Complex(std::sqrt(2.0), 0.0);
    for (std::uint64_t y = 0; y < N; ++y) g.psi_plus[y] = c * g.psi[y];
    return g;
  }
  const double av = a.value();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex c0(0.0, inv_sqrt2 / std::sqrt(1.0 - av));
  const double c1 = inv_sqrt2 / std::sqrt(av);
  for (std::uint64_t y = 0; y < N; ++y) {
    g.psi_plus[y] = c0 * g.psi0[y] + c1 * g.psi1[y];
    g.psi_minus[y] = -c0 * g.psi0[y] + c1 * g.psi1[y];
  }
  return g;
}

std::vector<double> index_marginal(const StateVector& state) {
  const QubitLayout& L = state.layout();
  const std::uint64_t block = L.data_dim() << L.ancilla_qubits();
  std::vector<double> p(L.index_dim(), 0.0);
  auto amps = state.amplitudes();
  for (std::uint64_t j = 0; j < L.index_dim(); ++j) {
    CompensatedSum s;
    for (std::uint64_t r = 0; r < block; ++r) s.add(std::norm(amps[j * block + r]));
    p[j] = s.value();
  }
  return p;
}

MeasurementRecord measure_index(const StateVector& state, Rng& rng) {
  std::vector<double> p = index_marginal(state);
  // Round-off residue on analytically impossible outcomes is not sampled.
  for (double& x : p) {
    if (x < 1e-15) x = 0.0;
  }
  const double u = rng.uniform() * std::accumulate(p.begin(), p.end(), 0.0);
  std::uint64_t chosen = p.size();
  double cdf = 0.0;
  for (std::uint64_t j = 0; j < p.size(); ++j) {
    if (p[j] <= 0.0) continue;
    cdf += p[j];
    chosen = j;
    if (u < cdf) break;
  }
  if (chosen == p.size()) throw std::logic_error("measure_index: state has zero norm");

  const QubitLayout& L = state.layout();
  const std::uint64_t block = L.data_dim() << L.ancilla_qubits();
  std::vector<Complex> collapsed(L.dim(), Complex(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(p[chosen]);
  auto amps = state.amplitudes();
  for (std::uint64_t r = 0; r < block; ++r) {
    collapsed[chosen * block + r] = amps[chosen * block + r] * scale;
  }
  return MeasurementRecord{chosen, p[chosen], StateVector::from_amplitudes(L, std::move(collapsed))};
}

QsRun run_qs(const BooleanFunction& f, long long M, std::optional<std::uint64_t> seed) {
  const QubitLayout layout = QubitLayout::for_problem(f.n(), M);
  StateVector state = StateVector::zero(layout);
  apply_primitive(state, Primitive::kQft);
  apply_primitive(state, Primitive::kWalshHadamard);
  const std::int64_t queries = apply_lambda(state, f);
  apply_primitive(state, Primitive::kQftInverse);

  std::vector<double> marginal = index_marginal(state);
  std::optional<MeasurementRecord> record;
  std::optional<double> output;
  if (seed) {
    Rng rng(*seed);
    record = measure_index(state, rng);
    output = output_value(static_cast<long long>(record->outcome), M);
  }
  return QsRun{layout,  std::move(state), std::move(marginal), queries,
               layout.total_qubits(), std::move(record), output};
}

}  // namespace qsum
