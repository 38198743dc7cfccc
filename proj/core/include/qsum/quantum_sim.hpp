#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsum/boolean_function.hpp"
#include "qsum/rng.hpp"

namespace qsum {

using Complex = std::complex<double>;

/// Register sizes for one run: an m-qubit index register above an n-qubit
/// data register, with an optional single ancilla qubit in the lowest bit.
///
/// Basis index of |j>|y>|i> is ((j * 2^n + y) * 2^ancilla) + i.
struct QubitLayout {
  unsigned n = 0;
  unsigned m = 0;
  long long M = 1;
  bool ancilla = false;

  /// m = ceil(log2 M); m = 0 for M = 1. Throws std::invalid_argument if M < 1.
  static QubitLayout for_problem(unsigned n, long long M, bool ancilla = false);

  /// Throws std::invalid_argument unless 1 <= M <= 2^m.
  void validate() const;

  std::uint64_t data_dim() const { return std::uint64_t{1} << n; }
  std::uint64_t index_dim() const { return std::uint64_t{1} << m; }
  unsigned ancilla_qubits() const { return ancilla ? 1U : 0U; }
  unsigned total_qubits() const { return n + m + ancilla_qubits(); }
  std::uint64_t dim() const { return std::uint64_t{1} << total_qubits(); }
  std::uint64_t basis_index(std::uint64_t j, std::uint64_t y, std::uint64_t i = 0) const {
    return (((j << n) | y) << ancilla_qubits()) | i;
  }
};

class StateVector {
 public:
  /// |0>|0> (and |0> on the ancilla).
  static StateVector zero(const QubitLayout& layout);
  static StateVector basis(const QubitLayout& layout, std::uint64_t index);
  /// Throws std::invalid_argument if the length does not match the layout.
  static StateVector from_amplitudes(const QubitLayout& layout, std::vector<Complex> amplitudes);

  const QubitLayout& layout() const { return layout_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex& operator[](std::uint64_t i) { return amplitudes_[i]; }
  const Complex& operator[](std::uint64_t i) const { return amplitudes_[i]; }

  double norm_squared() const;
  /// Euclidean distance to another state of the same layout.
  double distance(const StateVector& other) const;

 private:
  StateVector(QubitLayout layout, std::vector<Complex> amplitudes)
      : layout_(layout), amplitudes_(std::move(amplitudes)) {}

  QubitLayout layout_;
  std::vector<Complex> amplitudes_;
};

enum class Primitive {
  kS0,             // data register: |0> -> -|0>, identity elsewhere
  kWalshHadamard,  // data register: W_N
  kQft,            // index register: F_M on the first M slices, identity above
  kQftInverse,     // index register: F_M^-1 on the first M slices
  kQuery,          // data register: |y> -> (-1)^f(y) |y>
};

/// Applies a primitive in place. kQuery throws std::invalid_argument here
/// since it needs f.
void apply_primitive(StateVector& state, Primitive which);
void apply_primitive(StateVector& state, Primitive which, const BooleanFunction& f);

/// Bit-flip oracle |y>|i> -> |y>|i xor f(y)> on the ancilla. Throws
/// std::invalid_argument if the layout has no ancilla.
void apply_standard_query(StateVector& state, const BooleanFunction& f);

/// Q_f = -W S0 W S_f on the data register.
void apply_grover(StateVector& state, const BooleanFunction& f);

/// Controlled powers |j>|y> -> |j> Q_f^j |y> for every j < 2^m. Returns the
/// query count M - 1 charged to the algorithm.
std::int64_t apply_lambda(StateVector& state, const BooleanFunction& f);

/// Eigen-decomposition of Q_f restricted to span{|psi0>, |psi1>}.
struct GroverSpectrum {
  double theta = 0.0;
  Complex lambda_plus;
  Complex lambda_minus;
  /// Action on the basis (|psi0>, |psi1>): column c is the image of |psi_c>.
  std::array<std::array<double, 2>, 2> subspace_matrix{};
};

/// Throws std::invalid_argument unless 0 <= a <= 1. For a in {0, 1} both
/// eigenvalues equal (-1)^a.
GroverSpectrum grover_spectrum(const Mean& a);
GroverSpectrum grover_spectrum(double a);

/// Data-register vectors tied to Q_f: |psi> = W|0>, its projections
/// |psi0>, |psi1> onto f = 0 / f = 1, and the eigenvectors |psi+>, |psi->
/// (degenerate convention |psi+> = i^(1-a) sqrt(2) |psi>, |psi-> = 0 for a in {0,1}).
struct GroverVectors {
  std::vector<Complex> psi;
  std::vector<Complex> psi0;
  std::vector<Complex> psi1;
  std::vector<Complex> psi_plus;
  std::vector<Complex> psi_minus;
};

GroverVectors grover_vectors(const BooleanFunction& f);

struct MeasurementRecord {
  std::uint64_t outcome = 0;
  double probability = 0.0;
  StateVector collapsed;
};

/// Marginal distribution of the index register (length 2^m).
std::vector<double> index_marginal(const StateVector& state);

/// Measures with {|j><j| (x) I}. Zero-probability outcomes are never drawn.
MeasurementRecord measure_index(const StateVector& state, Rng& rng);

struct QsRun {
  QubitLayout layout;
  StateVector final_state;
  /// Probability of every index outcome j < 2^m.
  std::vector<double> marginal;
  std::int64_t query_count = 0;
  unsigned qubit_count = 0;
  std::optional<MeasurementRecord> measurement;
  /// sin^2(pi j / M) for the measured j, when a measurement was taken.
  std::optional<double> output;
};

/// Runs the summation algorithm at gate level: F_M (x) W, Lambda(Q_f),
/// F_M^-1 (x) I, then (if a seed is given) one measurement.
QsRun run_qs(const BooleanFunction& f, long long M, std::optional<std::uint64_t> seed = {});

}  // namespace qsum
