#pragma once

// Dense-matrix simulation of the permutation channel on (C^d)^{\otimes N}:
// permutation operators, covariant POVMs, symmetrization, pretty-good
// measurement and the explicit N = 3, d = 2 construction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "permcode/coding.hpp"
#include "permcode/errors.hpp"

namespace permcode::qsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxTensorDimension = 4096;
inline constexpr int kMaxGramBoxes = 7;
inline constexpr double kClipThreshold = 1e-12;

// ---------------------------------------------------------------------------
// Permutations of {0, ..., n-1}; perm[k] is the image of k.

using Permutation = std::vector<int>;

inline Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// (a o b)(k) = a(b(k)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = a[static_cast<std::size_t>(b[k])];
  return out;
}

inline Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[static_cast<std::size_t>(p[k])] = static_cast<int>(k);
  return out;
}

/// All of S_n in lexicographic order; index 0 is the identity.
class SymmetricGroup {
public:
  explicit SymmetricGroup(int n) : n_(n) {
    if (n < 1 || n > 10) throw CapacityError("symmetric group simulation supports 1 <= n <= 10");
    Permutation p = identity_permutation(n);
    do elements_.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  int degree() const noexcept { return n_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const Permutation& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }

  /// Lexicographic rank (Lehmer code).
  std::size_t index_of(const Permutation& p) const {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (p[j] < p[i]) ++smaller;
      rank = rank * (p.size() - i) + smaller;
    }
    return rank;
  }

private:
  int n_;
  std::vector<Permutation> elements_;
};

// ---------------------------------------------------------------------------
// Tensor space and permutation operators.

inline std::size_t tensor_dimension(int n, int d) {
  if (n < 1 || d < 1) throw DomainError("n and d must be >= 1");
  std::size_t dim = 1;
  for (int k = 0; k < n; ++k) {
    dim *= static_cast<std::size_t>(d);
    if (dim > kMaxTensorDimension)
      throw CapacityError("d^N exceeds the dense simulation cap " + std::to_string(kMaxTensorDimension));
  }
  return dim;
}

/// Basis index permutation for Gamma(sigma): the factor in slot k moves to
/// slot sigma(k). Slot 0 is the most significant digit. With this convention
/// Gamma(a) Gamma(b) = Gamma(a o b).
inline std::vector<std::size_t> gamma_index_map(const Permutation& perm, int d) {
  const int n = static_cast<int>(perm.size());
  const std::size_t dim = tensor_dimension(n, d);
  std::vector<std::size_t> map(dim);
  std::vector<int> digits(static_cast<std::size_t>(n));
  std::vector<int> moved(static_cast<std::size_t>(n));
  for (std::size_t index = 0; index < dim; ++index) {
    std::size_t rest = index;
    for (int k = n - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    for (int k = 0; k < n; ++k) moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = digits[static_cast<std::size_t>(k)];
    std::size_t target = 0;
    for (int k = 0; k < n; ++k) target = target * static_cast<std::size_t>(d) + static_cast<std::size_t>(moved[static_cast<std::size_t>(k)]);
    map[index] = target;
  }
  return map;
}

struct PermutationOperator {
  Permutation perm;
  Matrix matrix;
};

inline PermutationOperator build_gamma(const Permutation& perm, int d) {
  const auto map = gamma_index_map(perm, d);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(map.size()), static_cast<Eigen::Index>(map.size()));
  for (std::size_t src = 0; src < map.size(); ++src)
    m(static_cast<Eigen::Index>(map[src]), static_cast<Eigen::Index>(src)) = 1.0;
  return {perm, std::move(m)};
}

inline Vector apply_gamma(const std::vector<std::size_t>& map, const Vector& v) {
  Vector out(v.size());
  for (std::size_t src = 0; src < map.size(); ++src)
    out(static_cast<Eigen::Index>(map[src])) = v(static_cast<Eigen::Index>(src));
  return out;
}

/// Gamma(sigma) for every sigma of the group, in group order.
inline std::vector<Matrix> all_gammas(const SymmetricGroup& group, int d) {
  std::vector<Matrix> out;
  out.reserve(group.order());
  for (const auto& p : group.elements()) out.push_back(build_gamma(p, d).matrix);
  return out;
}

// ---------------------------------------------------------------------------
// Linear-algebra helpers.

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Square root of a PSD Hermitian matrix, clipping eigenvalues below kClipThreshold.
inline Matrix psd_sqrt(const Matrix& hermitian, double negative_tolerance) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  Eigen::VectorXd values = solver.eigenvalues();
  if (values.minCoeff() < -negative_tolerance)
    throw DomainError("matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(values.minCoeff()) + ")");
  for (auto& v : values) v = v < kClipThreshold ? 0.0 : std::sqrt(v);
  return solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Pseudo-inverse square root on the support, with the rank of the support.
inline std::pair<Matrix, Eigen::Index> psd_inverse_sqrt(const Matrix& hermitian, double relative_cutoff = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  Eigen::VectorXd values = solver.eigenvalues();
  const double cutoff = relative_cutoff * std::max(1.0, values.cwiseAbs().maxCoeff());
  Eigen::Index rank = 0;
  for (auto& v : values) {
    if (v > cutoff) {
      v = 1.0 / std::sqrt(v);
      ++rank;
    } else {
      v = 0.0;
    }
  }
  return {solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().adjoint(), rank};
}

// ---------------------------------------------------------------------------
// States and POVMs.

class SignalState {
public:
  SignalState() = default;

  /// Normalizes the given amplitudes; rejects zero or non-finite vectors.
  explicit SignalState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (!amplitudes_.allFinite()) throw DomainError("signal amplitudes must be finite");
    const double norm = amplitudes_.norm();
    if (!(norm > 0.0)) throw DomainError("signal state must be nonzero");
    amplitudes_ /= norm;
  }

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  Eigen::Index dimension() const noexcept { return amplitudes_.size(); }

private:
  Vector amplitudes_;
};

/// Covariant POVM: E_sigma = Gamma(sigma) E_eps Gamma(sigma)^dagger, plus an
/// operator completing the elements to the identity outside their span.
struct CovariantPovm {
  int n = 0;
  int d = 0;
  Matrix seed_operator;
  Matrix completion;

  std::vector<Matrix> elements() const {
    const SymmetricGroup group(n);
    std::vector<Matrix> out;
    out.reserve(group.order());
    for (const auto& p : group.elements()) {
      const Matrix gamma = build_gamma(p, d).matrix;
      out.push_back(gamma * seed_operator * gamma.adjoint());
    }
    return out;
  }
};

inline double completeness_residual(const std::vector<Matrix>& elements, const Matrix& completion) {
  Matrix sum = completion;
  for (const auto& e : elements) sum += e;
  return max_abs(sum - Matrix::Identity(sum.rows(), sum.cols()));
}

inline double min_element_eigenvalue(const std::vector<Matrix>& elements, const Matrix& completion) {
  double lowest = min_eigenvalue(completion);
  for (const auto& e : elements) lowest = std::min(lowest, min_eigenvalue(e));
  return lowest;
}

/// max_sigma || E_sigma - Gamma(sigma) E_eps Gamma(sigma)^dagger ||_max.
inline double covariance_residual(const std::vector<Matrix>& elements, int n, int d) {
  const SymmetricGroup group(n);
  if (elements.size() != group.order()) throw DomainError("expected one element per permutation");
  double worst = 0.0;
  for (std::size_t i = 0; i < group.order(); ++i) {
    const Matrix gamma = build_gamma(group[i], d).matrix;
    worst = std::max(worst, max_abs(elements[i] - gamma * elements[0] * gamma.adjoint()));
  }
  return worst;
}

/// E'_tau = (1/N!) sum_sigma Gamma(sigma)^dagger E_{sigma o tau} Gamma(sigma), for every tau.
inline std::vector<Matrix> symmetrize_elements(const std::vector<Matrix>& raw, int n, int d) {
  const SymmetricGroup group(n);
  if (raw.size() != group.order()) throw DomainError("expected one raw element per permutation");
  const auto dim = static_cast<Eigen::Index>(tensor_dimension(n, d));
  for (const auto& e : raw)
    if (e.rows() != dim || e.cols() != dim) throw DomainError("raw element has the wrong dimension");
  const auto gammas = all_gammas(group, d);
  std::vector<Matrix> out(group.order(), Matrix::Zero(dim, dim));
  for (std::size_t t = 0; t < group.order(); ++t) {
    for (std::size_t s = 0; s < group.order(); ++s) {
      const std::size_t target = group.index_of(compose(group[s], group[t]));
      out[t] += gammas[s].adjoint() * raw[target] * gammas[s];
    }
    out[t] /= static_cast<double>(group.order());
  }
  return out;
}

/// Symmetrizes a POVM whose elements are indexed by permutations (group order).
inline CovariantPovm symmetrize_povm(const std::vector<Matrix>& raw, int n, int d) {
  const auto dim = static_cast<Eigen::Index>(tensor_dimension(n, d));
  for (const auto& e : raw)
    if (e.rows() == dim && min_eigenvalue(e) < -1e-9) throw DomainError("raw POVM element is not PSD");
  const auto elements = symmetrize_elements(raw, n, d);
  const Matrix zero = Matrix::Zero(dim, dim);
  double residual = 0.0;
  {
    Matrix sum = zero;
    for (const auto& e : raw) sum += e;
    residual = max_abs(sum - Matrix::Identity(dim, dim));
  }
  if (residual > 1e-10) throw DomainError("raw POVM elements do not sum to the identity");
  return CovariantPovm{.n = n, .d = d, .seed_operator = elements[0], .completion = zero};
}

/// (1/N!) sum_sigma <Psi| Gamma(sigma)^dagger E_sigma Gamma(sigma) |Psi>.
inline double success_probability(const SignalState& signal, const std::vector<Matrix>& elements, int n,
                                  int d) {
  const SymmetricGroup group(n);
  const auto dim = static_cast<Eigen::Index>(tensor_dimension(n, d));
  if (signal.dimension() != dim) throw DomainError("signal dimension does not match d^N");
  if (elements.size() != group.order()) throw DomainError("expected one POVM element per permutation");
  Complex total = 0.0;
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (elements[i].rows() != dim) throw DomainError("POVM element dimension does not match d^N");
    const Vector moved = apply_gamma(gamma_index_map(group[i], d), signal.amplitudes());
    total += moved.dot(elements[i] * moved);
  }
  total /= static_cast<double>(group.order());
  ensure_invariant(std::abs(total.imag()) <= 1e-10, "success probability has an imaginary part");
  return total.real();
}

inline double success_probability(const SignalState& signal, const CovariantPovm& povm) {
  return success_probability(signal, povm.elements(), povm.n, povm.d);
}

/// Columns Gamma(sigma)|Psi> in group order.
inline Matrix orbit_matrix(const Vector& state, const SymmetricGroup& group, int d) {
  Matrix orbit(state.size(), static_cast<Eigen::Index>(group.order()));
  for (std::size_t i = 0; i < group.order(); ++i)
    orbit.col(static_cast<Eigen::Index>(i)) = apply_gamma(gamma_index_map(group[i], d), state);
  return orbit;
}

/// Pretty-good-measurement success for the equiprobable ensemble
/// {Gamma(sigma)|Psi>}: (1/N!) sum_sigma (sqrt G)_{sigma sigma}^2.
inline double pgm_success(const SignalState& signal, int n, int d) {
  if (n > kMaxGramBoxes) throw CapacityError("pgm_success supports N <= " + std::to_string(kMaxGramBoxes));
  const auto dim = static_cast<Eigen::Index>(tensor_dimension(n, d));
  if (signal.dimension() != dim) throw DomainError("signal dimension does not match d^N");
  const SymmetricGroup group(n);
  const Matrix orbit = orbit_matrix(signal.amplitudes(), group, d);
  const Matrix gram = orbit.adjoint() * orbit;
  const Matrix root = psd_sqrt(gram, 1e-10);
  double total = 0.0;
  for (Eigen::Index i = 0; i < root.rows(); ++i) total += std::norm(root(i, i));
  return total / static_cast<double>(group.order());
}

/// Signal state and covariant POVM generated from an arbitrary seed vector v:
/// with S = sum_sigma Gamma(sigma) v v^dagger Gamma(sigma)^dagger, the vector
/// Phi = S^{-1/2} v gives elements summing to the projector onto W = supp S,
/// and the success probability is dim W / N!.
struct OrbitConstruction {
  Eigen::Index dim_w = 0;
  SignalState signal;
  CovariantPovm povm;
  double phi_norm_squared = 0.0;
};

inline OrbitConstruction orbit_construction(const Vector& seed, int n, int d) {
  const auto dim = static_cast<Eigen::Index>(tensor_dimension(n, d));
  if (seed.size() != dim) throw DomainError("seed dimension does not match d^N");
  const SymmetricGroup group(n);
  const Matrix orbit = orbit_matrix(seed, group, d);
  const Matrix frame = orbit * orbit.adjoint();
  auto [inv_sqrt, rank] = psd_inverse_sqrt(frame);
  const Vector phi = inv_sqrt * seed;
  OrbitConstruction out;
  out.dim_w = rank;
  out.signal = SignalState(phi);
  out.phi_norm_squared = phi.squaredNorm();
  const Matrix projector_w = inv_sqrt * frame * inv_sqrt;
  out.povm = CovariantPovm{.n = n,
                           .d = d,
                           .seed_operator = phi * phi.adjoint(),
                           .completion = Matrix::Identity(dim, dim) - projector_w};
  return out;
}

// ---------------------------------------------------------------------------
// Random test objects.

inline Vector random_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (auto& x : v) x = Complex(normal(rng), normal(rng));
  return v;
}

inline SignalState random_signal_state(int n, int d, std::mt19937_64& rng) {
  return SignalState(random_vector(static_cast<Eigen::Index>(tensor_dimension(n, d)), rng));
}

/// A generic full-rank POVM with one element per permutation:
/// E_sigma = S^{-1/2} A_sigma S^{-1/2} with A_sigma random PSD and S = sum A.
inline std::vector<Matrix> random_povm(int n, int d, std::mt19937_64& rng) {
  const SymmetricGroup group(n);
  const auto dim = static_cast<Eigen::Index>(tensor_dimension(n, d));
  std::vector<Matrix> raw;
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < group.order(); ++i) {
    Matrix g(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) g.col(c) = random_vector(dim, rng);
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  const Matrix inv_sqrt = psd_inverse_sqrt(sum).first;
  for (auto& e : raw) {
    e = inv_sqrt * e * inv_sqrt;
    e = 0.5 * (e + e.adjoint());
  }
  return raw;
}

// ---------------------------------------------------------------------------
// The explicit N = 3, d = 2 example.

/// Spin up is digit 0, spin down is digit 1, slot 0 is the first box.
inline std::size_t spin_index(std::initializer_list<int> spins) {
  std::size_t index = 0;
  for (int s : spins) index = index * 2 + static_cast<std::size_t>(s);
  return index;
}

inline constexpr int kUp = 0;
inline constexpr int kDown = 1;

/// Basis of (C^2)^{\otimes 3} adapted to S_3: four symmetric vectors spanning
/// one-dimensional irreps and two copies |b, a> (b, a in {1, 2}) of the
/// two-dimensional irrep.
struct IrrepBasisN3 {
  Vector up3;        // |uuu>
  Vector sym_one;    // (|udd> + |dud> + |ddu>) / sqrt 3
  Vector sym_two;    // (|uud> + |udu> + |duu>) / sqrt 3
  Vector down3;      // |ddd>
  Vector copy1[2];   // |1,1>, |1,2>
  Vector copy2[2];   // |2,1>, |2,2>

  /// Basis vectors as columns, in the order above.
  Matrix columns() const {
    Matrix m(8, 8);
    m << up3, sym_one, sym_two, down3, copy1[0], copy1[1], copy2[0], copy2[1];
    return m;
  }
};

inline Complex cube_root_of_unity() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

/// Builds the basis with |1,1> = (|udd> + w|dud> + conj(w)|ddu>)/sqrt 3,
/// |1,2> its complex conjugate, and |2,a> the spin flip of |1,a>.
inline IrrepBasisN3 n3_irrep_basis(Complex omega = cube_root_of_unity()) {
  const double s = 1.0 / std::sqrt(3.0);
  auto basis_vector = [] { return Vector(Vector::Zero(8)); };
  IrrepBasisN3 b;
  b.up3 = basis_vector();
  b.up3(static_cast<Eigen::Index>(spin_index({kUp, kUp, kUp}))) = 1.0;
  b.down3 = basis_vector();
  b.down3(static_cast<Eigen::Index>(spin_index({kDown, kDown, kDown}))) = 1.0;

  const std::size_t one_up[3] = {spin_index({kUp, kDown, kDown}), spin_index({kDown, kUp, kDown}),
                                 spin_index({kDown, kDown, kUp})};
  const std::size_t one_down[3] = {spin_index({kDown, kUp, kUp}), spin_index({kUp, kDown, kUp}),
                                   spin_index({kUp, kUp, kDown})};
  const Complex coeff[3] = {1.0, omega, std::conj(omega)};

  b.sym_one = basis_vector();
  b.sym_two = basis_vector();
  for (auto& v : b.copy1) v = basis_vector();
  for (auto& v : b.copy2) v = basis_vector();
  for (int k = 0; k < 3; ++k) {
    const auto up_k = static_cast<Eigen::Index>(one_up[k]);
    const auto down_k = static_cast<Eigen::Index>(one_down[k]);
    b.sym_one(up_k) = s;
    b.sym_two(down_k) = s;
    b.copy1[0](up_k) = s * coeff[k];
    b.copy1[1](up_k) = s * std::conj(coeff[k]);
    b.copy2[0](down_k) = s * coeff[k];
    b.copy2[1](down_k) = s * std::conj(coeff[k]);
  }
  return b;
}

/// Which vector of the second copy carries the sqrt(2/5) amplitude.
enum class SecondCopyLabel { Two, One };

inline SignalState n3_signal_state(const IrrepBasisN3& basis, SecondCopyLabel label = SecondCopyLabel::Two) {
  const Vector& second = label == SecondCopyLabel::Two ? basis.copy2[1] : basis.copy2[0];
  return SignalState(std::sqrt(1.0 / 5.0) * basis.up3 + std::sqrt(2.0 / 5.0) * basis.copy1[0] +
                     std::sqrt(2.0 / 5.0) * second);
}

struct N3Example {
  IrrepBasisN3 basis;
  SignalState signal;
  Vector phi;  // E_eps = |phi><phi|
  CovariantPovm povm;
};

/// Signal state and POVM for N = 3, d = 2. The seed vector has components
/// sqrt(D/N!) on |uuu>, |1,1> and |2,2>; the six elements span a
/// five-dimensional W and the projector onto its complement completes them.
inline N3Example build_n3_example() {
  N3Example ex;
  ex.basis = n3_irrep_basis();
  ex.signal = n3_signal_state(ex.basis);
  ex.phi = std::sqrt(1.0 / 6.0) * ex.basis.up3 + std::sqrt(2.0 / 6.0) * ex.basis.copy1[0] +
           std::sqrt(2.0 / 6.0) * ex.basis.copy2[1];
  Matrix w_projector = ex.basis.up3 * ex.basis.up3.adjoint();
  for (const auto& v : ex.basis.copy1) w_projector += v * v.adjoint();
  for (const auto& v : ex.basis.copy2) w_projector += v * v.adjoint();
  ex.povm = CovariantPovm{.n = 3,
                          .d = 2,
                          .seed_operator = ex.phi * ex.phi.adjoint(),
                          .completion = Matrix::Identity(8, 8) - w_projector};
  const double residual = completeness_residual(ex.povm.elements(), ex.povm.completion);
  ensure_invariant(residual <= 1e-10, "N=3 POVM is not complete (residual " + std::to_string(residual) + ")");
  return ex;
}

// ---------------------------------------------------------------------------
// Verification reports.

struct CheckResult {
  std::string check_name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

inline CheckResult make_check(std::string name, double residual, double tolerance, std::string note = {}) {
  return {std::move(name), residual, tolerance, residual <= tolerance, std::move(note)};
}

/// Matrix elements <b,a|Gamma|b,a'> of one irrep copy given its basis columns.
inline Matrix block(const Matrix& basis, const Matrix& gamma) { return basis.adjoint() * gamma * basis; }

/// Largest deviation of span(basis) from being Gamma-invariant.
inline double invariance_residual(const Matrix& basis, const std::vector<Matrix>& gammas) {
  double worst = 0.0;
  for (const auto& g : gammas) worst = std::max(worst, max_abs(g * basis - basis * block(basis, g)));
  return worst;
}

/// Rebases `copy` so its matrix elements coincide with those of `reference`,
/// using the Schur intertwiner sum_sigma R(sigma) X C(sigma)^dagger.
inline Matrix align_copy(const Matrix& reference, const Matrix& copy, const std::vector<Matrix>& gammas) {
  const Eigen::Index dim = reference.cols();
  for (Eigen::Index probe = 0; probe < dim * dim; ++probe) {
    Matrix x = Matrix::Zero(dim, dim);
    x(probe / dim, probe % dim) = 1.0;
    Matrix t = Matrix::Zero(dim, dim);
    for (const auto& g : gammas) t += block(reference, g) * x * block(copy, g).adjoint();
    const double scale = std::sqrt((t * t.adjoint())(0, 0).real());
    if (scale < 1e-8) continue;
    const Matrix u = t / scale;
    return copy * u.adjoint();
  }
  throw InvariantError("copies are not equivalent representations");
}

/// Verifies the orthogonality relations for the N = 3 irrep basis, the
/// basis alignment of the two equivalent copies, and the norm conditions on
/// the components of the POVM seed vector.
inline std::vector<CheckResult> orthogonality_check_n3(const IrrepBasisN3& basis, const Vector& phi) {
  constexpr double tol = 1e-12;
  const SymmetricGroup group(3);
  const auto gammas = all_gammas(group, 2);
  const double order = static_cast<double>(group.order());

  // irreps[rho] = list of copies, each copy a matrix of basis columns.
  auto column = [](const Vector& v) { return Matrix(v); };
  auto pair = [](const Vector& a, const Vector& b) {
    Matrix m(a.size(), 2);
    m << a, b;
    return m;
  };
  std::vector<std::vector<Matrix>> irreps = {
      {column(basis.up3), column(basis.sym_one), column(basis.sym_two), column(basis.down3)},
      {pair(basis.copy1[0], basis.copy1[1]), pair(basis.copy2[0], basis.copy2[1])}};

  std::vector<CheckResult> report;
  report.push_back(make_check("basis_orthonormal",
                              max_abs(basis.columns().adjoint() * basis.columns() - Matrix::Identity(8, 8)), tol));
  double invariance = 0.0;
  for (const auto& copies : irreps)
    for (const auto& c : copies) invariance = std::max(invariance, invariance_residual(c, gammas));
  report.push_back(make_check("irrep_spans_invariant", invariance, tol));

  // Equivalent copies must have identical matrix elements.
  double misalignment = 0.0;
  for (auto& copies : irreps)
    for (std::size_t b = 1; b < copies.size(); ++b)
      for (const auto& g : gammas)
        misalignment = std::max(misalignment, max_abs(block(copies[b], g) - block(copies[0], g)));
  std::string note = "printed basis already aligned";
  if (misalignment > tol) {
    for (auto& copies : irreps)
      for (std::size_t b = 1; b < copies.size(); ++b) copies[b] = align_copy(copies[0], copies[b], gammas);
    note = "copies rebased by a unitary change of basis (residual before " + std::to_string(misalignment) + ")";
    misalignment = 0.0;
    for (auto& copies : irreps)
      for (std::size_t b = 1; b < copies.size(); ++b)
        for (const auto& g : gammas)
          misalignment = std::max(misalignment, max_abs(block(copies[b], g) - block(copies[0], g)));
  }
  report.push_back(make_check("basis_alignment", misalignment, tol, note));

  // Flatten copies to (rho, copy) pairs with their representation matrices.
  struct Copy {
    std::size_t rho;
    std::vector<Matrix> rep;
  };
  std::vector<Copy> copies;
  for (std::size_t rho = 0; rho < irreps.size(); ++rho)
    for (const auto& c : irreps[rho]) {
      Copy entry{rho, {}};
      for (const auto& g : gammas) entry.rep.push_back(block(c, g));
      copies.push_back(std::move(entry));
    }

  double cross = 0.0;
  double same = 0.0;
  for (const auto& x : copies)
    for (const auto& y : copies) {
      const Eigen::Index dx = x.rep[0].rows();
      const Eigen::Index dy = y.rep[0].rows();
      for (Eigen::Index alpha = 0; alpha < dx; ++alpha)
        for (Eigen::Index beta = 0; beta < dx; ++beta)
          for (Eigen::Index gamma = 0; gamma < dy; ++gamma)
            for (Eigen::Index kappa = 0; kappa < dy; ++kappa) {
              Complex sum = 0.0;
              for (std::size_t s = 0; s < gammas.size(); ++s)
                sum += std::conj(x.rep[s](alpha, beta)) * y.rep[s](gamma, kappa);
              if (x.rho != y.rho) {
                cross = std::max(cross, std::abs(sum));
              } else {
                const double expected = (gamma == alpha && beta == kappa) ? 1.0 / static_cast<double>(dx) : 0.0;
                same = std::max(same, std::abs(sum / order - expected));
              }
            }
    }
  report.push_back(make_check("orthogonality_distinct_irreps", cross, tol));
  report.push_back(make_check("orthogonality_equivalent_irreps", same, tol));

  // Components C_{rho,b,a} of phi: Gram over copies must be diag(D/N!) on W, zero elsewhere.
  double component = 0.0;
  double copy_norm = 0.0;
  for (const auto& rho_copies : irreps) {
    const double dim_rho = static_cast<double>(rho_copies[0].cols());
    for (std::size_t b = 0; b < rho_copies.size(); ++b) {
      const Vector cb = rho_copies[b].adjoint() * phi;
      const bool in_w = cb.squaredNorm() > 1e-9;
      for (std::size_t bp = 0; bp < rho_copies.size(); ++bp) {
        const Vector cbp = rho_copies[bp].adjoint() * phi;
        const Complex inner = cbp.dot(cb);
        const double expected = (b == bp && in_w) ? dim_rho / order : 0.0;
        component = std::max(component, std::abs(inner - expected));
      }
    }
  }
  for (const auto& c : irreps[1]) {
    const Vector cb = c.adjoint() * phi;
    copy_norm = std::max(copy_norm, std::abs(cb.squaredNorm() - 2.0 / order));
  }
  report.push_back(make_check("phi_component_orthogonality", component, tol));
  report.push_back(make_check("phi_two_dim_copy_norms", copy_norm, tol));
  return report;
}

/// Every check for the N = 3 construction.
inline std::vector<CheckResult> verify_n3_suite() {
  const auto ex = build_n3_example();
  const SymmetricGroup group(3);
  std::vector<CheckResult> report;

  double overlap = 0.0;
  for (std::size_t i = 1; i < group.order(); ++i) {
    const Vector moved = apply_gamma(gamma_index_map(group[i], 2), ex.signal.amplitudes());
    overlap = std::max(overlap, std::abs(std::abs(ex.signal.amplitudes().dot(moved)) - 0.2));
  }
  report.push_back(make_check("overlap_one_fifth", overlap, 1e-12));
  report.push_back(make_check("signal_normalized", std::abs(ex.signal.norm() - 1.0), 1e-12));

  const auto elements = ex.povm.elements();
  report.push_back(make_check("povm_complete", completeness_residual(elements, ex.povm.completion), 1e-12));
  report.push_back(make_check("povm_psd", std::max(0.0, -min_element_eigenvalue(elements, ex.povm.completion)), 1e-12));
  report.push_back(make_check("povm_covariant", covariance_residual(elements, 3, 2), 1e-12));

  const double success = success_probability(ex.signal, ex.povm);
  report.push_back(make_check("povm_success_five_sixths", std::abs(success - 5.0 / 6.0), 1e-10));
  const double pgm = pgm_success(ex.signal, 3, 2);
  report.push_back(make_check("pgm_matches_povm", std::abs(pgm - success), 1e-8));

  for (auto& check : orthogonality_check_n3(ex.basis, ex.phi)) report.push_back(std::move(check));
  return report;
}

/// Symmetrizes `count` random POVMs at (N, d) and checks covariance and the
/// preserved success probability on a random signal state.
inline std::vector<CheckResult> verify_symmetrization_suite(int n, int d, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double covariance = 0.0;
  double preserved = 0.0;
  double complete = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    const auto raw = random_povm(n, d, rng);
    const auto signal = random_signal_state(n, d, rng);
    const auto symmetrized = symmetrize_elements(raw, n, d);
    covariance = std::max(covariance, covariance_residual(symmetrized, n, d));
    const Matrix zero = Matrix::Zero(raw[0].rows(), raw[0].cols());
    complete = std::max(complete, completeness_residual(symmetrized, zero));
    preserved = std::max(preserved, std::abs(success_probability(signal, symmetrized, n, d) -
                                             success_probability(signal, raw, n, d)));
  }
  return {make_check("symmetrized_covariant", covariance, 1e-12),
          make_check("symmetrized_complete", complete, 1e-10),
          make_check("symmetrized_success_preserved", preserved, 1e-12)};
}

// ---------------------------------------------------------------------------
// Classical channel.

/// Balanced coloring, uniformly random channel permutation, and a decoder
/// that guesses uniformly among permutations consistent with the received
/// colors.
inline coding::Estimate classical_channel_mc(int n, int d, std::uint64_t trials, std::uint64_t seed) {
  if (n < 1 || d < 1) throw DomainError("n and d must be >= 1");
  if (trials < 1) throw DomainError("trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> color(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) color[static_cast<std::size_t>(k)] = k % d;

  Permutation sigma = identity_permutation(n);
  Permutation guess(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> boxes(static_cast<std::size_t>(d));
  std::vector<std::vector<int>> positions(static_cast<std::size_t>(d));
  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::shuffle(sigma.begin(), sigma.end(), rng);  // box k arrives at position sigma[k]
    const Permutation arrived_from = inverse(sigma);
    for (auto& b : boxes) b.clear();
    for (auto& p : positions) p.clear();
    for (int k = 0; k < n; ++k) boxes[static_cast<std::size_t>(color[static_cast<std::size_t>(k)])].push_back(k);
    for (int p = 0; p < n; ++p)
      positions[static_cast<std::size_t>(color[static_cast<std::size_t>(arrived_from[static_cast<std::size_t>(p)])])].push_back(p);
    for (std::size_t c = 0; c < boxes.size(); ++c) {
      std::shuffle(positions[c].begin(), positions[c].end(), rng);
      for (std::size_t i = 0; i < boxes[c].size(); ++i)
        guess[static_cast<std::size_t>(boxes[c][i])] = positions[c][i];
    }
    if (guess == sigma) ++wins;
  }
  const double p = static_cast<double>(wins) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

}  // namespace permcode::qsim
