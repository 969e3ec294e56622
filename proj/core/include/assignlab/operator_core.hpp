// Dense complex-matrix foundation for assignment-map experiments.
//
// Conventions used throughout the library:
//   * Bipartite operators on S (x) E use the composite index s * dE + e.
//   * Kronecker products order the system factor first.
//   * All tolerances live in assignlab::tol and are absolute.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace assignlab {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Real coefficients q_i of an operator over a ProjectorBasis.
using Coefficients = RealVector;

namespace tol {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kUnitTrace = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kIdempotent = 1e-10;
inline constexpr double kGramSingular = 1e-10;
inline constexpr double kDualFrame = 1e-9;
inline constexpr double kImagResidue = 1e-10;
inline constexpr double kBloch = 1e-12;
inline constexpr double kOrthogonality = 1e-10;
}  // namespace tol

/// Operand shapes do not fit the requested operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value violates the invariant of the type it is being turned into.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Square complex matrix equal to its adjoint. The stored matrix is the exact
/// Hermitian part of the input, so later arithmetic never sees the residue.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m,
                             double tolerance = tol::kHermiticity);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }
  double trace() const { return mat_.trace().real(); }

  friend HermitianOperator operator+(const HermitianOperator& a,
                                     const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a,
                                     const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);

 private:
  struct Trusted {};
  HermitianOperator(ComplexMatrix m, Trusted) : mat_(std::move(m)) {}

  ComplexMatrix mat_;
};

/// Hermitian, unit trace, positive semidefinite.
class DensityOperator {
 public:
  explicit DensityOperator(const HermitianOperator& op);
  explicit DensityOperator(const ComplexMatrix& m)
      : DensityOperator(HermitianOperator(m)) {}

  const HermitianOperator& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  Eigen::Index dim() const noexcept { return op_.dim(); }

  operator const HermitianOperator&() const noexcept { return op_; }

  /// Convex combination (1 - t) * a + t * b.
  static DensityOperator mix(const DensityOperator& a, const DensityOperator& b,
                             double t);

 private:
  HermitianOperator op_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

struct BlochVector {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  BlochVector() = default;
  BlochVector(double x, double y, double z);
};

enum class Subsystem { S, E };

// --- elementary operators -------------------------------------------------

ComplexMatrix identity(Eigen::Index d);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// |psi><psi| for a (not necessarily normalized) ket.
ComplexMatrix ket_projector(const ComplexVector& psi);
HermitianOperator maximally_mixed(Eigen::Index d);

/// The six qubit axis states, 1-based: 1 = +x, 2 = +y, 3 = +z, 4 = -x,
/// 5 = -y, 6 = -z.
const DensityOperator& axis_state(int k);
const std::array<DensityOperator, 6>& qubit_states();

/// (I + a . sigma) / 2.
DensityOperator bloch_state(const BlochVector& a);

// --- algebra ----------------------------------------------------------------

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Traces out `traced` from an operator on S (x) E of shape (dS*dE)^2.
ComplexMatrix partial_trace(const ComplexMatrix& x, Eigen::Index dS,
                            Eigen::Index dE, Subsystem traced);
HermitianOperator partial_trace(const HermitianOperator& x, Eigen::Index dS,
                                Eigen::Index dE, Subsystem traced);

/// Tr[a^dagger b].
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spectrum in ascending order.
RealVector eigvals_hermitian(const HermitianOperator& h);
double min_eigenvalue(const HermitianOperator& h);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& x);
/// Largest absolute entry.
double max_abs(const ComplexMatrix& x);
double hermiticity_defect(const ComplexMatrix& x);

// --- projector bases --------------------------------------------------------

/// d^2 linearly independent rank-1 projectors spanning the Hermitian
/// operators on C^d, with the dual frame D_i satisfying Tr[D_i P_j] = delta_ij.
class ProjectorBasis {
 public:
  /// Validates idempotence, unit trace, count d^2 and Gram conditioning.
  explicit ProjectorBasis(std::vector<DensityOperator> projectors);

  Eigen::Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  const std::vector<DensityOperator>& projectors() const noexcept {
    return projectors_;
  }
  const DensityOperator& projector(std::size_t i) const {
    return projectors_.at(i);
  }
  const RealMatrix& gram() const noexcept { return gram_; }
  const std::vector<HermitianOperator>& dual_frame() const noexcept {
    return dual_;
  }
  double min_singular_value() const noexcept { return min_singular_; }

 private:
  Eigen::Index dim_ = 0;
  std::vector<DensityOperator> projectors_;
  RealMatrix gram_;
  std::vector<HermitianOperator> dual_;
  double min_singular_ = 0.0;
};

/// |j><j| for j < d, then for each j < k the projectors onto
/// (|j> + |k>)/sqrt2 and (|j> + i|k>)/sqrt2.
ProjectorBasis canonical_basis(int d);

/// The qubit basis {eta_1, eta_2, eta_3, eta_4} = {+x, +y, +z, -x}.
ProjectorBasis qubit_axis_basis();

/// q_i = Tr[D_i eta]. Throws InvariantError if any q_i has an imaginary
/// part above tol::kImagResidue.
Coefficients decompose(const HermitianOperator& h, const ProjectorBasis& basis);

/// sum_i q_i P_i.
HermitianOperator recompose(const Coefficients& q, const ProjectorBasis& basis);

/// Closed-form coefficients of (I + a . sigma)/2 over qubit_axis_basis().
Coefficients bloch_coeffs(const BlochVector& a);

// --- sampling ---------------------------------------------------------------

using Rng = std::mt19937_64;

/// Independent generator for sub-stream `index` of a master seed.
Rng make_stream(std::uint64_t master_seed, std::uint64_t index);
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Hilbert-Schmidt measure: G G^dagger / Tr[G G^dagger].
DensityOperator random_density(Eigen::Index d, Rng& rng);
/// Haar measure via QR of a Ginibre matrix with phase-corrected R diagonal.
UnitaryOperator random_unitary(Eigen::Index d, Rng& rng);
/// Haar-random pure state |psi><psi|.
DensityOperator random_pure_state(Eigen::Index d, Rng& rng);
/// (G + G^dagger)/2 for a Ginibre G; not normalized.
HermitianOperator random_hermitian(Eigen::Index d, Rng& rng);
/// Uniform in the unit ball.
BlochVector random_bloch_vector(Rng& rng);

}  // namespace assignlab
