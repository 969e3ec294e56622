#include "assignlab/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace assignlab {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows()
       << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvariantError(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

// --- HermitianOperator ------------------------------------------------------

HermitianOperator::HermitianOperator(const ComplexMatrix& m, double tolerance) {
  require_square(m, "HermitianOperator");
  require_finite(m, "HermitianOperator");
  const double defect = hermiticity_defect(m);
  if (defect > tolerance) {
    std::ostringstream os;
    os << "HermitianOperator: hermiticity defect " << defect
       << " exceeds tolerance " << tolerance;
    throw InvariantError(os.str());
  }
  mat_ = 0.5 * (m + m.adjoint());
}

HermitianOperator operator+(const HermitianOperator& a,
                            const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("HermitianOperator +: dims");
  return HermitianOperator(a.mat_ + b.mat_, HermitianOperator::Trusted{});
}

HermitianOperator operator-(const HermitianOperator& a,
                            const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("HermitianOperator -: dims");
  return HermitianOperator(a.mat_ - b.mat_, HermitianOperator::Trusted{});
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.mat_, HermitianOperator::Trusted{});
}

// --- DensityOperator --------------------------------------------------------

DensityOperator::DensityOperator(const HermitianOperator& op) : op_(op) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > tol::kUnitTrace) {
    std::ostringstream os;
    os << "DensityOperator: trace " << tr << " is not 1";
    throw InvariantError(os.str());
  }
  const double lmin = min_eigenvalue(op_);
  if (lmin < -tol::kPsd) {
    std::ostringstream os;
    os << "DensityOperator: negative eigenvalue " << lmin;
    throw InvariantError(os.str());
  }
}

DensityOperator DensityOperator::mix(const DensityOperator& a,
                                     const DensityOperator& b, double t) {
  return DensityOperator((1.0 - t) * a.op() + t * b.op());
}

// --- UnitaryOperator --------------------------------------------------------

UnitaryOperator::UnitaryOperator(const ComplexMatrix& m) : mat_(m) {
  require_square(m, "UnitaryOperator");
  require_finite(m, "UnitaryOperator");
  const ComplexMatrix residual = m.adjoint() * m - identity(m.rows());
  if (max_abs(residual) > tol::kUnitarity) {
    throw InvariantError("UnitaryOperator: U^dagger U deviates from identity");
  }
}

// --- BlochVector ------------------------------------------------------------

BlochVector::BlochVector(double x, double y, double z) : a1(x), a2(y), a3(z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw InvariantError("BlochVector: non-finite component");
  }
  if (x * x + y * y + z * z > 1.0 + tol::kBloch) {
    throw InvariantError("BlochVector: outside the unit ball");
  }
}

// --- elementary operators ---------------------------------------------------

ComplexMatrix identity(Eigen::Index d) {
  return ComplexMatrix::Identity(d, d);
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix ket_projector(const ComplexVector& psi) {
  return psi * psi.adjoint();
}

HermitianOperator maximally_mixed(Eigen::Index d) {
  return HermitianOperator(identity(d) / static_cast<double>(d));
}

const std::array<DensityOperator, 6>& qubit_states() {
  static const std::array<DensityOperator, 6> states = [] {
    const ComplexMatrix id = identity(2);
    auto half = [&](const ComplexMatrix& s) {
      return DensityOperator(ComplexMatrix(0.5 * (id + s)));
    };
    return std::array<DensityOperator, 6>{
        half(pauli_x()),  half(pauli_y()),  half(pauli_z()),
        half(-pauli_x()), half(-pauli_y()), half(-pauli_z())};
  }();
  return states;
}

const DensityOperator& axis_state(int k) {
  if (k < 1 || k > 6) throw std::out_of_range("axis_state: index must be 1..6");
  return qubit_states()[static_cast<std::size_t>(k - 1)];
}

DensityOperator bloch_state(const BlochVector& a) {
  const ComplexMatrix m =
      0.5 * (identity(2) + a.a1 * pauli_x() + a.a2 * pauli_y() +
             a.a3 * pauli_z());
  return DensityOperator(m);
}

// --- algebra ----------------------------------------------------------------

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator tensor(const HermitianOperator& a,
                         const HermitianOperator& b) {
  return HermitianOperator(tensor(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& x, Eigen::Index dS,
                            Eigen::Index dE, Subsystem traced) {
  if (dS < 1 || dE < 1 || x.rows() != dS * dE || x.cols() != dS * dE) {
    std::ostringstream os;
    os << "partial_trace: operator is " << x.rows() << "x" << x.cols()
       << " but dS*dE = " << dS * dE;
    throw DimensionError(os.str());
  }
  if (traced == Subsystem::E) {
    ComplexMatrix out = ComplexMatrix::Zero(dS, dS);
    for (Eigen::Index s = 0; s < dS; ++s)
      for (Eigen::Index t = 0; t < dS; ++t)
        out(s, t) = x.block(s * dE, t * dE, dE, dE).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dE, dE);
  for (Eigen::Index s = 0; s < dS; ++s) out += x.block(s * dE, s * dE, dE, dE);
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& x, Eigen::Index dS,
                                Eigen::Index dE, Subsystem traced) {
  return HermitianOperator(partial_trace(x.matrix(), dS, dE, traced));
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: operand shapes differ");
  }
  // Tr[a^dagger b] = sum_ij conj(a_ij) b_ij
  return a.conjugate().cwiseProduct(b).sum();
}

RealVector eigvals_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(h.matrix()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigvals_hermitian: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const HermitianOperator& h) {
  return eigvals_hermitian(h)(0);
}

double trace_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  if (hermiticity_defect(x) == 0.0) {
    return eigvals_hermitian(HermitianOperator(x)).cwiseAbs().sum();
  }
  const Eigen::MatrixXcd dense = x;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues().sum();
}

double max_abs(const ComplexMatrix& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(x - x.adjoint());
}

// --- projector bases ----------------------------------------------------------

ProjectorBasis::ProjectorBasis(std::vector<DensityOperator> projectors)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw DimensionError("ProjectorBasis: empty");
  dim_ = projectors_.front().dim();
  const auto n = static_cast<Eigen::Index>(projectors_.size());
  if (n != dim_ * dim_) {
    std::ostringstream os;
    os << "ProjectorBasis: need " << dim_ * dim_ << " projectors for d=" << dim_
       << ", got " << n;
    throw DimensionError(os.str());
  }
  for (const auto& p : projectors_) {
    if (p.dim() != dim_) throw DimensionError("ProjectorBasis: mixed dims");
    if (max_abs(p.matrix() * p.matrix() - p.matrix()) > tol::kIdempotent) {
      throw InvariantError("ProjectorBasis: element is not idempotent");
    }
  }

  gram_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      gram_(i, j) = hs_inner(projectors_[static_cast<std::size_t>(i)].matrix(),
                             projectors_[static_cast<std::size_t>(j)].matrix())
                        .real();

  Eigen::JacobiSVD<RealMatrix> svd(gram_);
  min_singular_ = svd.singularValues().minCoeff();
  if (min_singular_ < tol::kGramSingular) {
    std::ostringstream os;
    os << "ProjectorBasis: Gram matrix is singular (smallest singular value "
       << min_singular_ << ")";
    throw InvariantError(os.str());
  }

  const RealMatrix inv = gram_.inverse();
  dual_.reserve(projectors_.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix d = ComplexMatrix::Zero(dim_, dim_);
    for (Eigen::Index j = 0; j < n; ++j)
      d += inv(i, j) * projectors_[static_cast<std::size_t>(j)].matrix();
    dual_.emplace_back(d);
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = hs_inner(dual_[static_cast<std::size_t>(i)].matrix(),
                                projectors_[static_cast<std::size_t>(j)].matrix())
                           .real();
      if (std::abs(v - (i == j ? 1.0 : 0.0)) > tol::kDualFrame) {
        throw InvariantError("ProjectorBasis: dual frame is inaccurate");
      }
    }
  }
}

ProjectorBasis canonical_basis(int d) {
  if (d < 2) throw DimensionError("canonical_basis: d must be >= 2");
  const double r = 1.0 / std::numbers::sqrt2;
  std::vector<DensityOperator> ps;
  ps.reserve(static_cast<std::size_t>(d * d));
  for (int j = 0; j < d; ++j) {
    ComplexVector v = ComplexVector::Zero(d);
    v(j) = 1.0;
    ps.emplace_back(ket_projector(v));
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexVector plus = ComplexVector::Zero(d);
      plus(j) = r;
      plus(k) = r;
      ps.emplace_back(ket_projector(plus));
      ComplexVector iplus = ComplexVector::Zero(d);
      iplus(j) = r;
      iplus(k) = Complex(0.0, r);
      ps.emplace_back(ket_projector(iplus));
    }
  }
  return ProjectorBasis(std::move(ps));
}

ProjectorBasis qubit_axis_basis() {
  return ProjectorBasis(
      {axis_state(1), axis_state(2), axis_state(3), axis_state(4)});
}

Coefficients decompose(const HermitianOperator& h, const ProjectorBasis& basis) {
  if (h.dim() != basis.dim()) {
    throw DimensionError("decompose: operator and basis dimensions differ");
  }
  Coefficients q(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex c = hs_inner(basis.dual_frame()[i].matrix(), h.matrix());
    if (std::abs(c.imag()) > tol::kImagResidue) {
      throw InvariantError("decompose: coefficient has imaginary residue");
    }
    q(static_cast<Eigen::Index>(i)) = c.real();
  }
  return q;
}

HermitianOperator recompose(const Coefficients& q, const ProjectorBasis& basis) {
  if (static_cast<std::size_t>(q.size()) != basis.size()) {
    throw DimensionError("recompose: coefficient count differs from basis size");
  }
  ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    m += q(static_cast<Eigen::Index>(i)) * basis.projector(i).matrix();
  return HermitianOperator(m);
}

Coefficients bloch_coeffs(const BlochVector& a) {
  Coefficients q(4);
  q << 0.5 * (1.0 + a.a1 - a.a2 - a.a3), a.a2, a.a3,
      0.5 * (1.0 - a.a1 - a.a2 - a.a3);
  return q;
}

}  // namespace assignlab
