#include "assignlab/operator_core.hpp"

#include <cmath>
#include <numbers>

namespace assignlab {

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 over (master, index)
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t index) {
  return Rng(stream_seed(master_seed, index));
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

DensityOperator random_density(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  const ComplexMatrix w = g * g.adjoint();
  return DensityOperator(ComplexMatrix(w / w.trace().real()));
}

UnitaryOperator random_unitary(Eigen::Index d, Rng& rng) {
  const Eigen::MatrixXcd z = ginibre(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  const Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  ComplexMatrix u(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    u.col(j) = q.col(j) * phase;
  }
  return UnitaryOperator(u);
}

DensityOperator random_pure_state(Eigen::Index d, Rng& rng) {
  ComplexVector psi = ginibre(d, 1, rng).col(0);
  psi /= psi.norm();
  return DensityOperator(ket_projector(psi));
}

HermitianOperator random_hermitian(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return HermitianOperator(ComplexMatrix(0.5 * (g + g.adjoint())));
}

BlochVector random_bloch_vector(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const double x = u(rng), y = u(rng), z = u(rng);
    if (x * x + y * y + z * z <= 1.0) return BlochVector(x, y, z);
  }
}

}  // namespace assignlab
