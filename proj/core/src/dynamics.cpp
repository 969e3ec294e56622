#include "assignlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace assignlab {

ComplexVector vectorize(const ComplexMatrix& x) {
  ComplexVector v(x.size());
  for (Eigen::Index j = 0; j < x.rows(); ++j)
    for (Eigen::Index k = 0; k < x.cols(); ++k) v(j * x.cols() + k) = x(j, k);
  return v;
}

ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index d) {
  if (v.size() != d * d) throw DimensionError("unvectorize: length is not d^2");
  ComplexMatrix x(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) x(j, k) = v(j * d + k);
  return x;
}

HermitianOperator evolve(const Assignment& a, const UnitaryOperator& u,
                         const HermitianOperator& eta) {
  if (u.dim() != a.dim_s() * a.dim_e()) {
    throw DimensionError("evolve: unitary does not act on S (x) E");
  }
  const ComplexMatrix rho = a.apply(eta).matrix();
  const ComplexMatrix out = u.matrix() * rho * u.matrix().adjoint();
  return HermitianOperator(partial_trace(out, a.dim_s(), a.dim_e(), Subsystem::E),
                           kCpTolerance);
}

Superoperator induced_map(const Assignment& a, const UnitaryOperator& u,
                          std::string provenance) {
  if (u.dim() != a.dim_s() * a.dim_e()) {
    throw DimensionError("induced_map: unitary does not act on S (x) E");
  }
  const Eigen::Index d = a.dim_s();
  Superoperator m{d, ComplexMatrix::Zero(d * d, d * d), std::move(provenance)};
  if (m.provenance.empty()) m.provenance = a.name();
  const Complex i_unit(0.0, 1.0);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(j, k) = 1.0;
      const HermitianOperator h(ComplexMatrix(0.5 * (e + e.adjoint())));
      const HermitianOperator kk(ComplexMatrix((e - e.adjoint()) / (2.0 * i_unit)));
      const ComplexMatrix out =
          evolve(a, u, h).matrix() + i_unit * evolve(a, u, kk).matrix();
      m.mat.col(j * d + k) = vectorize(out);
    }
  }
  return m;
}

Superoperator identity_map(Eigen::Index d) {
  return {d, ComplexMatrix::Identity(d * d, d * d), "identity"};
}

ComplexMatrix apply_map_matrix(const Superoperator& m, const ComplexMatrix& x) {
  if (x.rows() != m.d || x.cols() != m.d) {
    throw DimensionError("apply_map: input dimension differs from the map's");
  }
  return unvectorize(m.mat * vectorize(x), m.d);
}

HermitianOperator apply_map(const Superoperator& m, const HermitianOperator& eta) {
  return HermitianOperator(apply_map_matrix(m, eta.matrix()), kCpTolerance);
}

ChoiMatrix choi(const Superoperator& m) {
  const Eigen::Index d = m.d;
  ComplexMatrix c(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          c(j * d + a, k * d + b) = m.mat(a * d + b, j * d + k);
  HermitianOperator h(c, kCpTolerance);
  RealVector spectrum = eigvals_hermitian(h);
  return {std::move(h), std::move(spectrum)};
}

CPReport cp_certificate(const Superoperator& m, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("cp_certificate: tol must be > 0");
  const ChoiMatrix c = choi(m);
  CPReport r;
  r.lambda_min_choi = c.spectrum(0);
  r.is_cp = r.lambda_min_choi >= -tolerance;
  const ComplexMatrix input_marginal =
      partial_trace(c.matrix.matrix(), m.d, m.d, Subsystem::E);
  r.is_tp = max_abs(input_marginal - identity(m.d)) <= tolerance;
  return r;
}

UnitaryOperator replay_unitary(Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(d, rng);
}

WitnessSearch search_non_cp_witness(const Assignment& a,
                                    std::uint64_t master_seed, int draws,
                                    double threshold) {
  WitnessSearch s;
  s.threshold = threshold;
  s.best_lambda_min = std::numeric_limits<double>::infinity();
  const Eigen::Index d = a.dim_s() * a.dim_e();
  for (int k = 0; k < draws; ++k) {
    const auto index = static_cast<std::uint64_t>(k);
    const std::uint64_t seed = stream_seed(master_seed, index);
    const Superoperator m = induced_map(a, replay_unitary(d, seed));
    const double lmin = choi(m).spectrum(0);
    ++s.draws;
    if (lmin < s.best_lambda_min) {
      s.best_lambda_min = lmin;
      s.best_index = index;
      s.best_seed = seed;
    }
    if (!s.first_index && lmin < threshold) {
      s.first_index = index;
      s.first_seed = seed;
    }
  }
  return s;
}

namespace {

Table1Row classify(const Assignment& a, std::string correlations, int samples,
                   Rng& rng) {
  Table1Row row;
  row.correlations = std::move(correlations);
  row.family = a.name();
  row.linearity_defect = linearity_defect(a, samples, rng);
  row.linear = row.linearity_defect <= 1e-9;

  for (const auto& p : a.structural_probes())
    row.max_consistency_defect =
        std::max(row.max_consistency_defect, consistency_defect(a, p.state));
  for (int k = 0; k < samples; ++k)
    row.max_consistency_defect = std::max(
        row.max_consistency_defect, consistency_defect(a, random_density(a.dim_s(), rng)));
  row.consistent = row.max_consistency_defect <= 1e-10;

  const PositivityReport pos = positivity_certificate(a, samples, rng);
  row.min_eigenvalue = pos.min_eigenvalue;
  row.positive = pos.positive();
  row.witness = pos.witness_label;
  return row;
}

}  // namespace

Table1Report experiment_table1(std::uint64_t seed, int samples) {
  const ProjectorBasis basis = qubit_axis_basis();
  Table1Report report;

  Rng setup = make_stream(seed, 0);
  const LinearAssignment product =
      make_product_assignment(basis, random_density(2, setup));
  const ZeroDiscordAssignment classical(
      OrthogonalProjectorSet::computational(2),
      {random_density(2, setup).op(), random_density(2, setup).op()});
  const LinearAssignment xi = make_xi_assignment(basis);

  Rng r1 = make_stream(seed, 1);
  Rng r2 = make_stream(seed, 2);
  Rng r3 = make_stream(seed, 3);
  report.rows[0] = classify(product, "none", samples, r1);
  report.rows[1] = classify(classical, "classical", samples, r2);
  report.rows[2] = classify(xi, "quantum", samples, r3);

  const auto& r = report.rows;
  report.matches_reference =
      r[0].linear && r[0].consistent && r[0].positive &&
      r[1].linear && !r[1].consistent && r[1].positive &&
      r[2].linear && r[2].consistent && !r[2].positive;
  return report;
}

}  // namespace assignlab
