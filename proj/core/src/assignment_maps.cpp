#include "assignlab/assignment_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace assignlab {

namespace {

std::vector<Probe> axis_probes() {
  std::vector<Probe> out;
  for (int k = 1; k <= 6; ++k)
    out.push_back({"eta_" + std::to_string(k), axis_state(k), true});
  return out;
}

}  // namespace

// --- LinearAssignment -------------------------------------------------------

LinearAssignment::LinearAssignment(ProjectorBasis basis,
                                   std::vector<HermitianOperator> taus,
                                   std::string name)
    : basis_(std::move(basis)), name_(std::move(name)) {
  if (taus.size() != basis_.size()) {
    std::ostringstream os;
    os << "LinearAssignment: need " << basis_.size() << " environment operators, got "
       << taus.size();
    throw DimensionError(os.str());
  }
  dim_e_ = taus.front().dim();
  taus_.reserve(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i].dim() != dim_e_) {
      throw DimensionError("LinearAssignment: environment operators differ in dimension");
    }
    if (std::abs(taus[i].trace() - 1.0) > tol::kUnitTrace) {
      std::ostringstream os;
      os << "LinearAssignment: tau_" << i + 1 << " has trace " << taus[i].trace();
      throw InvariantError(os.str());
    }
    taus_.push_back(taus[i].matrix());
  }
}

LinearAssignment::LinearAssignment(ProjectorBasis basis,
                                   std::vector<ComplexMatrix> taus,
                                   std::string name, Unchecked)
    : basis_(std::move(basis)), taus_(std::move(taus)), name_(std::move(name)) {
  if (taus_.size() != basis_.size()) {
    throw DimensionError("LinearAssignment: operator count differs from basis size");
  }
  dim_e_ = taus_.front().rows();
}

ComplexMatrix LinearAssignment::apply_matrix(const HermitianOperator& eta) const {
  if (eta.dim() != dim_s()) {
    throw DimensionError("LinearAssignment::apply: input dimension differs from d_S");
  }
  const Coefficients q = decompose(eta, basis_);
  ComplexMatrix out = ComplexMatrix::Zero(dim_s() * dim_e_, dim_s() * dim_e_);
  for (std::size_t i = 0; i < taus_.size(); ++i) {
    const double qi = q(static_cast<Eigen::Index>(i));
    if (qi == 0.0) continue;
    out += qi * tensor(basis_.projector(i).matrix(), taus_[i]);
  }
  return out;
}

HermitianOperator LinearAssignment::apply(const HermitianOperator& eta) const {
  return HermitianOperator(apply_matrix(eta), tol::kPsd);
}

std::vector<Probe> LinearAssignment::structural_probes() const {
  std::vector<Probe> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    out.push_back({"P_" + std::to_string(i + 1), basis_.projector(i), true});
  if (dim_s() == 2) {
    auto axes = axis_probes();
    out.insert(out.end(), axes.begin(), axes.end());
  }
  return out;
}

LinearAssignment make_product_assignment(const ProjectorBasis& basis,
                                         const DensityOperator& environment) {
  return LinearAssignment(
      basis, std::vector<HermitianOperator>(basis.size(), environment.op()),
      "product");
}

LinearAssignment make_xi_assignment(const ProjectorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<HermitianOperator> taus;
  taus.reserve(basis.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix xi = ComplexMatrix::Zero(n, n);
    xi(i, i) = 1.0;
    taus.emplace_back(xi);
  }
  return LinearAssignment(basis, std::move(taus), "xi");
}

// --- OrthogonalProjectorSet -------------------------------------------------

OrthogonalProjectorSet::OrthogonalProjectorSet(
    std::vector<DensityOperator> projectors)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw DimensionError("OrthogonalProjectorSet: empty");
  dim_ = projectors_.front().dim();
  if (static_cast<Eigen::Index>(projectors_.size()) != dim_) {
    throw DimensionError("OrthogonalProjectorSet: need exactly d rank-1 projectors");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const ComplexMatrix& pi = projectors_[i].matrix();
    if (projectors_[i].dim() != dim_) {
      throw DimensionError("OrthogonalProjectorSet: mixed dimensions");
    }
    for (std::size_t j = 0; j < projectors_.size(); ++j) {
      const ComplexMatrix prod = pi * projectors_[j].matrix();
      const double defect = i == j ? max_abs(prod - pi) : max_abs(prod);
      if (defect > tol::kOrthogonality) {
        throw InvariantError("OrthogonalProjectorSet: Pi_i Pi_j != delta_ij Pi_i");
      }
    }
    sum += pi;
  }
  if (max_abs(sum - identity(dim_)) > tol::kOrthogonality) {
    throw InvariantError("OrthogonalProjectorSet: projectors do not sum to I");
  }
}

OrthogonalProjectorSet OrthogonalProjectorSet::from_unitary(
    const UnitaryOperator& u) {
  std::vector<DensityOperator> ps;
  for (Eigen::Index j = 0; j < u.dim(); ++j)
    ps.emplace_back(ket_projector(u.matrix().col(j)));
  return OrthogonalProjectorSet(std::move(ps));
}

OrthogonalProjectorSet OrthogonalProjectorSet::computational(Eigen::Index d) {
  return from_unitary(UnitaryOperator(identity(d)));
}

HermitianOperator OrthogonalProjectorSet::dephase(
    const HermitianOperator& eta) const {
  if (eta.dim() != dim_) throw DimensionError("dephase: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& p : projectors_)
    out += hs_inner(p.matrix(), eta.matrix()).real() * p.matrix();
  return HermitianOperator(out);
}

// --- ZeroDiscordAssignment --------------------------------------------------

ZeroDiscordAssignment::ZeroDiscordAssignment(OrthogonalProjectorSet pis,
                                             std::vector<HermitianOperator> taus,
                                             std::string name)
    : pis_(std::move(pis)), taus_(std::move(taus)), name_(std::move(name)) {
  if (taus_.size() != pis_.size()) {
    throw DimensionError("ZeroDiscordAssignment: need one tau per projector");
  }
  dim_e_ = taus_.front().dim();
  for (std::size_t i = 0; i < taus_.size(); ++i) {
    if (taus_[i].dim() != dim_e_) {
      throw DimensionError("ZeroDiscordAssignment: taus differ in dimension");
    }
    if (std::abs(taus_[i].trace() - 1.0) > tol::kUnitTrace) {
      throw InvariantError("ZeroDiscordAssignment: tau_" + std::to_string(i + 1) +
                           " is not unit trace");
    }
  }
}

HermitianOperator ZeroDiscordAssignment::apply(const HermitianOperator& eta) const {
  if (eta.dim() != dim_s()) {
    throw DimensionError("ZeroDiscordAssignment::apply: input dimension differs from d_S");
  }
  const Eigen::Index n = dim_s() * dim_e_;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < pis_.size(); ++i) {
    const ComplexMatrix& pi = pis_.projector(i).matrix();
    const double p = hs_inner(pi, eta.matrix()).real();
    out += p * tensor(pi, taus_[i].matrix());
  }
  return HermitianOperator(out, tol::kPsd);
}

std::vector<Probe> ZeroDiscordAssignment::structural_probes() const {
  std::vector<Probe> out;
  for (std::size_t i = 0; i < pis_.size(); ++i)
    out.push_back({"Pi_" + std::to_string(i + 1), pis_.projector(i), true});
  if (dim_s() == 2) {
    auto axes = axis_probes();
    out.insert(out.end(), axes.begin(), axes.end());
  }
  out.push_back({"maximally_mixed", DensityOperator(maximally_mixed(dim_s())),
                 false});
  return out;
}

ZeroDiscordAssignment make_classical_broadcast(const OrthogonalProjectorSet& pis) {
  std::vector<HermitianOperator> taus;
  for (const auto& p : pis.projectors()) taus.push_back(p.op());
  return ZeroDiscordAssignment(pis, std::move(taus), "classical-broadcast");
}

// --- BroadcastAssignment ----------------------------------------------------

namespace {
std::vector<HermitianOperator> projectors_as_taus(const ProjectorBasis& basis) {
  std::vector<HermitianOperator> taus;
  for (const auto& p : basis.projectors()) taus.push_back(p.op());
  return taus;
}
}  // namespace

BroadcastAssignment::BroadcastAssignment(const ProjectorBasis& basis)
    : linear_(basis, projectors_as_taus(basis), "broadcast") {}

// --- checks -----------------------------------------------------------------

double consistency_defect(const Assignment& a, const HermitianOperator& eta) {
  const HermitianOperator out = a.apply(eta);
  const ComplexMatrix marginal =
      partial_trace(out.matrix(), a.dim_s(), a.dim_e(), Subsystem::E);
  return trace_norm(marginal - eta.matrix());
}

double linearity_defect(const Assignment& a, int samples, Rng& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const DensityOperator e1 = random_density(a.dim_s(), rng);
    const DensityOperator e2 = random_density(a.dim_s(), rng);
    const double x = coef(rng);
    const HermitianOperator combined = x * e1.op() + (1.0 - x) * e2.op();
    const ComplexMatrix lhs = a.apply(combined).matrix();
    const ComplexMatrix rhs =
        x * a.apply(e1).matrix() + (1.0 - x) * a.apply(e2).matrix();
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

PositivityReport positivity_certificate(const Assignment& a, int samples,
                                        Rng& rng) {
  if (samples < 0) throw std::invalid_argument("positivity_certificate: samples < 0");
  PositivityReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  report.min_pure_eigenvalue = std::numeric_limits<double>::infinity();

  auto visit = [&](const std::string& label, const DensityOperator& eta,
                   bool pure) {
    const double lmin = min_eigenvalue(a.apply(eta));
    ++report.probes;
    if (lmin < report.min_eigenvalue) {
      report.min_eigenvalue = lmin;
      report.witness_label = label;
      report.witness = eta.matrix();
    }
    if (pure && lmin < report.min_pure_eigenvalue) {
      report.min_pure_eigenvalue = lmin;
      report.pure_witness_label = label;
      report.pure_witness = eta.matrix();
    }
  };

  for (const auto& probe : a.structural_probes())
    visit(probe.label, probe.state, probe.pure);
  for (int k = 0; k < samples; ++k) {
    if (k % 2 == 0) {
      visit("random_pure_" + std::to_string(k), random_pure_state(a.dim_s(), rng),
            true);
    } else {
      visit("random_mixed_" + std::to_string(k), random_density(a.dim_s(), rng),
            false);
    }
  }
  return report;
}

Lemma1Report lemma1_check(const LinearAssignment& a, double tolerance) {
  Lemma1Report report;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Lemma1Entry e;
    e.output_min = min_eigenvalue(a.apply(a.basis().projector(i)));
    e.tau_min = min_eigenvalue(HermitianOperator(a.tau(i)));
    if (e.tau_min < -tolerance) {
      report.all_taus_positive = false;
      if (!(e.output_min < -tolerance)) report.holds = false;
    }
    report.entries.push_back(e);
  }
  return report;
}

Theorem1Verdict theorem1_certificate(const LinearAssignment& a, int samples,
                                     Rng& rng) {
  Theorem1Verdict v;
  for (std::size_t i = 1; i < a.size(); ++i)
    v.max_tau_spread = std::max(v.max_tau_spread, trace_norm(a.tau(i) - a.tau(0)));
  v.all_taus_equal = v.max_tau_spread <= kTauEqualityTolerance;
  v.taus_positive = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (min_eigenvalue(HermitianOperator(a.tau(i))) < -tol::kPsd)
      v.taus_positive = false;
  v.positivity = positivity_certificate(a, samples, rng);
  v.positive = v.positivity.positive();
  v.biconditional_holds = v.positive == (v.all_taus_equal && v.taus_positive);
  return v;
}

double PechukasResiduals::max() const {
  double m = mixture_identity;
  for (double r : relations) m = std::max(m, r);
  return m;
}

PechukasResiduals pechukas_constraints(const HermitianOperator& t1,
                                       const HermitianOperator& t2,
                                       const HermitianOperator& t4,
                                       const HermitianOperator& t5,
                                       PechukasPlane plane) {
  const Eigen::Index d = t1.dim();
  if (t2.dim() != d || t4.dim() != d || t5.dim() != d) {
    throw DimensionError("pechukas_constraints: environment operators differ in dimension");
  }
  const bool xy = plane == PechukasPlane::XY;
  const ComplexMatrix& e1 = axis_state(1).matrix();
  const ComplexMatrix& e4 = axis_state(4).matrix();
  const ComplexMatrix& e2 = axis_state(xy ? 2 : 3).matrix();
  const ComplexMatrix& e5 = axis_state(xy ? 5 : 6).matrix();

  PechukasResiduals r;
  const ComplexMatrix lhs =
      0.5 * tensor(e1, t1.matrix()) + 0.5 * tensor(e4, t4.matrix());
  const ComplexMatrix rhs =
      0.5 * tensor(e2, t2.matrix()) + 0.5 * tensor(e5, t5.matrix());
  r.mixture_identity = trace_norm(lhs - rhs);
  r.relations[0] = trace_norm(2.0 * t1.matrix() - t2.matrix() - t5.matrix());
  r.relations[1] = trace_norm(2.0 * t2.matrix() - t1.matrix() - t4.matrix());
  r.relations[2] = trace_norm(2.0 * t4.matrix() - t2.matrix() - t5.matrix());
  r.relations[3] = trace_norm(2.0 * t5.matrix() - t1.matrix() - t4.matrix());
  return r;
}

double antihermitian_trace_norm(const ComplexMatrix& x) {
  return trace_norm(0.5 * (x - x.adjoint()));
}

AuditReport hermiticity_trace_audit(const LinearAssignment& a, int samples,
                                    Rng& rng) {
  AuditReport report;
  auto record = [&](const HermitianOperator& eta) {
    const ComplexMatrix out = a.apply_matrix(eta);
    const double herm = antihermitian_trace_norm(out);
    const double tr = std::abs(out.trace().real() - eta.trace()) +
                      std::abs(out.trace().imag());
    report.max_hermiticity_defect = std::max(report.max_hermiticity_defect, herm);
    report.max_trace_defect = std::max(report.max_trace_defect, tr);
    return std::pair{herm, tr};
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto [herm, tr] = record(a.basis().projector(i));
    report.projector_hermiticity_defects.push_back(herm);
    report.projector_trace_defects.push_back(tr);
  }
  for (int k = 0; k < samples; ++k) record(random_density(a.dim_s(), rng));
  return report;
}

}  // namespace assignlab
