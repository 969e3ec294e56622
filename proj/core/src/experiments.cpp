#include "assignlab/experiments.hpp"

#include "assignlab/assignment_maps.hpp"
#include "assignlab/compatibility.hpp"
#include "assignlab/dynamics.hpp"
#include "internal/assignment_backdoor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

namespace assignlab {

namespace {

// Fixed thresholds shared with the acceptance suite.
constexpr double kStructural = 1e-10;
constexpr double kExact = 1e-12;
constexpr double kSpectral = 1e-9;

class ReportBuilder {
 public:
  explicit ReportBuilder(ExperimentReport& r) : r_(r) {}

  void metric(std::string name, double value) {
    r_.metrics.push_back({std::move(name), value});
  }
  void flag(std::string name, bool value) { metric(std::move(name), value ? 1.0 : 0.0); }
  void witness(std::string description, std::optional<std::uint64_t> seed = {},
               std::vector<double> coefficients = {}) {
    r_.witnesses.push_back({std::move(description), seed, std::move(coefficients)});
  }

 private:
  ExperimentReport& r_;
};

std::vector<double> to_std(const Coefficients& q) {
  return {q.data(), q.data() + q.size()};
}

/// Real parts of the row-major entries followed by imaginary parts.
std::vector<double> flatten(const ComplexMatrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index i = 0; i < m.size(); ++i) out.push_back(m.data()[i].real());
  for (Eigen::Index i = 0; i < m.size(); ++i) out.push_back(m.data()[i].imag());
  return out;
}

ProjectorBasis system_basis(int d) {
  return d == 2 ? qubit_axis_basis() : canonical_basis(d);
}

/// Unit-trace Hermitian with smallest eigenvalue `negative` and the rest
/// spread evenly, rotated by a Haar unitary.
HermitianOperator tau_with_negative_eigenvalue(Eigen::Index d, double negative,
                                               Rng& rng) {
  ComplexMatrix diag = ComplexMatrix::Zero(d, d);
  diag(0, 0) = negative;
  for (Eigen::Index k = 1; k < d; ++k)
    diag(k, k) = (1.0 - negative) / static_cast<double>(d - 1);
  const UnitaryOperator v = random_unitary(d, rng);
  return HermitianOperator(ComplexMatrix(v.matrix() * diag * v.matrix().adjoint()));
}

HermitianOperator random_unit_trace_hermitian(Eigen::Index d, Rng& rng) {
  const HermitianOperator h = random_hermitian(d, rng);
  const double shift = (1.0 - h.trace()) / static_cast<double>(d);
  return h + HermitianOperator(ComplexMatrix(shift * identity(d)));
}

// --- experiments -------------------------------------------------------------

bool run_pechukas(const ExperimentConfig& c, ReportBuilder& out) {
  Rng rng = make_stream(c.seed, 0);
  const Eigen::Index de = c.dim_e;

  const DensityOperator t = random_density(de, rng);
  const double equal_xy = pechukas_constraints(t, t, t, t).max();
  const double equal_xz =
      pechukas_constraints(t, t, t, t, PechukasPlane::XZ).max();
  out.metric("equal_case_max_residual", std::max(equal_xy, equal_xz));

  int violations = 0;
  double min_random = std::numeric_limits<double>::infinity();
  for (int k = 0; k < c.samples; ++k) {
    std::array<HermitianOperator, 4> taus{
        random_density(de, rng).op(), random_density(de, rng).op(),
        random_density(de, rng).op(), random_density(de, rng).op()};
    double spread = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        spread = std::max(spread, trace_norm(taus[i].matrix() - taus[j].matrix()));
    const double res =
        pechukas_constraints(taus[0], taus[1], taus[2], taus[3]).max();
    min_random = std::min(min_random, res);
    if ((res <= kExact) != (spread <= kSpectral)) ++violations;
  }
  out.metric("random_min_residual", min_random);
  out.metric("biconditional_violations", violations);

  ComplexMatrix zero = ComplexMatrix::Zero(de, de);
  zero(0, 0) = 1.0;
  const HermitianOperator ket0(zero);
  const HermitianOperator mixed = maximally_mixed(de);
  const PechukasResiduals ex = pechukas_constraints(ket0, mixed, mixed, mixed);
  out.metric("example_relation_2t1_t2_t5", ex.relations[0]);

  return equal_xy <= kExact && equal_xz <= kExact && violations == 0;
}

bool run_theorem1(const ExperimentConfig& c, ReportBuilder& out) {
  const ProjectorBasis basis = system_basis(c.dim_s);
  Rng setup = make_stream(c.seed, 0);
  Rng probe_equal = make_stream(c.seed, 1);
  Rng probe_distinct = make_stream(c.seed, 2);

  const LinearAssignment equal =
      make_product_assignment(basis, random_density(c.dim_e, setup));
  const Theorem1Verdict ve = theorem1_certificate(equal, c.samples, probe_equal);
  out.metric("equal_lambda_min", ve.positivity.min_eigenvalue);
  out.metric("equal_tau_spread", ve.max_tau_spread);

  std::vector<HermitianOperator> taus;
  for (std::size_t i = 0; i < basis.size(); ++i)
    taus.push_back(random_density(c.dim_e, setup).op());
  while (trace_norm(taus[1].matrix() - taus[0].matrix()) < 0.1)
    taus[1] = random_density(c.dim_e, setup).op();
  const LinearAssignment distinct(basis, taus, "distinct");
  const Theorem1Verdict vd =
      theorem1_certificate(distinct, c.samples, probe_distinct);
  out.metric("distinct_lambda_min", vd.positivity.min_eigenvalue);
  out.metric("distinct_pure_lambda_min", vd.positivity.min_pure_eigenvalue);
  out.metric("distinct_tau_spread", vd.max_tau_spread);
  out.witness("pure probe " + vd.positivity.pure_witness_label +
                  " gives a negative assigned operator",
              std::nullopt, flatten(vd.positivity.pure_witness));

  const bool equal_ok = ve.all_taus_equal && ve.positivity.positive(c.tol) &&
                        ve.biconditional_holds;
  const bool distinct_ok = !vd.all_taus_equal && vd.biconditional_holds &&
                           vd.positivity.min_pure_eigenvalue < kNonCpThreshold;
  return equal_ok && distinct_ok;
}

bool run_theorem2(const ExperimentConfig& c, ReportBuilder& out) {
  Rng rng = make_stream(c.seed, 0);
  const Eigen::Index d = c.dim_s;

  std::vector<HermitianOperator> taus;
  for (Eigen::Index i = 0; i < d; ++i) taus.push_back(random_density(c.dim_e, rng).op());
  const ZeroDiscordAssignment z(OrthogonalProjectorSet::computational(d), taus);

  // (|0> + |1>)/sqrt2, i.e. eta_1 for a qubit.
  ComplexVector plus = ComplexVector::Zero(d);
  plus(0) = plus(1) = 1.0 / std::numbers::sqrt2;
  const DensityOperator eta1(ket_projector(plus));
  const double defect_eta1 = consistency_defect(z, eta1);
  out.metric("defect_eta1", defect_eta1);

  double formula_error = 0.0;
  double max_defect = 0.0;
  for (int k = 0; k < c.samples; ++k) {
    const OrthogonalProjectorSet pis =
        OrthogonalProjectorSet::from_unitary(random_unitary(d, rng));
    std::vector<HermitianOperator> ts;
    for (Eigen::Index i = 0; i < d; ++i) ts.push_back(random_density(c.dim_e, rng).op());
    const ZeroDiscordAssignment zk(pis, ts);
    const DensityOperator eta = random_density(d, rng);
    const double defect = consistency_defect(zk, eta);
    const double predicted = trace_norm(eta.matrix() - pis.dephase(eta).matrix());
    formula_error = std::max(formula_error, std::abs(defect - predicted));
    max_defect = std::max(max_defect, defect);
  }
  out.metric("max_formula_error", formula_error);
  out.metric("max_random_defect", max_defect);

  double diagonal_defect = 0.0;
  for (int k = 0; k < c.samples; ++k) {
    const DensityOperator eta(z.pis().dephase(random_density(d, rng)));
    diagonal_defect = std::max(diagonal_defect, consistency_defect(z, eta));
  }
  out.metric("max_diagonal_defect", diagonal_defect);
  out.witness("eta_1 is not reproduced by the partial trace", std::nullopt,
              flatten(eta1.matrix()));

  return std::abs(defect_eta1 - 1.0) <= kStructural && formula_error <= kStructural &&
         diagonal_defect <= kStructural && max_defect > kStructural;
}

bool run_theorem3(const ExperimentConfig& c, ReportBuilder& out) {
  Rng setup = make_stream(c.seed, 0);
  Rng probes = make_stream(c.seed, 1);
  Rng probes_neg = make_stream(c.seed, 2);
  const Eigen::Index d = c.dim_s;

  const OrthogonalProjectorSet pis =
      OrthogonalProjectorSet::from_unitary(random_unitary(d, setup));
  std::vector<HermitianOperator> taus;
  for (Eigen::Index i = 0; i < d; ++i) taus.push_back(random_density(c.dim_e, setup).op());
  const ZeroDiscordAssignment positive(pis, taus);
  const PositivityReport pos = positivity_certificate(positive, c.samples, probes);
  out.metric("positive_lambda_min", pos.min_eigenvalue);

  constexpr double kInjected = -0.25;
  taus[0] = tau_with_negative_eigenvalue(c.dim_e, kInjected, setup);
  const ZeroDiscordAssignment negative(pis, taus, "zero-discord-negative");
  const PositivityReport neg = positivity_certificate(negative, c.samples, probes_neg);
  out.metric("negative_lambda_min", neg.min_eigenvalue);

  const HermitianOperator witness(neg.witness);
  double min_weight = std::numeric_limits<double>::infinity();
  double block_prediction = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pis.size(); ++i) {
    const double p = hs_inner(pis.projector(i).matrix(), witness.matrix()).real();
    min_weight = std::min(min_weight, p);
    block_prediction = std::min(block_prediction, p * min_eigenvalue(taus[i]));
  }
  out.metric("block_prediction", block_prediction);
  out.metric("block_prediction_error", std::abs(neg.min_eigenvalue - block_prediction));
  out.metric("bound_injected_times_min_weight", kInjected * min_weight);
  out.witness("probe " + neg.witness_label + " exposes the negative tau",
              std::nullopt, flatten(neg.witness));

  return pos.positive(c.tol) && neg.min_eigenvalue < -c.tol &&
         neg.min_eigenvalue <= kInjected * min_weight + kSpectral &&
         std::abs(neg.min_eigenvalue - block_prediction) <= kSpectral;
}

bool run_lemma1(const ExperimentConfig& c, ReportBuilder& out) {
  Rng rng = make_stream(c.seed, 0);
  Rng probes = make_stream(c.seed, 1);
  const ProjectorBasis basis = system_basis(c.dim_s);

  std::vector<HermitianOperator> taus;
  for (std::size_t i = 0; i < basis.size(); ++i)
    taus.push_back(random_density(c.dim_e, rng).op());
  const Lemma1Report positive = lemma1_check(LinearAssignment(basis, taus), c.tol);
  double min_out = std::numeric_limits<double>::infinity();
  for (const auto& e : positive.entries) min_out = std::min(min_out, e.output_min);
  out.metric("positive_taus_min_output", min_out);

  ComplexMatrix bad = ComplexMatrix::Zero(c.dim_e, c.dim_e);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  taus[0] = HermitianOperator(bad);
  const Lemma1Report negative = lemma1_check(LinearAssignment(basis, taus), c.tol);
  out.metric("negative_tau_output_min", negative.entries[0].output_min);

  const LinearAssignment xi = make_xi_assignment(basis);
  const Lemma1Report xi_lemma = lemma1_check(xi, c.tol);
  const PositivityReport xi_pos = positivity_certificate(xi, c.samples, probes);
  out.metric("converse_counterexample_lambda_min", xi_pos.min_eigenvalue);
  out.witness("xi assignment: all taus positive yet " + xi_pos.witness_label +
                  " maps to a negative operator",
              std::nullopt,
              to_std(decompose(HermitianOperator(xi_pos.witness), basis)));

  return positive.holds && min_out >= -c.tol && negative.holds &&
         std::abs(negative.entries[0].output_min + 0.5) <= kSpectral &&
         xi_lemma.all_taus_positive && !xi_pos.positive(c.tol);
}

bool run_appendix(const ExperimentConfig& c, ReportBuilder& out) {
  Rng rng = make_stream(c.seed, 0);
  const ProjectorBasis basis = system_basis(c.dim_s);

  double herm = 0.0;
  double trace = 0.0;
  for (int k = 0; k < c.samples; ++k) {
    std::vector<HermitianOperator> taus;
    for (std::size_t i = 0; i < basis.size(); ++i)
      taus.push_back(random_unit_trace_hermitian(c.dim_e, rng));
    const AuditReport audit =
        hermiticity_trace_audit(LinearAssignment(basis, taus), 4, rng);
    herm = std::max(herm, audit.max_hermiticity_defect);
    trace = std::max(trace, audit.max_trace_defect);
  }
  out.metric("forward_max_hermiticity_defect", herm);
  out.metric("forward_max_trace_defect", trace);

  std::vector<HermitianOperator> taus;
  for (std::size_t i = 0; i < basis.size(); ++i)
    taus.push_back(random_density(c.dim_e, rng).op());
  const LinearAssignment valid(basis, taus);

  ComplexMatrix skew = ComplexMatrix::Zero(c.dim_e, c.dim_e);
  skew(0, 0) = Complex(0.0, 0.1);
  skew(1, 1) = Complex(0.0, -0.1);
  const LinearAssignment non_hermitian =
      detail::AssignmentBackdoor::with_tau(valid, 0, valid.tau(0) + skew);
  const LinearAssignment scaled =
      detail::AssignmentBackdoor::with_tau(valid, 0, 1.1 * valid.tau(0));
  const AuditReport ah = hermiticity_trace_audit(non_hermitian, 0, rng);
  const AuditReport at = hermiticity_trace_audit(scaled, 0, rng);
  out.metric("reverse_hermiticity_defect_P1", ah.projector_hermiticity_defects[0]);
  out.metric("reverse_trace_defect_P1", at.projector_trace_defects[0]);

  return herm <= kStructural && trace <= kStructural &&
         std::abs(ah.projector_hermiticity_defects[0] - 0.2) <= kStructural &&
         std::abs(at.projector_trace_defects[0] - 0.1) <= kStructural;
}

bool run_compat_domain(const ExperimentConfig& c, ReportBuilder& out) {
  const ProjectorBasis basis = system_basis(c.dim_s);
  const LinearAssignment xi = make_xi_assignment(basis);
  const DensityOperator center(maximally_mixed(c.dim_s));

  Rng check_rng = make_stream(c.seed, 0);
  const SimplexDomainReport simplex =
      simplex_domain_check(xi, c.samples, check_rng, c.tol);
  out.metric("simplex_agreement_rate", simplex.agreement_rate());
  out.metric("simplex_max_spectrum_error", simplex.max_spectrum_error);

  Rng volume_rng = make_stream(c.seed, 1);
  const DomainEstimate est = domain_volume(xi, std::max(100, c.samples), volume_rng, c.tol);
  out.metric("fraction", est.fraction);
  out.metric("ci95_low", est.ci95.first);
  out.metric("ci95_high", est.ci95.second);

  bool rays_ok = true;
  auto ray = [&](const std::string& label, const DensityOperator& target,
                 std::optional<double> expected) {
    const RaySection s = boundary_along_ray(xi, center, target, c.tol);
    out.metric("t_star_" + label, s.t_star);
    if (expected && std::abs(s.t_star - *expected) > kBisectionWidth) rays_ok = false;
    for (const auto& p : scan_ray(xi, center, target, 10)) {
      std::array<char, 16> t{};
      std::snprintf(t.data(), t.size(), "%.1f", p.t);
      out.metric("scan_" + label + "_t" + t.data(), p.lambda_min);
    }
  };
  if (c.dim_s == 2) {
    ray("eta1", axis_state(1), 1.0);
    ray("eta5", axis_state(5), 0.0);
  } else {
    ray("P1", basis.projector(0), 1.0);
    ray("P" + std::to_string(c.dim_s + 1), basis.projector(static_cast<std::size_t>(c.dim_s)),
        std::nullopt);
  }

  Rng ray_rng = make_stream(c.seed, 2);
  int broken = 0;
  constexpr int kRays = 100;
  for (int k = 0; k < kRays; ++k) {
    const auto scan = scan_ray(xi, center, random_density(c.dim_s, ray_rng), 1000);
    if (!is_single_interval(scan, c.tol)) ++broken;
  }
  out.metric("non_interval_rays", broken);

  const auto& worst = *std::min_element(
      simplex.probes.begin(), simplex.probes.end(),
      [](const auto& a, const auto& b) { return a.lambda_min < b.lambda_min; });
  out.witness("outside the domain: " + worst.label, std::nullopt, to_std(worst.q));

  // For d > 2 the simplex has small Hilbert-Schmidt measure and a finite
  // sample can miss it entirely; the rays already show it is nonempty.
  return simplex.agreements == simplex.probes.size() &&
         simplex.max_spectrum_error <= kSpectral && rays_ok && broken == 0 &&
         est.fraction < 1.0 && (c.dim_s > 2 || est.fraction > 0.0);
}

bool run_broadcast(const ExperimentConfig& c, ReportBuilder& out) {
  const ProjectorBasis basis = qubit_axis_basis();
  const BroadcastAssignment b(basis);

  const HermitianOperator b5 = b.apply(axis_state(5));
  const RealVector spec = eigvals_hermitian(b5);
  out.metric("min_eig_eta5", spec(0));
  for (Eigen::Index k = 0; k < spec.size(); ++k)
    out.metric("eig_eta5_" + std::to_string(k), spec(k));
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<double, 4> expected{-r, 0.0, r, 1.0};
  double spectrum_error = 0.0;
  for (Eigen::Index k = 0; k < 4; ++k)
    spectrum_error = std::max(spectrum_error,
                              std::abs(spec(k) - expected[static_cast<std::size_t>(k)]));
  out.metric("eta5_spectrum_error", spectrum_error);

  const ComplexMatrix& e5 = axis_state(5).matrix();
  const double marg_e = trace_norm(partial_trace(b5.matrix(), 2, 2, Subsystem::E) - e5);
  const double marg_s = trace_norm(partial_trace(b5.matrix(), 2, 2, Subsystem::S) - e5);
  out.metric("eta5_marginal_defect_E", marg_e);
  out.metric("eta5_marginal_defect_S", marg_s);

  double product_error = 0.0;
  for (int k : {1, 2, 4}) {
    const ComplexMatrix& e = axis_state(k).matrix();
    const double err = max_abs(b.apply(axis_state(k)).matrix() - tensor(e, e));
    out.metric("product_error_eta" + std::to_string(k), err);
    product_error = std::max(product_error, err);
  }

  Rng rng = make_stream(c.seed, 0);
  double random_marginal = 0.0;
  for (int k = 0; k < c.samples; ++k) {
    const DensityOperator eta = random_density(2, rng);
    const ComplexMatrix out_m = b.apply(eta).matrix();
    random_marginal = std::max(
        {random_marginal,
         trace_norm(partial_trace(out_m, 2, 2, Subsystem::E) - eta.matrix()),
         trace_norm(partial_trace(out_m, 2, 2, Subsystem::S) - eta.matrix())});
  }
  out.metric("random_marginal_defect", random_marginal);

  const ZeroDiscordAssignment classical =
      make_classical_broadcast(OrthogonalProjectorSet::computational(2));
  Rng probe_rng = make_stream(c.seed, 1);
  const PositivityReport cpos = positivity_certificate(classical, c.samples, probe_rng);
  out.metric("classical_broadcast_lambda_min", cpos.min_eigenvalue);

  out.witness("B[eta_5] = P1(x)P1 + P4(x)P4 - P2(x)P2", std::nullopt,
              to_std(decompose(axis_state(5), basis)));

  return spectrum_error <= kSpectral && marg_e <= kStructural &&
         marg_s <= kStructural && product_error <= kExact &&
         random_marginal <= kStructural && spec(0) < -c.tol && cpos.positive(c.tol);
}

bool run_dynamics_cp(const ExperimentConfig& c, ReportBuilder& out) {
  const Eigen::Index d = c.dim_s;
  const Eigen::Index de = c.dim_e;
  const int n_unitaries = c.samples;
  const int n_assignments = std::max(1, c.samples / 10);

  Rng assign_rng = make_stream(c.seed, 0);
  double worst_choi = std::numeric_limits<double>::infinity();
  double worst_choi_trace = 0.0;
  bool all_tp = true;
  for (int a = 0; a < n_assignments; ++a) {
    const OrthogonalProjectorSet pis =
        OrthogonalProjectorSet::from_unitary(random_unitary(d, assign_rng));
    std::vector<HermitianOperator> taus;
    for (Eigen::Index i = 0; i < d; ++i) taus.push_back(random_density(de, assign_rng).op());
    const ZeroDiscordAssignment z(pis, taus);
    for (int u = 0; u < n_unitaries; ++u) {
      const UnitaryOperator U = replay_unitary(d * de, stream_seed(c.seed + 1, static_cast<std::uint64_t>(u)));
      const Superoperator m = induced_map(z, U);
      const ChoiMatrix ch = choi(m);
      const CPReport rep = cp_certificate(m);
      worst_choi = std::min(worst_choi, ch.spectrum(0));
      worst_choi_trace = std::max(worst_choi_trace,
                                  std::abs(ch.matrix.trace() - static_cast<double>(d)));
      all_tp = all_tp && rep.is_tp;
    }
  }
  out.metric("classical_min_choi_eigenvalue", worst_choi);
  out.metric("classical_max_choi_trace_error", worst_choi_trace);
  out.flag("classical_all_tp", all_tp);

  const LinearAssignment xi = make_xi_assignment(system_basis(c.dim_s));
  const WitnessSearch search = search_non_cp_witness(xi, c.seed + 2, n_unitaries);
  out.metric("xi_best_choi_eigenvalue", search.best_lambda_min);
  bool replay_ok = false;
  if (search.found()) {
    const UnitaryOperator U = replay_unitary(xi.dim_s() * xi.dim_e(), *search.first_seed);
    const CPReport rep = cp_certificate(induced_map(xi, U));
    replay_ok = rep.lambda_min_choi < kNonCpThreshold;
    out.metric("xi_first_witness_index", static_cast<double>(*search.first_index));
    out.metric("xi_first_witness_choi_eigenvalue", rep.lambda_min_choi);
    out.witness("Haar unitary making the xi-induced map non-CP", *search.first_seed);
  }
  out.witness("most negative Choi eigenvalue for the xi assignment", search.best_seed);

  return worst_choi >= -kCpTolerance && worst_choi_trace <= 1e-8 && all_tp &&
         search.found() && replay_ok;
}

bool run_table1(const ExperimentConfig& c, ReportBuilder& out) {
  const Table1Report t = experiment_table1(c.seed, c.samples);
  for (const auto& row : t.rows) {
    out.flag(row.correlations + ".linear", row.linear);
    out.flag(row.correlations + ".consistent", row.consistent);
    out.flag(row.correlations + ".positive", row.positive);
    out.metric(row.correlations + ".linearity_defect", row.linearity_defect);
    out.metric(row.correlations + ".max_consistency_defect", row.max_consistency_defect);
    out.metric(row.correlations + ".min_eigenvalue", row.min_eigenvalue);
    out.witness(row.correlations + " (" + row.family + "): worst positivity probe " +
                row.witness);
  }
  return t.matches_reference;
}

}  // namespace

ExperimentReport run(const ExperimentConfig& config) {
  config.validate();
  const auto e = config.experiment;
  if ((e == Experiment::Pechukas || e == Experiment::Broadcast || e == Experiment::Table1) &&
      config.dim_s != 2)
    throw UsageError(std::string(to_string(e)) + " is defined for a qubit system (dim-s 2)");
  if ((e == Experiment::Broadcast || e == Experiment::Table1) && config.dim_e != 2)
    throw UsageError(std::string(to_string(e)) + " fixes its own environments (dim-e 2)");
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.experiment = std::string(to_string(config.experiment));
  report.config = config;
  ReportBuilder out(report);

  static const std::array<std::pair<Experiment, bool (*)(const ExperimentConfig&, ReportBuilder&)>, 10>
      dispatch{{
          {Experiment::Pechukas, run_pechukas},
          {Experiment::Theorem1, run_theorem1},
          {Experiment::Theorem2, run_theorem2},
          {Experiment::Theorem3, run_theorem3},
          {Experiment::Lemma1, run_lemma1},
          {Experiment::Appendix, run_appendix},
          {Experiment::CompatDomain, run_compat_domain},
          {Experiment::Broadcast, run_broadcast},
          {Experiment::DynamicsCp, run_dynamics_cp},
          {Experiment::Table1, run_table1},
      }};
  for (const auto& [e, fn] : dispatch) {
    if (e == config.experiment) {
      report.pass = fn(config, out);
      break;
    }
  }

  report.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace assignlab
