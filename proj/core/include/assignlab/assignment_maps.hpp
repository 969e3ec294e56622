// Assignment maps A : S -> S (x) E and the checks that classify them.
//
// Every family here is linear. What distinguishes them is which of the other
// two natural requirements they keep:
//   consistency   Tr_E A[eta] = eta
//   positivity    A[eta] >= 0 for every state eta
#pragma once

#include "assignlab/operator_core.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace assignlab {

namespace detail {
struct AssignmentBackdoor;
}

/// A state fed to an assignment while probing for negative output.
struct Probe {
  std::string label;
  DensityOperator state;
  bool pure = false;
};

class Assignment {
 public:
  virtual ~Assignment() = default;

  virtual Eigen::Index dim_s() const = 0;
  virtual Eigen::Index dim_e() const = 0;
  /// Acts on any Hermitian operator on S, not only states.
  virtual HermitianOperator apply(const HermitianOperator& eta) const = 0;
  /// States where negativity is most likely to show: basis elements, axis
  /// states for a qubit, and so on.
  virtual std::vector<Probe> structural_probes() const = 0;
  virtual std::string name() const = 0;
};

/// P_i -> P_i (x) tau_i over a fixed projector basis, extended linearly.
class LinearAssignment : public Assignment {
 public:
  /// Requires basis.size() taus, all on the same space, each Hermitian with
  /// unit trace. Positivity of the taus is not required.
  LinearAssignment(ProjectorBasis basis, std::vector<HermitianOperator> taus,
                   std::string name = "linear");

  Eigen::Index dim_s() const override { return basis_.dim(); }
  Eigen::Index dim_e() const override { return dim_e_; }
  HermitianOperator apply(const HermitianOperator& eta) const override;
  std::vector<Probe> structural_probes() const override;
  std::string name() const override { return name_; }

  /// sum_i q_i P_i (x) tau_i without asserting the result is Hermitian.
  ComplexMatrix apply_matrix(const HermitianOperator& eta) const;

  const ProjectorBasis& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return taus_.size(); }
  const ComplexMatrix& tau(std::size_t i) const { return taus_.at(i); }

 private:
  friend struct detail::AssignmentBackdoor;
  struct Unchecked {};
  LinearAssignment(ProjectorBasis basis, std::vector<ComplexMatrix> taus,
                   std::string name, Unchecked);

  ProjectorBasis basis_;
  std::vector<ComplexMatrix> taus_;
  Eigen::Index dim_e_ = 0;
  std::string name_;
};

/// Every tau_i equal to the state T; A[eta] = eta (x) T.
LinearAssignment make_product_assignment(const ProjectorBasis& basis,
                                         const DensityOperator& environment);

/// tau_i = |i><i| on an environment of dimension basis.size().
LinearAssignment make_xi_assignment(const ProjectorBasis& basis);

/// Complete set of mutually orthogonal rank-1 projectors.
class OrthogonalProjectorSet {
 public:
  explicit OrthogonalProjectorSet(std::vector<DensityOperator> projectors);

  /// Projectors onto the columns of u.
  static OrthogonalProjectorSet from_unitary(const UnitaryOperator& u);
  static OrthogonalProjectorSet computational(Eigen::Index d);

  Eigen::Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  const DensityOperator& projector(std::size_t i) const {
    return projectors_.at(i);
  }
  const std::vector<DensityOperator>& projectors() const noexcept {
    return projectors_;
  }

  /// sum_i Tr[eta Pi_i] Pi_i.
  HermitianOperator dephase(const HermitianOperator& eta) const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<DensityOperator> projectors_;
};

/// A[eta] = sum_i Tr[eta Pi_i] Pi_i (x) tau_i. The output always has zero
/// discord; consistency only holds for states diagonal in {Pi_i}.
class ZeroDiscordAssignment : public Assignment {
 public:
  ZeroDiscordAssignment(OrthogonalProjectorSet pis,
                        std::vector<HermitianOperator> taus,
                        std::string name = "zero-discord");

  Eigen::Index dim_s() const override { return pis_.dim(); }
  Eigen::Index dim_e() const override { return dim_e_; }
  HermitianOperator apply(const HermitianOperator& eta) const override;
  std::vector<Probe> structural_probes() const override;
  std::string name() const override { return name_; }

  const OrthogonalProjectorSet& pis() const noexcept { return pis_; }
  const HermitianOperator& tau(std::size_t i) const { return taus_.at(i); }

 private:
  OrthogonalProjectorSet pis_;
  std::vector<HermitianOperator> taus_;
  Eigen::Index dim_e_ = 0;
  std::string name_;
};

/// Broadcasts only the {Pi_i}-diagonal information: tau_i = Pi_i.
ZeroDiscordAssignment make_classical_broadcast(const OrthogonalProjectorSet& pis);

/// B[eta] = sum_i q_i P_i (x) P_i. Both marginals equal eta for every eta,
/// but the output is not positive in general.
class BroadcastAssignment : public Assignment {
 public:
  explicit BroadcastAssignment(const ProjectorBasis& basis);

  Eigen::Index dim_s() const override { return linear_.dim_s(); }
  Eigen::Index dim_e() const override { return linear_.dim_e(); }
  HermitianOperator apply(const HermitianOperator& eta) const override {
    return linear_.apply(eta);
  }
  std::vector<Probe> structural_probes() const override {
    return linear_.structural_probes();
  }
  std::string name() const override { return "broadcast"; }

  const LinearAssignment& linear() const noexcept { return linear_; }

 private:
  LinearAssignment linear_;
};

// --- checks -----------------------------------------------------------------

/// ||Tr_E A[eta] - eta||_1.
double consistency_defect(const Assignment& a, const HermitianOperator& eta);

/// Largest max-norm deviation of A[x eta1 + (1-x) eta2] from the same
/// combination of outputs, over random states and random real x in [-2, 2].
double linearity_defect(const Assignment& a, int samples, Rng& rng);

struct PositivityReport {
  double min_eigenvalue = 0.0;
  std::string witness_label;
  ComplexMatrix witness;
  /// Restricted to pure probes.
  double min_pure_eigenvalue = 0.0;
  std::string pure_witness_label;
  ComplexMatrix pure_witness;
  std::size_t probes = 0;

  bool positive(double tolerance = tol::kPsd) const {
    return min_eigenvalue >= -tolerance;
  }
};

/// Smallest eigenvalue of A[eta] over the structural probes plus `samples`
/// random probes, alternating Haar-random pure and Hilbert-Schmidt mixed.
PositivityReport positivity_certificate(const Assignment& a, int samples,
                                        Rng& rng);

struct Lemma1Entry {
  double output_min = 0.0;  // lambda_min(A[P_i])
  double tau_min = 0.0;     // lambda_min(tau_i)
};

struct Lemma1Report {
  std::vector<Lemma1Entry> entries;
  /// Every negative tau_i shows up as a negative A[P_i].
  bool holds = true;
  bool all_taus_positive = true;
};

Lemma1Report lemma1_check(const LinearAssignment& a,
                          double tolerance = tol::kPsd);

struct Theorem1Verdict {
  bool all_taus_equal = false;
  double max_tau_spread = 0.0;  // max_i ||tau_i - tau_1||_1
  bool taus_positive = false;
  PositivityReport positivity;
  bool positive = false;
  /// positive <=> (all taus equal and that common tau is a state)
  bool biconditional_holds = false;
};

inline constexpr double kTauEqualityTolerance = 1e-9;

Theorem1Verdict theorem1_certificate(const LinearAssignment& a, int samples,
                                     Rng& rng);

/// Which pair of axis states plays the role of the second mixture of I/2.
enum class PechukasPlane { XY, XZ };

struct PechukasResiduals {
  /// ||(eta1 (x) t1 + eta4 (x) t4 - eta2 (x) t2 - eta5 (x) t5) / 2||_1
  double mixture_identity = 0.0;
  /// ||2t1 - t2 - t5||, ||2t2 - t1 - t4||, ||2t4 - t2 - t5||, ||2t5 - t1 - t4||
  std::array<double, 4> relations{};

  double max() const;
};

/// In the XZ plane the arguments are read as (t1, t3, t4, t6).
PechukasResiduals pechukas_constraints(const HermitianOperator& t1,
                                       const HermitianOperator& t2,
                                       const HermitianOperator& t4,
                                       const HermitianOperator& t5,
                                       PechukasPlane plane = PechukasPlane::XY);

struct AuditReport {
  /// Over the basis projectors and random states.
  double max_hermiticity_defect = 0.0;
  double max_trace_defect = 0.0;
  std::vector<double> projector_hermiticity_defects;
  std::vector<double> projector_trace_defects;
};

/// Hermiticity defect is ||(X - X^dagger)/2||_1; trace defect is
/// |Tr A[eta] - Tr eta|.
AuditReport hermiticity_trace_audit(const LinearAssignment& a, int samples,
                                    Rng& rng);

double antihermitian_trace_norm(const ComplexMatrix& x);

}  // namespace assignlab
