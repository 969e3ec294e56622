// Construction without invariant checks. Only for exercising the failure side
// of the Hermiticity and trace audits; not installed.
#pragma once

#include "assignlab/assignment_maps.hpp"

namespace assignlab::detail {

struct AssignmentBackdoor {
  static LinearAssignment unchecked(ProjectorBasis basis,
                                    std::vector<ComplexMatrix> taus,
                                    std::string name = "corrupted") {
    return LinearAssignment(std::move(basis), std::move(taus), std::move(name),
                            LinearAssignment::Unchecked{});
  }

  /// Copy of `a` with tau_i replaced.
  static LinearAssignment with_tau(const LinearAssignment& a, std::size_t i,
                                   const ComplexMatrix& tau) {
    std::vector<ComplexMatrix> taus;
    taus.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) taus.push_back(a.tau(k));
    taus.at(i) = tau;
    return unchecked(a.basis(), std::move(taus), a.name() + "-corrupted");
  }
};

}  // namespace assignlab::detail
