// Compatibility domains: the system states an assignment sends to valid
// bipartite density operators.
#pragma once

#include "assignlab/assignment_maps.hpp"

#include <utility>
#include <vector>

namespace assignlab {

inline constexpr double kBisectionWidth = 1e-8;
inline constexpr int kBisectionMaxIterations = 60;
inline constexpr double kWilsonZ95 = 1.959963984540054;

struct CompatibilityVerdict {
  double lambda_min = 0.0;
  bool in_domain = false;
  double tol = tol::kPsd;
};

CompatibilityVerdict verdict(const Assignment& a, const HermitianOperator& eta,
                             double tolerance = tol::kPsd);

struct RaySection {
  ComplexMatrix center;
  ComplexMatrix target;
  double t_star = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
};

/// Largest t in [0, 1] such that (1 - t) center + t target stays in the
/// domain. lambda_min is concave along the segment, so the in-domain set is
/// an interval containing 0 and bisection on its right edge is exact up to
/// the bracket. Throws std::invalid_argument if center is outside the domain.
RaySection boundary_along_ray(const Assignment& a, const DensityOperator& center,
                              const DensityOperator& target,
                              double tolerance = tol::kPsd);

struct RayScanPoint {
  double t = 0.0;
  double lambda_min = 0.0;
};

/// lambda_min on `steps + 1` equally spaced points of the segment.
std::vector<RayScanPoint> scan_ray(const Assignment& a,
                                   const DensityOperator& center,
                                   const DensityOperator& target, int steps);

/// True when the in-domain points of a scan form one contiguous run.
bool is_single_interval(const std::vector<RayScanPoint>& scan,
                        double tolerance = tol::kPsd);

struct DomainEstimate {
  int samples = 0;
  int hits = 0;
  double fraction = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
};

/// Wilson score interval for `hits` successes out of `samples`.
std::pair<double, double> wilson_interval(int hits, int samples,
                                          double z = kWilsonZ95);

/// Fraction of Hilbert-Schmidt random states that lie in the domain.
/// Requires samples >= 100.
DomainEstimate domain_volume(const Assignment& a, int samples, Rng& rng,
                             double tolerance = tol::kPsd);

struct SimplexProbeResult {
  std::string label;
  Coefficients q;
  double min_q = 0.0;
  double lambda_min = 0.0;
  bool spectral_in_domain = false;
  bool simplex_in_domain = false;
};

struct SimplexDomainReport {
  std::vector<SimplexProbeResult> probes;
  std::size_t agreements = 0;
  /// max |lambda_min - min(0, min_i q_i)|
  double max_spectrum_error = 0.0;

  double agreement_rate() const {
    return probes.empty() ? 0.0
                          : static_cast<double>(agreements) /
                                static_cast<double>(probes.size());
  }
};

/// For an assignment whose taus form a complete orthonormal projector set on
/// E, the output spectrum is {q_i} plus zeros, so the domain is exactly
/// {eta : q_i >= 0}. Checks that equivalence on the structural probes, the
/// maximally mixed state and `samples` random states. Throws InvariantError
/// when the taus are not orthonormal projectors.
SimplexDomainReport simplex_domain_check(const LinearAssignment& a, int samples,
                                         Rng& rng, double tolerance = tol::kPsd);

}  // namespace assignlab
