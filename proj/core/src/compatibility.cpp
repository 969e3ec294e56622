#include "assignlab/compatibility.hpp"

#include <algorithm>
#include <cmath>

namespace assignlab {

CompatibilityVerdict verdict(const Assignment& a, const HermitianOperator& eta,
                             double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("verdict: tol must be > 0");
  CompatibilityVerdict v;
  v.lambda_min = min_eigenvalue(a.apply(eta));
  v.tol = tolerance;
  v.in_domain = v.lambda_min >= -tolerance;
  return v;
}

namespace {
double lambda_at(const Assignment& a, const DensityOperator& c,
                 const DensityOperator& t, double s) {
  return min_eigenvalue(a.apply((1.0 - s) * c.op() + s * t.op()));
}
}  // namespace

RaySection boundary_along_ray(const Assignment& a, const DensityOperator& center,
                              const DensityOperator& target, double tolerance) {
  if (center.dim() != a.dim_s() || target.dim() != a.dim_s()) {
    throw DimensionError("boundary_along_ray: state dimension differs from d_S");
  }
  RaySection ray{center.matrix(), target.matrix(), 0.0, 0, 0.0};
  if (lambda_at(a, center, target, 0.0) < -tolerance) {
    throw std::invalid_argument("boundary_along_ray: center is not in the domain");
  }
  if (lambda_at(a, center, target, 1.0) >= -tolerance) {
    ray.t_star = 1.0;
    return ray;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kBisectionWidth && ray.iterations < kBisectionMaxIterations) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_at(a, center, target, mid) >= -tolerance) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++ray.iterations;
  }
  ray.t_star = lo;
  ray.bracket_width = hi - lo;
  return ray;
}

std::vector<RayScanPoint> scan_ray(const Assignment& a,
                                   const DensityOperator& center,
                                   const DensityOperator& target, int steps) {
  if (steps < 1) throw std::invalid_argument("scan_ray: steps must be >= 1");
  std::vector<RayScanPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    out.push_back({t, lambda_at(a, center, target, t)});
  }
  return out;
}

bool is_single_interval(const std::vector<RayScanPoint>& scan, double tolerance) {
  // Count transitions between in-domain runs; more than one run is a failure.
  int runs = 0;
  bool prev = false;
  for (const auto& p : scan) {
    const bool in = p.lambda_min >= -tolerance;
    if (in && !prev) ++runs;
    prev = in;
  }
  return runs <= 1;
}

std::pair<double, double> wilson_interval(int hits, int samples, double z) {
  if (samples <= 0 || hits < 0 || hits > samples) {
    throw std::invalid_argument("wilson_interval: need 0 <= hits <= samples, samples > 0");
  }
  const double n = samples;
  const double p = hits / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

DomainEstimate domain_volume(const Assignment& a, int samples, Rng& rng,
                             double tolerance) {
  if (samples < 100) throw std::invalid_argument("domain_volume: samples must be >= 100");
  DomainEstimate est;
  est.samples = samples;
  for (int k = 0; k < samples; ++k) {
    if (verdict(a, random_density(a.dim_s(), rng), tolerance).in_domain) ++est.hits;
  }
  est.fraction = static_cast<double>(est.hits) / samples;
  est.ci95 = wilson_interval(est.hits, samples);
  return est;
}

SimplexDomainReport simplex_domain_check(const LinearAssignment& a, int samples,
                                         Rng& rng, double tolerance) {
  {
    std::vector<DensityOperator> xis;
    for (std::size_t i = 0; i < a.size(); ++i) xis.emplace_back(a.tau(i));
    // Throws InvariantError / DimensionError unless orthonormal and complete.
    OrthogonalProjectorSet check(std::move(xis));
  }

  SimplexDomainReport report;
  auto visit = [&](const std::string& label, const HermitianOperator& eta) {
    SimplexProbeResult r;
    r.label = label;
    r.q = decompose(eta, a.basis());
    r.min_q = r.q.minCoeff();
    const CompatibilityVerdict v = verdict(a, eta, tolerance);
    r.lambda_min = v.lambda_min;
    r.spectral_in_domain = v.in_domain;
    r.simplex_in_domain = r.min_q >= -tolerance;
    if (r.spectral_in_domain == r.simplex_in_domain) ++report.agreements;
    report.max_spectrum_error = std::max(
        report.max_spectrum_error, std::abs(r.lambda_min - std::min(0.0, r.min_q)));
    report.probes.push_back(std::move(r));
  };

  for (const auto& p : a.structural_probes()) visit(p.label, p.state);
  visit("maximally_mixed", maximally_mixed(a.dim_s()));
  for (int k = 0; k < samples; ++k)
    visit("random_" + std::to_string(k), random_density(a.dim_s(), rng));
  return report;
}

}  // namespace assignlab
