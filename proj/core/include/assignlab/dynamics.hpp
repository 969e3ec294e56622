// Reduced dynamics M = Tr_E o U o A induced by an assignment, with Choi
// certificates for complete positivity and trace preservation.
//
// Vectorization is row-major: vec(X)[j * d + k] = X(j, k). Column j * d + k of
// a superoperator matrix is vec(M[|j><k|]).
#pragma once

#include "assignlab/assignment_maps.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace assignlab {

inline constexpr double kCpTolerance = 1e-9;
inline constexpr double kNonCpThreshold = -1e-6;

struct Superoperator {
  Eigen::Index d = 0;
  ComplexMatrix mat;  // d^2 x d^2
  std::string provenance;
};

ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index d);

/// Tr_E[U A[eta] U^dagger], computed directly.
HermitianOperator evolve(const Assignment& a, const UnitaryOperator& u,
                         const HermitianOperator& eta);

/// Builds M column by column. A is only defined on Hermitian inputs, so each
/// matrix unit is split as E = H + iK and M[E] = M[H] + i M[K].
Superoperator induced_map(const Assignment& a, const UnitaryOperator& u,
                          std::string provenance = {});

Superoperator identity_map(Eigen::Index d);

/// Full superoperator action on an arbitrary matrix.
ComplexMatrix apply_map_matrix(const Superoperator& m, const ComplexMatrix& x);
/// Requires the output to be Hermitian within kCpTolerance.
HermitianOperator apply_map(const Superoperator& m, const HermitianOperator& eta);

struct ChoiMatrix {
  HermitianOperator matrix;
  RealVector spectrum;  // ascending
};

/// C = sum_jk |j><k| (x) M[|j><k|].
ChoiMatrix choi(const Superoperator& m);

struct CPReport {
  double lambda_min_choi = 0.0;
  bool is_cp = false;
  bool is_tp = false;
  std::optional<std::uint64_t> witness_seed;
};

/// is_tp checks the output partial trace of the Choi matrix against I in
/// max-norm at the same tolerance.
CPReport cp_certificate(const Superoperator& m, double tolerance = kCpTolerance);

struct WitnessSearch {
  int draws = 0;
  double best_lambda_min = 0.0;
  std::uint64_t best_index = 0;
  std::uint64_t best_seed = 0;
  /// Smallest sub-stream index whose map falls below the threshold.
  std::optional<std::uint64_t> first_index;
  std::optional<std::uint64_t> first_seed;
  double threshold = kNonCpThreshold;

  bool found() const { return first_index.has_value(); }
};

/// Draws Haar unitaries on S (x) E from sub-streams 0..draws-1 of
/// master_seed and records the most negative Choi eigenvalue.
WitnessSearch search_non_cp_witness(const Assignment& a,
                                    std::uint64_t master_seed, int draws,
                                    double threshold = kNonCpThreshold);

/// The unitary drawn for a sub-stream seed reported by a search.
UnitaryOperator replay_unitary(Eigen::Index d, std::uint64_t seed);

struct Table1Row {
  std::string correlations;  // "none", "classical", "quantum"
  std::string family;
  bool linear = false;
  bool consistent = false;
  bool positive = false;
  double linearity_defect = 0.0;
  double max_consistency_defect = 0.0;
  double min_eigenvalue = 0.0;
  std::string witness;
};

struct Table1Report {
  std::array<Table1Row, 3> rows;
  /// (yes, yes, yes) / (yes, no, yes) / (yes, yes, no)
  bool matches_reference = false;
};

/// Runs the product, zero-discord and xi families on a qubit system through
/// the linearity, consistency and positivity checks.
Table1Report experiment_table1(std::uint64_t seed, int samples);

}  // namespace assignlab
