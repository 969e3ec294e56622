#include "assignlab/assignment_maps.hpp"
#include "internal/assignment_backdoor.hpp"

#include "support/test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace assignlab;
using testutil::max_diff;

namespace {

std::vector<HermitianOperator> repeat(const HermitianOperator& t, std::size_t n) {
  return std::vector<HermitianOperator>(n, t);
}

std::vector<HermitianOperator> random_taus(std::size_t n, Eigen::Index de, Rng& rng) {
  std::vector<HermitianOperator> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_density(de, rng).op());
  return out;
}

// sum_i q_i P_i (x) tau_i assembled with the reference Kronecker product.
ComplexMatrix oracle_linear(const LinearAssignment& a, const Coefficients& q) {
  const Eigen::Index n = a.dim_s() * a.dim_e();
  oracle::Mat acc = oracle::zeros(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const oracle::Mat term = oracle::kron(testutil::to_oracle(a.basis().projector(i).matrix()),
                                          testutil::to_oracle(a.tau(i)));
    for (std::size_t r = 0; r < acc.size(); ++r)
      for (std::size_t c = 0; c < acc.size(); ++c)
        acc[r][c] += q(static_cast<Eigen::Index>(i)) * term[r][c];
  }
  return testutil::from_oracle(acc);
}

}  // namespace

TEST_SUITE("LinearAssignment") {
  TEST_CASE("all taus equal T gives eta (x) T") {
    Rng rng(1);
    const DensityOperator t = random_density(3, rng);
    const LinearAssignment a = make_product_assignment(qubit_axis_basis(), t);
    for (int k = 0; k < 20; ++k) {
      const DensityOperator eta = random_density(2, rng);
      CHECK(max_diff(a.apply(eta).matrix(), tensor(eta.matrix(), t.matrix())) <= 1e-12);
    }
  }

  TEST_CASE("basis element P_j maps to P_j (x) tau_j") {
    Rng rng(2);
    const ProjectorBasis basis = qubit_axis_basis();
    const LinearAssignment a(basis, random_taus(4, 2, rng));
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(max_diff(a.apply(basis.projector(j)).matrix(),
                     tensor(basis.projector(j).matrix(), a.tau(j))) <= 1e-12);
  }

  TEST_CASE("eta5 maps to P1(x)t1 + P4(x)t4 - P2(x)t2") {
    Rng rng(3);
    const ProjectorBasis basis = qubit_axis_basis();
    const LinearAssignment a(basis, random_taus(4, 2, rng));
    const ComplexMatrix expected = tensor(axis_state(1).matrix(), a.tau(0)) +
                                   tensor(axis_state(4).matrix(), a.tau(3)) -
                                   tensor(axis_state(2).matrix(), a.tau(1));
    CHECK(max_diff(a.apply(axis_state(5)).matrix(), expected) <= 1e-12);
  }

  TEST_CASE("matches the reference sum for d = 2, 3 and random environments") {
    Rng rng(4);
    for (int d : {2, 3}) {
      const ProjectorBasis basis = canonical_basis(d);
      for (int k = 0; k < 10; ++k) {
        const LinearAssignment a(basis, random_taus(basis.size(), 2 + k % 2, rng));
        const HermitianOperator h = random_hermitian(d, rng);
        CHECK(max_diff(a.apply(h).matrix(), oracle_linear(a, decompose(h, basis))) <= 1e-10);
      }
    }
  }

  TEST_CASE("consistency holds for every unit-trace family") {
    Rng rng(5);
    for (int d : {2, 3, 4}) {
      const ProjectorBasis basis = canonical_basis(d);
      std::vector<HermitianOperator> taus;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        // Unit trace, Hermitian, not necessarily positive.
        const HermitianOperator h = random_hermitian(2, rng);
        taus.push_back(h + (1.0 - h.trace()) * maximally_mixed(2));
      }
      const LinearAssignment a(basis, taus);
      for (int k = 0; k < 100; ++k)
        CHECK(consistency_defect(a, random_density(d, rng)) <= 1e-10);
    }
  }

  TEST_CASE("linearity and trace of the output") {
    Rng rng(6);
    const LinearAssignment a(canonical_basis(3), random_taus(9, 2, rng));
    CHECK(linearity_defect(a, 100, rng) <= 1e-10);
    for (int k = 0; k < 50; ++k) {
      const HermitianOperator h = random_hermitian(3, rng);
      CHECK(std::abs(a.apply(h).trace() - h.trace()) <= 1e-10);
    }
  }

  TEST_CASE("construction errors") {
    const ProjectorBasis basis = qubit_axis_basis();
    const HermitianOperator half(maximally_mixed(2));
    CHECK_THROWS_AS(LinearAssignment(basis, repeat(half, 3)), DimensionError);
    std::vector<HermitianOperator> mixed_dims = repeat(half, 3);
    mixed_dims.push_back(maximally_mixed(3));
    CHECK_THROWS_AS(LinearAssignment(basis, mixed_dims), DimensionError);

    // sigma_z has trace 0, so the unit-trace invariant rejects it.
    std::vector<HermitianOperator> bad = repeat(half, 4);
    bad[0] = HermitianOperator(pauli_z());
    CHECK_THROWS_AS(LinearAssignment(basis, bad), InvariantError);

    const LinearAssignment a = make_product_assignment(basis, DensityOperator(maximally_mixed(2)));
    CHECK_THROWS_AS(a.apply(maximally_mixed(3)), DimensionError);
  }
}

TEST_SUITE("Xi assignment") {
  TEST_CASE("output spectrum is the coefficient vector padded with zeros") {
    const ProjectorBasis basis = qubit_axis_basis();
    const LinearAssignment xi = make_xi_assignment(basis);
    CHECK(xi.dim_e() == 4);
    Rng rng(7);
    for (int k = 0; k < 100; ++k) {
      const DensityOperator eta = random_density(2, rng);
      const Coefficients q = decompose(eta, basis);
      std::vector<double> expected(q.data(), q.data() + q.size());
      expected.resize(8, 0.0);
      std::sort(expected.begin(), expected.end());
      const RealVector ev = eigvals_hermitian(xi.apply(eta));
      for (Eigen::Index i = 0; i < 8; ++i)
        CHECK(std::abs(ev(i) - expected[static_cast<std::size_t>(i)]) <= 1e-10);
    }
  }

  TEST_CASE("positivity certificate finds eta5 or worse at -1") {
    const LinearAssignment xi = make_xi_assignment(qubit_axis_basis());
    Rng rng(8);
    const PositivityReport r = positivity_certificate(xi, 200, rng);
    CHECK(r.min_eigenvalue <= -1.0 + 1e-10);
    CHECK_FALSE(r.positive());
    const RealVector ev5 = eigvals_hermitian(xi.apply(axis_state(5)));
    CHECK(ev5(0) == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_SUITE("ZeroDiscordAssignment") {
  const OrthogonalProjectorSet z = OrthogonalProjectorSet::computational(2);

  TEST_CASE("diagonal input keeps its populations") {
    Rng rng(9);
    const auto taus = random_taus(2, 3, rng);
    const ZeroDiscordAssignment a(z, taus);
    const ComplexMatrix eta = testutil::diag({0.3, 0.7});
    const ComplexMatrix expected = 0.3 * tensor(z.projector(0).matrix(), taus[0].matrix()) +
                                   0.7 * tensor(z.projector(1).matrix(), taus[1].matrix());
    CHECK(max_diff(a.apply(HermitianOperator(eta)).matrix(), expected) <= 1e-14);
    CHECK(consistency_defect(a, HermitianOperator(eta)) <= 1e-14);
  }

  TEST_CASE("eta1 in the z basis gives equal weights and defect 1") {
    Rng rng(10);
    const auto taus = random_taus(2, 2, rng);
    const ZeroDiscordAssignment a(z, taus);
    const ComplexMatrix expected = 0.5 * tensor(z.projector(0).matrix(), taus[0].matrix()) +
                                   0.5 * tensor(z.projector(1).matrix(), taus[1].matrix());
    CHECK(max_diff(a.apply(axis_state(1)).matrix(), expected) <= 1e-14);
    CHECK(consistency_defect(a, axis_state(1)) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("defect equals the dephasing distance for random bases") {
    Rng rng(11);
    for (int d : {2, 3}) {
      for (int k = 0; k < 50; ++k) {
        const auto pis = OrthogonalProjectorSet::from_unitary(random_unitary(d, rng));
        const ZeroDiscordAssignment a(pis, random_taus(static_cast<std::size_t>(d), 2, rng));
        const DensityOperator eta = random_density(d, rng);
        // Dephasing by hand: sum_i <v_i|eta|v_i> |v_i><v_i|.
        ComplexMatrix deph = ComplexMatrix::Zero(d, d);
        for (std::size_t i = 0; i < pis.size(); ++i) {
          const ComplexMatrix& p = pis.projector(i).matrix();
          deph += (p * eta.matrix()).trace() * p;
        }
        CHECK(std::abs(consistency_defect(a, eta) - trace_norm(eta.matrix() - deph)) <= 1e-10);
      }
    }
  }

  TEST_CASE("positive taus give a positive output") {
    Rng rng(12);
    for (int k = 0; k < 20; ++k) {
      const auto pis = OrthogonalProjectorSet::from_unitary(random_unitary(2, rng));
      const ZeroDiscordAssignment a(pis, random_taus(2, 2, rng));
      CHECK(positivity_certificate(a, 100, rng).min_eigenvalue >= -1e-10);
    }
  }

  TEST_CASE("a negative tau shows up scaled by the population") {
    Rng rng(13);
    std::vector<HermitianOperator> taus{HermitianOperator(testutil::diag({1.25, -0.25})),
                                        random_density(2, rng).op()};
    const ZeroDiscordAssignment a(z, taus);
    for (int k = 0; k < 50; ++k) {
      const DensityOperator eta = random_density(2, rng);
      const double p0 = eta.matrix()(0, 0).real(), p1 = eta.matrix()(1, 1).real();
      const double predicted = std::min({-0.25 * p0, p1 * min_eigenvalue(taus[1]), 0.0});
      CHECK(std::abs(min_eigenvalue(a.apply(eta)) - predicted) <= 1e-9);
    }
  }

  TEST_CASE("orthogonal projector set validation") {
    CHECK_THROWS_AS(OrthogonalProjectorSet({axis_state(1), axis_state(3)}), InvariantError);
    CHECK_NOTHROW(OrthogonalProjectorSet({axis_state(1), axis_state(4)}));
    Rng rng(1);
    CHECK_THROWS_AS(ZeroDiscordAssignment(z, random_taus(3, 2, rng)), DimensionError);
  }

  TEST_CASE("dephase keeps only the diagonal in the chosen basis") {
    const HermitianOperator out = z.dephase(axis_state(1));
    CHECK(max_diff(out.matrix(), 0.5 * identity(2)) <= 1e-15);
  }
}

TEST_SUITE("BroadcastAssignment") {
  const BroadcastAssignment b(qubit_axis_basis());

  TEST_CASE("commuting inputs are broadcast as products") {
    for (int k : {1, 2, 3, 4}) {
      const ComplexMatrix e = axis_state(k).matrix();
      CHECK(max_diff(b.apply(axis_state(k)).matrix(), tensor(e, e)) <= 1e-12);
    }
  }

  TEST_CASE("eta5 output has spectrum {-1/sqrt2, 0, 1/sqrt2, 1}") {
    const HermitianOperator out = b.apply(axis_state(5));
    const RealVector ev = eigvals_hermitian(out);
    const double s = 1.0 / std::numbers::sqrt2;
    CHECK(ev(0) == doctest::Approx(-s).epsilon(1e-12));
    CHECK(std::abs(ev(1)) <= 1e-12);
    CHECK(ev(2) == doctest::Approx(s).epsilon(1e-12));
    CHECK(ev(3) == doctest::Approx(1.0).epsilon(1e-12));
    const auto ref = oracle::real_eigenvalues(testutil::to_oracle(out.matrix()));
    for (Eigen::Index i = 0; i < 4; ++i)
      CHECK(std::abs(ev(i) - ref[static_cast<std::size_t>(i)]) <= 1e-9);
  }

  TEST_CASE("both marginals reproduce the input") {
    Rng rng(14);
    for (int k = 0; k < 100; ++k) {
      const HermitianOperator h = random_hermitian(2, rng);
      const ComplexMatrix out = b.apply(h).matrix();
      CHECK(max_diff(partial_trace(out, 2, 2, Subsystem::E), h.matrix()) <= 1e-10);
      CHECK(max_diff(partial_trace(out, 2, 2, Subsystem::S), h.matrix()) <= 1e-10);
    }
  }

  TEST_CASE("classical broadcast is positive and copies populations") {
    const ZeroDiscordAssignment c = make_classical_broadcast(OrthogonalProjectorSet::computational(2));
    Rng rng(15);
    CHECK(positivity_certificate(c, 100, rng).positive());
    const ComplexMatrix out = c.apply(HermitianOperator(testutil::diag({0.25, 0.75}))).matrix();
    CHECK(max_diff(out, testutil::diag({0.25, 0, 0, 0.75})) <= 1e-15);
  }
}

TEST_SUITE("lemma1_check") {
  const ProjectorBasis basis = qubit_axis_basis();

  TEST_CASE("positive taus give positive images of the basis") {
    Rng rng(16);
    const LinearAssignment a(basis, random_taus(4, 2, rng));
    const Lemma1Report r = lemma1_check(a);
    CHECK(r.holds);
    CHECK(r.all_taus_positive);
    for (const auto& e : r.entries) CHECK(e.output_min >= -1e-10);
  }

  TEST_CASE("tau_1 = diag(1.5, -0.5) gives lambda_min(A[P1]) = -0.5") {
    std::vector<HermitianOperator> taus(4, HermitianOperator(maximally_mixed(2)));
    taus[0] = HermitianOperator(testutil::diag({1.5, -0.5}));
    const Lemma1Report r = lemma1_check(LinearAssignment(basis, taus));
    CHECK(r.holds);
    CHECK_FALSE(r.all_taus_positive);
    CHECK(r.entries[0].output_min == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(r.entries[0].tau_min == doctest::Approx(-0.5).epsilon(1e-12));
  }
}

TEST_SUITE("theorem1_certificate") {
  TEST_CASE("equal taus are positive") {
    Rng rng(17);
    const LinearAssignment a =
        make_product_assignment(qubit_axis_basis(), random_density(2, rng));
    const Theorem1Verdict v = theorem1_certificate(a, 500, rng);
    CHECK(v.all_taus_equal);
    CHECK(v.positive);
    CHECK(v.biconditional_holds);
  }

  TEST_CASE("distinct valid taus expose a negative pure probe") {
    Rng rng(18);
    for (int k = 0; k < 10; ++k) {
      const LinearAssignment a(qubit_axis_basis(), random_taus(4, 2, rng));
      const Theorem1Verdict v = theorem1_certificate(a, 500, rng);
      CHECK_FALSE(v.all_taus_equal);
      CHECK(v.taus_positive);
      CHECK_FALSE(v.positive);
      CHECK(v.positivity.min_pure_eigenvalue < -1e-6);
      CHECK(v.biconditional_holds);
    }
  }

  TEST_CASE("d = 3 with a common state stays positive over 10^3 probes") {
    Rng rng(19);
    const LinearAssignment a = make_product_assignment(canonical_basis(3), random_density(2, rng));
    const Theorem1Verdict v = theorem1_certificate(a, 1000, rng);
    CHECK(v.positive);
    CHECK(v.positivity.min_eigenvalue >= -1e-10);
  }

  TEST_CASE("a single perturbed tau breaks positivity") {
    Rng rng(20);
    std::vector<HermitianOperator> taus(4, HermitianOperator(maximally_mixed(2)));
    taus[1] = axis_state(3).op();
    const Theorem1Verdict v = theorem1_certificate(LinearAssignment(qubit_axis_basis(), taus), 200, rng);
    CHECK(v.max_tau_spread == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(v.positive);
  }
}

TEST_SUITE("pechukas_constraints") {
  TEST_CASE("all equal gives zero residuals") {
    Rng rng(21);
    const HermitianOperator t = random_density(2, rng).op();
    CHECK(pechukas_constraints(t, t, t, t).max() <= 1e-15);
    CHECK(pechukas_constraints(t, t, t, t, PechukasPlane::XZ).max() <= 1e-15);
  }

  TEST_CASE("|0><0| against I/2 leaves a residual of 2") {
    const HermitianOperator half(maximally_mixed(2));
    const PechukasResiduals r = pechukas_constraints(axis_state(3).op(), half, half, half);
    CHECK(r.relations[0] == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("zero residual forces equality") {
    Rng rng(22);
    for (int k = 0; k < 200; ++k) {
      const auto t = random_taus(4, 2, rng);
      const PechukasResiduals r = pechukas_constraints(t[0], t[1], t[2], t[3]);
      double spread = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          spread = std::max(spread, trace_norm(t[static_cast<std::size_t>(i)].matrix() -
                                               t[static_cast<std::size_t>(j)].matrix()));
      CHECK(r.max() > 1e-12);
      // Differences of relations give every pairwise gap, so spread <= 3 max.
      CHECK(r.max() >= spread / 3.0 - 1e-12);
    }
  }

  TEST_CASE("mixture identity residual is the operator trace norm") {
    Rng rng(23);
    const auto t = random_taus(4, 2, rng);
    const ComplexMatrix m =
        0.5 * (tensor(axis_state(1).matrix(), t[0].matrix()) + tensor(axis_state(4).matrix(), t[2].matrix()) -
               tensor(axis_state(2).matrix(), t[1].matrix()) - tensor(axis_state(5).matrix(), t[3].matrix()));
    CHECK(std::abs(pechukas_constraints(t[0], t[1], t[2], t[3]).mixture_identity - trace_norm(m)) <= 1e-12);
  }
}

TEST_SUITE("hermiticity_trace_audit") {
  const ProjectorBasis basis = qubit_axis_basis();

  TEST_CASE("valid assignments have no defects") {
    Rng rng(24);
    for (int k = 0; k < 20; ++k) {
      const LinearAssignment a(basis, random_taus(4, 2 + k % 3, rng));
      const AuditReport r = hermiticity_trace_audit(a, 50, rng);
      CHECK(r.max_hermiticity_defect <= 1e-10);
      CHECK(r.max_trace_defect <= 1e-10);
    }
  }

  TEST_CASE("antihermitian corruption shows a 0.2 defect on P1") {
    Rng rng(25);
    const LinearAssignment a(basis, random_taus(4, 2, rng));
    const ComplexMatrix bad = a.tau(0) + Complex(0.0, 0.1) * pauli_z();
    const LinearAssignment c = detail::AssignmentBackdoor::with_tau(a, 0, bad);
    const AuditReport r = hermiticity_trace_audit(c, 0, rng);
    CHECK(r.projector_hermiticity_defects[0] == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(std::abs(r.projector_hermiticity_defects[1]) <= 1e-12);
    CHECK(std::abs(antihermitian_trace_norm(c.apply_matrix(basis.projector(0))) - 0.2) <= 1e-10);
    CHECK_THROWS_AS(c.apply(basis.projector(0)), InvariantError);
  }

  TEST_CASE("scaled tau shows a 0.1 trace defect on P1") {
    Rng rng(26);
    const LinearAssignment a(basis, random_taus(4, 2, rng));
    const LinearAssignment c = detail::AssignmentBackdoor::with_tau(a, 0, 1.1 * a.tau(0));
    const AuditReport r = hermiticity_trace_audit(c, 0, rng);
    CHECK(std::abs(r.projector_trace_defects[0] - 0.1) <= 1e-10);
    CHECK(std::abs(r.projector_trace_defects[2]) <= 1e-12);
  }
}
