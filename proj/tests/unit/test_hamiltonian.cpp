#include "instances.hpp"

#include <dqsvt/hamiltonian.hpp>
#include <dqsvt/oracle.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace dqsvt {
namespace {

using testing::guide_with_overlap;
using testing::kron_assembly;
using testing::random_two_local;

LocalTerm pauli_z(int q, double w = 1.0) { return {{q}, {w, 0.0, 0.0, -w}}; }

LocalHamiltonian single(int n, LocalTerm t) { return {n, static_cast<int>(t.qubits.size()), {std::move(t)}}; }

TEST(AssembleSparse, PauliZOnFirstQubit) {
    const auto m = assemble_sparse(single(2, pauli_z(0)));
    const auto d = m.to_dense();
    const std::vector<double> expected{1, 1, -1, -1};
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 4; ++j) EXPECT_EQ(d[i * 4 + j], Complex(i == j ? expected[i] : 0.0));
    }
}

TEST(AssembleSparse, ZeroHamiltonianShifted) {
    const LocalHamiltonian h{3, 2, {}};
    const auto m = assemble_sparse(h, {.shift = true});
    EXPECT_EQ(m.sparsity(), 1u);
    EXPECT_EQ(m.nnz(), 8u);
    for (const auto& t : m.triplets()) {
        EXPECT_EQ(t.row, t.col);
        EXPECT_EQ(t.value, Complex(0.75));
    }
}

TEST(AssembleSparse, MatchesKroneckerAssembly) {
    Rng rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        const auto h = random_two_local(6, 5, 0.9, rng);
        const DenseMatrix ref = kron_assembly(h);
        const DenseMatrix got = to_dense_matrix(assemble_sparse(h));
        EXPECT_LE((got - ref).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(AssembleSparse, NonAdjacentAndReversedQubitOrder) {
    Rng rng(2);
    LocalHamiltonian h = random_two_local(4, 1, 0.5, rng);
    h.terms[0].qubits = {3, 1};
    const DenseMatrix ref = kron_assembly(h);
    EXPECT_LE((to_dense_matrix(assemble_sparse(h)) - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AssembleSparse, SparsityBound) {
    Rng rng(3);
    for (int terms : {1, 3, 6}) {
        const auto h = random_two_local(6, terms, 0.9, rng);
        const auto m = assemble_sparse(h);
        for (Index i = 0; i < m.rows(); ++i) EXPECT_LE(m.row_nnz(i), static_cast<Index>(terms) * 4);
        const auto shifted = assemble_sparse(h, {.shift = true});
        for (Index i = 0; i < m.rows(); ++i) EXPECT_LE(shifted.row_nnz(i), static_cast<Index>(terms) * 4 + 1);
    }
}

TEST(AssembleSparse, SpectralMappingOfShift) {
    Rng rng(4);
    for (int n : {3, 6, 8}) {
        const auto h = random_two_local(n, n, 0.95, rng);
        const auto ground = exact_ground(to_dense_matrix(assemble_sparse(h)));
        const auto svd = dense_svd(to_dense_matrix(assemble_sparse(h, {.shift = true})));
        // Singular values descend, eigenvalues ascend.
        const Eigen::Index dim = ground.spectrum.size();
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double mapped = (ground.spectrum(dim - 1 - i) + 3.0) / 4.0;
            EXPECT_NEAR(svd.sigma(i), mapped, 1e-10);
            EXPECT_GE(svd.sigma(i), 0.5 - 1e-12);
            EXPECT_LE(svd.sigma(i), 1.0 + 1e-12);
        }
    }
}

TEST(AssembleSparse, NormViolationAndCaps) {
    EXPECT_THROW((void)assemble_sparse(single(2, pauli_z(0, 1.5))), InvalidInput);
    EXPECT_NO_THROW((void)assemble_sparse(single(2, pauli_z(0, 1.5)), {.check_norm = false}));
    EXPECT_THROW((void)assemble_sparse(LocalHamiltonian{21, 1, {}}), SizeError);
    EXPECT_THROW((void)assemble_sparse(LocalHamiltonian{4, 1, {}}, {.max_qubits = 3}), SizeError);
}

TEST(LocalHamiltonianValidate, Errors) {
    EXPECT_THROW(single(2, {{0, 0}, std::vector<Complex>(16)}).validate(), InvalidInput);
    EXPECT_THROW(single(2, {{2}, std::vector<Complex>(4)}).validate(), InvalidInput);
    EXPECT_THROW(single(2, {{0}, std::vector<Complex>(3)}).validate(), InvalidInput);
    EXPECT_THROW(single(2, {{0}, {0.0, 1.0, 0.0, 0.0}}).validate(), InvalidInput);
    LocalHamiltonian wide{3, 1, {{{0, 1}, std::vector<Complex>(16)}}};
    EXPECT_THROW(wide.validate(), InvalidInput);
    LocalHamiltonian too_local{12, 11, {}};
    EXPECT_THROW(too_local.validate(), SizeError);
}

TEST(GershgorinBound, BoundsOperatorNorm) {
    Rng rng(5);
    const auto m = assemble_sparse(random_two_local(5, 4, 0.8, rng));
    EXPECT_GE(gershgorin_bound(m), operator_norm(to_dense_matrix(m)) - 1e-12);
}

TEST(DecideGlh, GroundStateGuideIsLow) {
    LocalHamiltonian h = single(1, pauli_z(0, -1.0));
    // -Z = diag(-1, 1): ground state is basis index 0.
    const auto u = exact_sampler({1.0, 0.0});
    const auto d = decide_glh(h, u, 1.0, -0.5, 0.0, {0.01, 1, 1});
    EXPECT_EQ(d.outcome, GlhOutcome::kLow);
    EXPECT_STREQ(to_string(d.outcome), "LOW");
}

TEST(DecideGlh, SpectrumAboveBIsHigh) {
    const LocalHamiltonian h = single(1, {{0}, {0.5, 0.0, 0.0, 0.5}});
    const auto u = exact_sampler({0.6, 0.8});
    const auto d = decide_glh(h, u, 1.0, -0.5, 0.25, {0.01, 2, 1});
    EXPECT_EQ(d.outcome, GlhOutcome::kHigh);
    EXPECT_STREQ(to_string(d.outcome), "HIGH");
}

TEST(DecideGlh, RejectsBadGap) {
    const LocalHamiltonian h = single(1, pauli_z(0));
    const auto u = exact_sampler({1.0, 0.0});
    EXPECT_THROW((void)decide_glh(h, u, 1.0, 0.2, 0.1, {}), InvalidInput);
    EXPECT_THROW((void)decide_glh(h, u, 1.0, -1.5, 0.1, {}), InvalidInput);
}

TEST(DecideGlh, PlantedGapRandomInstances) {
    Rng rng(6);
    int correct = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        const int n = 3 + t % 4;
        const auto h = random_two_local(n, n + 1, 0.6, rng);
        const auto ground = exact_ground(kron_assembly(h));
        const double lambda = ground.energy;
        const bool low = t % 2 == 0;
        const double a = low ? lambda + 0.05 : lambda - 0.35;
        const double b = a + 0.3;
        const auto u = exact_sampler(guide_with_overlap(ground, 0.6, rng));
        const auto d = decide_glh(h, u, 0.6, a, b, {0.01, 1000u + static_cast<unsigned>(t), 2});
        if (d.outcome == (low ? GlhOutcome::kLow : GlhOutcome::kHigh)) ++correct;
    }
    EXPECT_GE(correct, 49);
}

TEST(ScanResolution, CeilingWithAllowance) {
    EXPECT_EQ(scan_resolution(0.5), 4);
    EXPECT_EQ(scan_resolution(0.25), 8);
    EXPECT_EQ(scan_resolution(0.3), 7);
    EXPECT_EQ(scan_resolution(2.0 / 3.0), 3);
}

TEST(ScanGroundEnergy, ExactOracleCoversEveryCase) {
    for (double eps : {0.25, 0.3, 0.5, 1.0}) {
        for (double lambda = -1.0; lambda <= 1.0; lambda += 0.01) {
            for (double f : {0.0, 0.3, 1.0}) {
                // Correct answer outside the gap; a fixed cut point inside it.
                const auto decide = [&](int, double a, double b) {
                    return lambda <= a + f * (b - a) ? GlhOutcome::kLow : GlhOutcome::kHigh;
                };
                const auto s = scan_ground_energy(eps, decide);
                EXPECT_GE(lambda, s.lo - 1e-12);
                EXPECT_LE(lambda, s.hi + 1e-12);
                EXPECT_LE(std::abs(s.estimate - lambda), eps + 1e-12);
                EXPECT_LE(std::abs(s.estimate - lambda), 1.0 / s.r + 1e-12);
            }
        }
    }
}

TEST(ScanGroundEnergy, CasesAndInconsistency) {
    const auto all_low = scan_ground_energy(0.5, [](int, double, double) { return GlhOutcome::kLow; });
    EXPECT_EQ(all_low.scan_case, ScanCase::kAllLow);
    EXPECT_DOUBLE_EQ(all_low.lo, -1.0);
    EXPECT_DOUBLE_EQ(all_low.hi, -0.75);
    const auto all_high = scan_ground_energy(0.5, [](int, double, double) { return GlhOutcome::kHigh; });
    EXPECT_EQ(all_high.scan_case, ScanCase::kAllHigh);
    EXPECT_DOUBLE_EQ(all_high.estimate, 0.875);
    EXPECT_THROW((void)scan_ground_energy(0.5,
                                          [](int i, double, double) {
                                              return i % 2 == 0 ? GlhOutcome::kLow : GlhOutcome::kHigh;
                                          }),
                 InconsistencyError);
}

TEST(EstimateGroundEnergy, ZeroHamiltonian) {
    const LocalHamiltonian h{2, 2, {}};
    const auto u = exact_sampler({0.5, 0.5, 0.5, 0.5});
    const auto e = estimate_ground_energy(h, u, 1.0, 0.5, {0.01, 3, 2});
    EXPECT_GE(e.scan.estimate, -0.5);
    EXPECT_LE(e.scan.estimate, 0.5);
    EXPECT_LE(e.scan.lo, 0.0);
    EXPECT_GE(e.scan.hi, 0.0);
}

TEST(EstimateGroundEnergy, BoundaryCaseAllLow) {
    const LocalHamiltonian h = single(1, pauli_z(0, -1.0));
    const auto e = estimate_ground_energy(h, exact_sampler({1.0, 0.0}), 1.0, 0.25, {0.01, 4, 2});
    EXPECT_EQ(e.scan.scan_case, ScanCase::kAllLow);
    EXPECT_LE(std::abs(e.scan.estimate + 1.0), 0.25);
}

TEST(EstimateGroundEnergy, RandomInstances) {
    Rng rng(7);
    int ok = 0;
    for (int t = 0; t < 6; ++t) {
        const auto h = random_two_local(4, 4, 0.9, rng);
        const auto ground = exact_ground(kron_assembly(h));
        const auto u = exact_sampler(guide_with_overlap(ground, 0.5, rng));
        const auto e = estimate_ground_energy(h, u, 0.5, 0.25, {0.01, 50u + static_cast<unsigned>(t), 4});
        if (std::abs(e.scan.estimate - ground.energy) <= 0.25) ++ok;
    }
    EXPECT_EQ(ok, 6);
}

TEST(GroundOverlap, Examples) {
    const LocalHamiltonian h = single(1, pauli_z(0, -1.0));
    EXPECT_NEAR(ground_overlap(h, std::vector<Complex>{1.0, 0.0}), 1.0, 1e-12);
    EXPECT_NEAR(ground_overlap(h, std::vector<Complex>{0.0, 1.0}), 0.0, 1e-12);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(ground_overlap(h, std::vector<Complex>{s, s}), s, 1e-10);
}

TEST(GroundOverlap, RandomConstruction) {
    Rng rng(8);
    const auto h = random_two_local(5, 5, 0.9, rng);
    const auto ground = exact_ground(kron_assembly(h));
    const auto u = guide_with_overlap(ground, 1.0 / std::sqrt(2.0), rng);
    EXPECT_NEAR(ground_overlap(h, u), 1.0 / std::sqrt(2.0), 1e-10);
    EXPECT_THROW((void)ground_overlap(LocalHamiltonian{13, 1, {}}, std::vector<Complex>(1)), SizeError);
}

}  // namespace
}  // namespace dqsvt
