#include "instances.hpp"

#include <dqsvt/access.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <map>

namespace dqsvt {
namespace {

using testing::random_sparse;
using testing::random_vector;

std::vector<double> frequencies(const SampledVector& v, int draws, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> f(v.dimension(), 0.0);
    for (int k = 0; k < draws; ++k) f[sample_index(v, rng)] += 1.0;
    for (auto& x : f) x /= draws;
    return f;
}

// Upper 0.001 quantile of chi-squared with df degrees of freedom
// (Wilson-Hilferty).
double chi2_critical(int df) {
    const double z = 3.090232;
    const double a = 2.0 / (9.0 * df);
    return df * std::pow(1.0 - a + z * std::sqrt(a), 3);
}

TEST(QueryEntry, ReadsStoredValues) {
    const QueryVector v({1.0, 0.0, Complex(0, 3), 0.0});
    EXPECT_EQ(query_entry(v, 2), Complex(0, 3));
    const QueryVector e1({1.0, 0.0, 0.0});
    EXPECT_EQ(query_entry(e1, 1), Complex(0.0));
}

TEST(QueryEntry, MatchesDenseStorageAndIsDeterministic) {
    Rng rng(7);
    const auto dense = random_vector(64, rng);
    const QueryVector v(dense);
    for (int k = 0; k < 200; ++k) {
        const Index i = rng() % 64;
        EXPECT_EQ(query_entry(v, i), dense[i]);
        EXPECT_EQ(query_entry(v, i), query_entry(v, i));
    }
}

TEST(QueryEntry, OutOfRangeThrows) {
    const QueryVector v({1.0, 2.0});
    EXPECT_THROW((void)query_entry(v, 2), RangeError);
}

TEST(QueryEntry, OracleBackedVector) {
    const QueryVector v(5, [](Index i) { return Complex(static_cast<double>(i), 1.0); });
    EXPECT_EQ(v.entry(3), Complex(3.0, 1.0));
    EXPECT_FALSE(v.is_dense());
    EXPECT_THROW((void)v.entry(5), RangeError);
}

TEST(SparseMatrixQuery, IdentityRows) {
    const auto id = SparseMatrix::identity(4);
    const auto e = query_row_entry(id, 1, 0);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->index, 1u);
    EXPECT_EQ(e->value, Complex(1.0));
    EXPECT_FALSE(query_row_entry(SparseMatrix(4, 4, {{0, 0, 1.0}, {1, 1, 1.0}, {1, 2, 0.5}, {2, 2, 1.0}, {3, 3, 1.0}}),
                                 0, 1)
                     .has_value());
}

TEST(SparseMatrixQuery, RankBeyondSparsityIsRangeError) {
    const auto id = SparseMatrix::identity(4);
    EXPECT_THROW((void)query_row_entry(id, 1, 1), RangeError);
    EXPECT_THROW((void)query_row_entry(id, 4, 0), RangeError);
    EXPECT_THROW((void)query_col_entry(id, 4, 0), RangeError);
}

TEST(SparseMatrixQuery, NotPresentWhenRowIsShort) {
    const SparseMatrix a(4, 4, {{0, 0, 1.0}, {0, 3, 2.0}, {1, 1, 1.0}}, 2);
    EXPECT_FALSE(query_row_entry(a, 1, 1).has_value());
    const auto e = query_row_entry(a, 0, 1);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->index, 3u);
}

TEST(SparseMatrixQuery, RoundTripThroughRowsAndColumns) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_sparse(8, 8, 3, rng);
        const auto dense = a.to_dense();
        std::vector<Complex> by_row(64, Complex{});
        std::vector<Complex> by_col(64, Complex{});
        for (Index i = 0; i < 8; ++i) {
            Index last = 0;
            for (Index l = 0; l < a.sparsity(); ++l) {
                const auto e = query_row_entry(a, i, l);
                if (!e) break;
                if (l > 0) EXPECT_GT(e->index, last);
                last = e->index;
                by_row[i * 8 + e->index] = e->value;
            }
            for (Index l = 0; l < a.sparsity(); ++l) {
                const auto e = query_col_entry(a, i, l);
                if (!e) break;
                by_col[e->index * 8 + i] = e->value;
            }
        }
        EXPECT_EQ(by_row, dense);
        EXPECT_EQ(by_col, dense);
    }
}

TEST(SparseMatrixQuery, SparsityHoldsOnConstruction) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_sparse(16, 12, 4, rng);
        for (Index i = 0; i < a.rows(); ++i) EXPECT_LE(a.row_nnz(i), a.sparsity());
        for (Index j = 0; j < a.cols(); ++j) EXPECT_LE(a.col_nnz(j), a.sparsity());
    }
}

TEST(SparseMatrixConstruction, RejectsDuplicatesAndSparsityViolations) {
    EXPECT_THROW(SparseMatrix(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}), InvalidInput);
    EXPECT_THROW(SparseMatrix(2, 2, {{0, 0, 1.0}, {0, 1, 2.0}}, 1), InvalidInput);
    EXPECT_THROW(SparseMatrix(2, 2, {{2, 0, 1.0}}), InvalidInput);
}

TEST(SparseMatrixConstruction, DropsExplicitZeros) {
    const SparseMatrix a(2, 2, {{0, 0, 0.0}, {1, 1, 2.0}});
    EXPECT_EQ(a.nnz(), 1u);
}

TEST(SparseMatrixConstruction, AdjointSwapsAndConjugates) {
    const SparseMatrix a(2, 3, {{0, 2, Complex(1, 2)}, {1, 0, Complex(0, -1)}});
    const auto ad = a.adjoint();
    EXPECT_EQ(ad.rows(), 3u);
    EXPECT_EQ(ad.cols(), 2u);
    const auto e = query_row_entry(ad, 2, 0);
    ASSERT_TRUE(e);
    EXPECT_EQ(e->index, 0u);
    EXPECT_EQ(e->value, Complex(1, -2));
    const auto dense = a.to_dense();
    const auto dense_ad = ad.to_dense();
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 3; ++j) EXPECT_EQ(dense_ad[j * 2 + i], std::conj(dense[i * 3 + j]));
    }
}

TEST(SampleIndex, PointMass) {
    const auto v = exact_sampler({0.0, 0.0, 1.0, 0.0});
    Rng rng(1);
    for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_index(v, rng), 2u);
}

TEST(SampleIndex, UniformPair) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto f = frequencies(exact_sampler({h, h}), 100000, 3);
    EXPECT_NEAR(f[0], 0.5, 0.01);
    EXPECT_NEAR(f[1], 0.5, 0.01);
}

TEST(SampleIndex, WeightedPair) {
    const auto f = frequencies(exact_sampler({1.0, 2.0}), 100000, 4);
    EXPECT_NEAR(f[1], 0.8, 0.01);
}

TEST(SampleIndex, NeverReturnsZeroEntry) {
    Rng rng(5);
    auto dense = random_vector(40, rng);
    for (Index i = 0; i < 40; i += 3) dense[i] = 0.0;
    const auto v = exact_sampler(dense);
    for (int k = 0; k < 20000; ++k) EXPECT_NE(v.entry(sample_index(v, rng)), Complex(0.0));
}

TEST(SampleIndex, ChiSquaredGoodnessOfFit) {
    Rng gen(6);
    for (Index n : {Index{2}, Index{9}, Index{33}, Index{64}}) {
        const auto dense = random_vector(n, gen);
        const auto v = exact_sampler(dense);
        const int draws = 100000;
        const auto f = frequencies(v, draws, 100 + n);
        const double norm2 = std::pow(euclidean_norm(dense), 2);
        double stat = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double expected = draws * std::norm(dense[j]) / norm2;
            const double observed = f[j] * draws;
            stat += (observed - expected) * (observed - expected) / expected;
        }
        EXPECT_LT(stat, chi2_critical(static_cast<int>(n) - 1)) << "n=" << n;
    }
}

TEST(ExactSampler, PythagoreanNorm) {
    const auto v = exact_sampler({3.0, 4.0});
    EXPECT_DOUBLE_EQ(v.norm_estimate(), 5.0);
    EXPECT_EQ(v.zeta(), 0.0);
}

TEST(ExactSampler, NormMatchesSummation) {
    Rng rng(8);
    const auto dense = random_vector(32, rng);
    double sum = 0.0;
    for (const auto& x : dense) sum += x.real() * x.real() + x.imag() * x.imag();
    EXPECT_NEAR(exact_sampler(dense).norm_estimate(), std::sqrt(sum), 1e-12);
}

TEST(ExactSampler, RejectsZeroVector) {
    EXPECT_THROW((void)exact_sampler({0.0, 0.0}), InvalidInput);
}

TEST(SubsetState, UniformOverSupport) {
    const auto v = subset_state(4, {0, 1, 2});
    const auto f = frequencies(v, 90000, 9);
    for (Index j = 0; j < 3; ++j) EXPECT_NEAR(f[j], 1.0 / 3.0, 0.01);
    EXPECT_EQ(f[3], 0.0);
    EXPECT_NEAR(v.norm_estimate(), 1.0, 1e-15);
    EXPECT_NEAR(v.entry(1).real(), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_EQ(v.entry(3), Complex(0.0));
}

TEST(DistortedSampler, ZeroZetaMatchesExact) {
    Rng rng(10);
    const auto dense = random_vector(16, rng);
    const auto exact = exact_sampler(dense);
    const auto distorted = distorted_sampler(dense, 0.0, 99);
    EXPECT_DOUBLE_EQ(distorted.norm_estimate(), exact.norm_estimate());
    ASSERT_TRUE(exact.probabilities() && distorted.probabilities());
    for (Index j = 0; j < 16; ++j) EXPECT_NEAR((*distorted.probabilities())[j], (*exact.probabilities())[j], 1e-15);
}

TEST(DistortedSampler, FrequenciesStayInBand) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto v = distorted_sampler({h, h}, 0.1, 17);
    const auto f = frequencies(v, 100000, 18);
    for (double x : f) {
        EXPECT_GE(x, 0.45);
        EXPECT_LE(x, 0.55);
    }
}

TEST(DistortedSampler, NormWithinBand) {
    const double h = 1.0 / std::sqrt(2.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto v = distorted_sampler({h, h}, 0.1, seed);
        EXPECT_GE(v.norm_estimate(), 0.9 - 1e-12);
        EXPECT_LE(v.norm_estimate(), 1.1 + 1e-12);
    }
}

TEST(DistortedSampler, ProbabilitiesRespectBandAndNormalization) {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const auto dense = random_vector(50, rng);
        const double zeta = 0.2;
        const auto v = distorted_sampler(dense, zeta, 1000 + trial);
        const double norm2 = std::pow(euclidean_norm(dense), 2);
        double total = 0.0;
        for (Index j = 0; j < 50; ++j) {
            const double p = (*v.probabilities())[j];
            const double q = std::norm(dense[j]) / norm2;
            EXPECT_GE(p, (1 - zeta) * q - 1e-15);
            EXPECT_LE(p, (1 + zeta) * q + 1e-15);
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_LE(std::abs(v.norm_estimate() - std::sqrt(norm2)), zeta * std::sqrt(norm2) * (1 + 1e-12));
    }
}

TEST(DistortedSampler, DeterministicGivenSeed) {
    Rng rng(20);
    const auto dense = random_vector(20, rng);
    const auto a = distorted_sampler(dense, 0.1, 5);
    const auto b = distorted_sampler(dense, 0.1, 5);
    EXPECT_EQ(*a.probabilities(), *b.probabilities());
    EXPECT_EQ(a.norm_estimate(), b.norm_estimate());
}

TEST(DistortedSampler, RejectsBadTilt) {
    const std::vector<double> tilt{2.0, -2.0};
    EXPECT_THROW((void)distorted_sampler({1.0, 1.0}, 0.1, tilt, 0.0), ConstructionError);
    EXPECT_THROW((void)distorted_sampler({1.0, 1.0}, 1.0, 1), InvalidInput);
}

}  // namespace
}  // namespace dqsvt
