#pragma once

// Entry evaluation of P(sqrt(A^dagger A)) u through sparse queries, and the
// sampling estimator for v^dagger P(sqrt(A^dagger A)) u.

#include <dqsvt/access.hpp>
#include <dqsvt/polynomial.hpp>

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace dqsvt {

struct QueryStats {
    std::uint64_t matrix_queries = 0;  // row_entry / col_entry calls
    std::uint64_t vector_queries = 0;  // entry reads of u

    QueryStats& operator+=(const QueryStats& o) {
        matrix_queries += o.matrix_queries;
        vector_queries += o.vector_queries;
        return *this;
    }
};

/// Entry i of B[0] B[1] ... B[r-1] u, computed by recursing over the nonzeros
/// of row i of B[0]. With `memoize`, each (level, index) value is computed
/// once per call. Throws ShapeError when the chain dimensions do not line up
/// and RangeError for i out of range.
[[nodiscard]] Complex chain_entry(std::span<const SparseMatrix> chain, const QueryVector& u, Index i,
                                  QueryStats* stats = nullptr, bool memoize = true);

/// Evaluates w = P(sqrt(A^dagger A)) u one entry at a time.
///
/// Monomial polynomials follow the power expansion a_0 u + sum_r a_r (A^dagger
/// A)^r u. Chebyshev polynomials run a Clenshaw recursion in
/// B = 2 A^dagger A - I, where each entry of each Clenshaw vector is expanded
/// through the same row and column queries. With memoization on, values are
/// cached for the lifetime of the evaluator, so repeated entries are free.
class SvtEvaluator {
  public:
    SvtEvaluator(SparseMatrix a, QueryVector u, EvenPolynomial p, bool memoize = true);
    ~SvtEvaluator();
    SvtEvaluator(SvtEvaluator&&) noexcept;
    SvtEvaluator& operator=(SvtEvaluator&&) noexcept;

    /// Throws RangeError for i >= a.cols().
    [[nodiscard]] Complex entry(Index i);

    [[nodiscard]] const QueryStats& stats() const noexcept;
    /// Number of distinct (level, index) values computed so far.
    [[nodiscard]] std::uint64_t cached_values() const noexcept;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Throws ShapeError when a.cols() != u.dimension().
[[nodiscard]] Complex svt_entry(const SparseMatrix& a, const QueryVector& u, const EvenPolynomial& p, Index i,
                                QueryStats* stats = nullptr, bool memoize = true);

/// One draw X = w_j m^2 / v_j with j from the sampler of v. Throws
/// InvalidSampler when the sampled entry of v is zero.
[[nodiscard]] Complex single_sample(const SparseMatrix& a, const QueryVector& u, const SampledVector& v,
                                    const EvenPolynomial& p, Rng& rng);

struct EstimatorConfig {
    double eps = 0.1;
    double fail_prob = 0.01;
    std::uint64_t samples_per_batch = 0;  // r
    std::uint64_t batches = 0;            // K
    std::uint64_t seed = 0;
    unsigned workers = 1;

    /// r = ceil(16 (1 + 7 zeta)^2 / (eps - 7 zeta)^2), K = ceil(18 ln(1/fail_prob)).
    /// Throws ConfigError for eps outside (0, 1], fail_prob outside (0, 1) or
    /// zeta > eps / 8.
    static EstimatorConfig make(double eps, double fail_prob, double zeta, std::uint64_t seed, unsigned workers = 1);
};

[[nodiscard]] std::uint64_t required_samples(double eps, double zeta);
[[nodiscard]] std::uint64_t required_batches(double fail_prob);

struct BilinearEstimate {
    Complex value;
    std::uint64_t samples = 0;
    std::uint64_t batches = 0;
    std::uint64_t distinct_indices = 0;
    QueryStats queries;
};

/// Median over K batches of the mean of r single samples, with the median
/// taken separately on the real and imaginary parts. Sample indices depend
/// only on the seed; entry evaluation is split into fixed chunks of sorted
/// distinct indices, so both the estimate and the query counts are
/// independent of the worker count.
///
/// Throws ConfigError when zeta of v exceeds eps / 8, when the norm estimate
/// rules out ||v|| <= 1, or when the config is inconsistent; ShapeError on
/// dimension mismatch; InvalidSampler for a sampled zero entry.
[[nodiscard]] BilinearEstimate estimate_bilinear(const SparseMatrix& a, const QueryVector& u, const SampledVector& v,
                                                 const EvenPolynomial& p, const EstimatorConfig& cfg);

}  // namespace dqsvt
