#pragma once

// Query and sampling access to vectors and sparse matrices. These types are
// the only way the estimators touch input data.
//
// Indices are zero-based throughout the C++ API. The text formats in io.hpp
// are one-based.

#include <dqsvt/common.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace dqsvt {

/// Read-only vector with deterministic per-index access.
class QueryVector {
  public:
    using Oracle = std::function<Complex(Index)>;

    explicit QueryVector(std::vector<Complex> dense);
    QueryVector(Index dimension, Oracle oracle);

    [[nodiscard]] Index dimension() const noexcept { return dim_; }

    /// Throws RangeError when i >= dimension().
    [[nodiscard]] Complex entry(Index i) const;

    /// No bounds check.
    [[nodiscard]] Complex operator[](Index i) const { return dense_ ? (*dense_)[i] : oracle_(i); }

    [[nodiscard]] bool is_dense() const noexcept { return dense_ != nullptr; }
    [[nodiscard]] std::vector<Complex> to_dense() const;

  private:
    Index dim_ = 0;
    std::shared_ptr<const std::vector<Complex>> dense_;
    Oracle oracle_;
};

[[nodiscard]] Complex query_entry(const QueryVector& v, Index i);

struct MatrixEntry {
    Index index;  // column for row queries, row for column queries
    Complex value;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

struct Triplet {
    Index row;
    Index col;
    Complex value;
};

/// Complex s-sparse matrix indexed by both rows and columns. Nonzeros inside
/// a row (column) are kept in ascending column (row) order, so "the l-th
/// nonzero" is well defined.
///
/// Copies share storage. adjoint() is O(1): it swaps the row and column
/// indexes and conjugates values on read.
class SparseMatrix {
  public:
    /// Zero-valued triplets are dropped. Duplicate (row, col) pairs and out of
    /// range positions throw InvalidInput. When `sparsity` is given it is an
    /// upper bound every row and column must respect; otherwise the smallest
    /// valid bound is used.
    SparseMatrix(Index rows, Index cols, std::vector<Triplet> entries,
                 std::optional<Index> sparsity = std::nullopt);

    static SparseMatrix identity(Index n);
    /// Row-major dense input.
    static SparseMatrix from_dense(Index rows, Index cols, std::span<const Complex> values,
                                   std::optional<Index> sparsity = std::nullopt);

    [[nodiscard]] Index rows() const noexcept;
    [[nodiscard]] Index cols() const noexcept;
    [[nodiscard]] Index sparsity() const noexcept;
    [[nodiscard]] Index nnz() const noexcept;
    [[nodiscard]] bool is_adjoint_view() const noexcept { return adjoint_; }

    /// l-th nonzero of row i (l < sparsity()), or nullopt when the row has
    /// fewer than l+1 nonzeros. Throws RangeError for i or l out of range.
    [[nodiscard]] std::optional<MatrixEntry> row_entry(Index i, Index l) const;
    [[nodiscard]] std::optional<MatrixEntry> col_entry(Index j, Index l) const;

    [[nodiscard]] Index row_nnz(Index i) const;
    [[nodiscard]] Index col_nnz(Index j) const;

    [[nodiscard]] SparseMatrix adjoint() const;

    /// All nonzeros in ascending (row, col) order.
    [[nodiscard]] std::vector<Triplet> triplets() const;

    /// Row-major dense copy.
    [[nodiscard]] std::vector<Complex> to_dense() const;

  private:
    struct Storage;
    SparseMatrix(std::shared_ptr<const Storage> storage, bool adjoint);

    std::shared_ptr<const Storage> storage_;
    bool adjoint_ = false;
};

[[nodiscard]] std::optional<MatrixEntry> query_row_entry(const SparseMatrix& a, Index i, Index l);
[[nodiscard]] std::optional<MatrixEntry> query_col_entry(const SparseMatrix& a, Index j, Index l);

/// Query access plus an index sampler and a norm estimate, with distortion
/// parameter zeta in [0, 1).
class SampledVector {
  public:
    using Sampler = std::function<Index(Rng&)>;

    /// `probabilities`, when supplied, is the exact distribution the sampler
    /// draws from; it is only used for diagnostics and tests.
    SampledVector(QueryVector base, Sampler sampler, double norm_estimate, double zeta,
                  std::optional<std::vector<double>> probabilities = std::nullopt);

    [[nodiscard]] const QueryVector& base() const noexcept { return base_; }
    [[nodiscard]] Index dimension() const noexcept { return base_.dimension(); }
    [[nodiscard]] double norm_estimate() const noexcept { return norm_estimate_; }
    [[nodiscard]] double zeta() const noexcept { return zeta_; }
    [[nodiscard]] Complex entry(Index i) const { return base_.entry(i); }
    [[nodiscard]] Index sample(Rng& rng) const { return sampler_(rng); }
    [[nodiscard]] const std::optional<std::vector<double>>& probabilities() const noexcept {
        return probabilities_;
    }

  private:
    QueryVector base_;
    Sampler sampler_;
    double norm_estimate_;
    double zeta_;
    std::optional<std::vector<double>> probabilities_;
};

[[nodiscard]] Index sample_index(const SampledVector& v, Rng& rng);

/// Inverse-CDF sampler over a nonnegative weight vector. Indices with zero
/// weight are never returned.
class DiscreteSampler {
  public:
    explicit DiscreteSampler(std::span<const double> weights);
    [[nodiscard]] Index operator()(Rng& rng) const;
    [[nodiscard]] double total() const noexcept { return cdf_.empty() ? 0.0 : cdf_.back(); }

  private:
    std::vector<double> cdf_;
};

/// zeta = 0 sampling access to an explicitly stored vector; m is the exact
/// Euclidean norm. Throws InvalidInput for an all-zero or non-finite vector.
[[nodiscard]] SampledVector exact_sampler(std::vector<Complex> dense);

/// zeta-sampling access whose distribution is |v_j|^2/||v||^2 scaled by a
/// per-index factor 1 + zeta * tilt_j with tilt_j in [-1, 1] and
/// sum_j tilt_j |v_j|^2 = 0, so the distribution stays normalized inside the
/// (1 +- zeta) band. The norm estimate is (1 + zeta * norm_tilt) ||v||.
/// Tilts are rebalanced to zero mean before use; a tilt outside [-1, 1] or a
/// band violation throws ConstructionError.
[[nodiscard]] SampledVector distorted_sampler(std::vector<Complex> dense, double zeta,
                                              std::span<const double> tilt, double norm_tilt);

/// Same, with random +-1 tilts drawn deterministically from `seed`.
[[nodiscard]] SampledVector distorted_sampler(std::vector<Complex> dense, double zeta,
                                              std::uint64_t seed);

/// Uniform superposition over `support` (distinct indices below
/// `dimension`), with query access computed from the description and exact
/// uniform sampling over the support.
[[nodiscard]] SampledVector subset_state(Index dimension, std::vector<Index> support);

[[nodiscard]] double euclidean_norm(std::span<const Complex> v);

}  // namespace dqsvt
