#include <dqsvt/access.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dqsvt {

// ---------------------------------------------------------------------------
// QueryVector

QueryVector::QueryVector(std::vector<Complex> dense)
    : dim_(dense.size()), dense_(std::make_shared<const std::vector<Complex>>(std::move(dense))) {
    if (dim_ == 0) throw InvalidInput("QueryVector: dimension must be positive");
}

QueryVector::QueryVector(Index dimension, Oracle oracle) : dim_(dimension), oracle_(std::move(oracle)) {
    if (dim_ == 0) throw InvalidInput("QueryVector: dimension must be positive");
    if (!oracle_) throw InvalidInput("QueryVector: empty oracle");
}

Complex QueryVector::entry(Index i) const {
    if (i >= dim_) {
        throw RangeError("vector index " + std::to_string(i) + " out of range [0, " + std::to_string(dim_) + ")");
    }
    return (*this)[i];
}

std::vector<Complex> QueryVector::to_dense() const {
    if (dense_) return *dense_;
    std::vector<Complex> out(dim_);
    for (Index i = 0; i < dim_; ++i) out[i] = oracle_(i);
    return out;
}

Complex query_entry(const QueryVector& v, Index i) { return v.entry(i); }

// ---------------------------------------------------------------------------
// SparseMatrix

struct SparseMatrix::Storage {
    Index rows = 0;
    Index cols = 0;
    Index sparsity = 0;
    // CSR
    std::vector<Index> row_ptr;
    std::vector<Index> col_idx;
    std::vector<Complex> row_val;
    // CSC
    std::vector<Index> col_ptr;
    std::vector<Index> row_idx;
    std::vector<Complex> col_val;
};

SparseMatrix::SparseMatrix(std::shared_ptr<const Storage> storage, bool adjoint)
    : storage_(std::move(storage)), adjoint_(adjoint) {}

SparseMatrix::SparseMatrix(Index rows, Index cols, std::vector<Triplet> entries, std::optional<Index> sparsity) {
    if (rows == 0 || cols == 0) throw InvalidInput("SparseMatrix: dimensions must be positive");
    std::erase_if(entries, [](const Triplet& t) { return t.value == Complex{0.0, 0.0}; });
    for (const auto& t : entries) {
        if (t.row >= rows || t.col >= cols) {
            throw InvalidInput("SparseMatrix: entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                               ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        }
        if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag())) {
            throw InvalidInput("SparseMatrix: non-finite entry");
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
    for (std::size_t k = 1; k < entries.size(); ++k) {
        if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
            throw InvalidInput("SparseMatrix: duplicate entry (" + std::to_string(entries[k].row) + ", " +
                               std::to_string(entries[k].col) + ")");
        }
    }

    auto st = std::make_shared<Storage>();
    st->rows = rows;
    st->cols = cols;
    st->row_ptr.assign(rows + 1, 0);
    st->col_ptr.assign(cols + 1, 0);
    for (const auto& t : entries) {
        ++st->row_ptr[t.row + 1];
        ++st->col_ptr[t.col + 1];
    }
    Index max_count = 0;
    for (Index i = 0; i < rows; ++i) max_count = std::max(max_count, st->row_ptr[i + 1]);
    for (Index j = 0; j < cols; ++j) max_count = std::max(max_count, st->col_ptr[j + 1]);
    std::partial_sum(st->row_ptr.begin(), st->row_ptr.end(), st->row_ptr.begin());
    std::partial_sum(st->col_ptr.begin(), st->col_ptr.end(), st->col_ptr.begin());

    if (sparsity) {
        if (max_count > *sparsity) {
            throw InvalidInput("SparseMatrix: a row or column has " + std::to_string(max_count) +
                               " nonzeros, exceeding sparsity " + std::to_string(*sparsity));
        }
        st->sparsity = *sparsity;
    } else {
        st->sparsity = std::max<Index>(max_count, 1);
    }
    if (st->sparsity == 0) throw InvalidInput("SparseMatrix: sparsity must be positive");

    st->col_idx.reserve(entries.size());
    st->row_val.reserve(entries.size());
    for (const auto& t : entries) {
        st->col_idx.push_back(t.col);
        st->row_val.push_back(t.value);
    }
    // Entries are sorted by (row, col), so a stable pass per column keeps rows ascending.
    st->row_idx.resize(entries.size());
    st->col_val.resize(entries.size());
    std::vector<Index> fill(st->col_ptr.begin(), st->col_ptr.end() - 1);
    for (const auto& t : entries) {
        const Index pos = fill[t.col]++;
        st->row_idx[pos] = t.row;
        st->col_val[pos] = t.value;
    }
    storage_ = std::move(st);
}

SparseMatrix SparseMatrix::identity(Index n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return SparseMatrix(n, n, std::move(t), 1);
}

SparseMatrix SparseMatrix::from_dense(Index rows, Index cols, std::span<const Complex> values,
                                      std::optional<Index> sparsity) {
    if (values.size() != rows * cols) throw ShapeError("from_dense: value count does not match shape");
    std::vector<Triplet> t;
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            if (values[i * cols + j] != Complex{}) t.push_back({i, j, values[i * cols + j]});
        }
    }
    return SparseMatrix(rows, cols, std::move(t), sparsity);
}

Index SparseMatrix::rows() const noexcept { return adjoint_ ? storage_->cols : storage_->rows; }
Index SparseMatrix::cols() const noexcept { return adjoint_ ? storage_->rows : storage_->cols; }
Index SparseMatrix::sparsity() const noexcept { return storage_->sparsity; }
Index SparseMatrix::nnz() const noexcept { return storage_->col_idx.size(); }

namespace {

std::optional<MatrixEntry> compressed_entry(const std::vector<Index>& ptr, const std::vector<Index>& idx,
                                            const std::vector<Complex>& val, Index line, Index l, bool conjugate) {
    const Index begin = ptr[line];
    const Index count = ptr[line + 1] - begin;
    if (l >= count) return std::nullopt;
    const Complex v = val[begin + l];
    return MatrixEntry{idx[begin + l], conjugate ? std::conj(v) : v};
}

void check_query(Index line, Index extent, Index l, Index s, const char* what) {
    if (line >= extent) {
        throw RangeError(std::string(what) + " index " + std::to_string(line) + " out of range [0, " +
                         std::to_string(extent) + ")");
    }
    if (l >= s) {
        throw RangeError("nonzero rank " + std::to_string(l) + " exceeds sparsity " + std::to_string(s));
    }
}

}  // namespace

std::optional<MatrixEntry> SparseMatrix::row_entry(Index i, Index l) const {
    check_query(i, rows(), l, sparsity(), "row");
    const auto& st = *storage_;
    return adjoint_ ? compressed_entry(st.col_ptr, st.row_idx, st.col_val, i, l, true)
                    : compressed_entry(st.row_ptr, st.col_idx, st.row_val, i, l, false);
}

std::optional<MatrixEntry> SparseMatrix::col_entry(Index j, Index l) const {
    check_query(j, cols(), l, sparsity(), "column");
    const auto& st = *storage_;
    return adjoint_ ? compressed_entry(st.row_ptr, st.col_idx, st.row_val, j, l, true)
                    : compressed_entry(st.col_ptr, st.row_idx, st.col_val, j, l, false);
}

Index SparseMatrix::row_nnz(Index i) const {
    if (i >= rows()) throw RangeError("row index out of range");
    const auto& p = adjoint_ ? storage_->col_ptr : storage_->row_ptr;
    return p[i + 1] - p[i];
}

Index SparseMatrix::col_nnz(Index j) const {
    if (j >= cols()) throw RangeError("column index out of range");
    const auto& p = adjoint_ ? storage_->row_ptr : storage_->col_ptr;
    return p[j + 1] - p[j];
}

SparseMatrix SparseMatrix::adjoint() const { return SparseMatrix(storage_, !adjoint_); }

std::vector<Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (Index i = 0; i < rows(); ++i) {
        for (Index l = 0; l < sparsity(); ++l) {
            auto e = row_entry(i, l);
            if (!e) break;
            out.push_back({i, e->index, e->value});
        }
    }
    return out;
}

std::vector<Complex> SparseMatrix::to_dense() const {
    std::vector<Complex> out(rows() * cols());
    for (const auto& t : triplets()) out[t.row * cols() + t.col] = t.value;
    return out;
}

std::optional<MatrixEntry> query_row_entry(const SparseMatrix& a, Index i, Index l) { return a.row_entry(i, l); }
std::optional<MatrixEntry> query_col_entry(const SparseMatrix& a, Index j, Index l) { return a.col_entry(j, l); }

// ---------------------------------------------------------------------------
// Sampling

SampledVector::SampledVector(QueryVector base, Sampler sampler, double norm_estimate, double zeta,
                             std::optional<std::vector<double>> probabilities)
    : base_(std::move(base)),
      sampler_(std::move(sampler)),
      norm_estimate_(norm_estimate),
      zeta_(zeta),
      probabilities_(std::move(probabilities)) {
    if (!sampler_) throw InvalidInput("SampledVector: empty sampler");
    if (!(zeta_ >= 0.0 && zeta_ < 1.0)) throw InvalidInput("SampledVector: zeta must lie in [0, 1)");
    if (!(norm_estimate_ > 0.0) || !std::isfinite(norm_estimate_)) {
        throw InvalidInput("SampledVector: norm estimate must be positive (zero vector?)");
    }
    if (probabilities_ && probabilities_->size() != base_.dimension()) {
        throw ShapeError("SampledVector: distribution size does not match dimension");
    }
}

Index sample_index(const SampledVector& v, Rng& rng) { return v.sample(rng); }

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
    cdf_.resize(weights.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        if (!(weights[j] >= 0.0) || !std::isfinite(weights[j])) throw InvalidInput("DiscreteSampler: bad weight");
        acc += weights[j];
        cdf_[j] = acc;
    }
    if (!(acc > 0.0)) throw InvalidInput("DiscreteSampler: all weights are zero");
}

Index DiscreteSampler::operator()(Rng& rng) const {
    const double total = cdf_.back();
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) {
        // u rounded up to the total; take the last index with positive weight.
        it = std::lower_bound(cdf_.begin(), cdf_.end(), total);
    }
    return static_cast<Index>(it - cdf_.begin());
}

double euclidean_norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

namespace {

std::vector<double> squared_magnitudes(const std::vector<Complex>& dense) {
    std::vector<double> w(dense.size());
    for (std::size_t j = 0; j < dense.size(); ++j) {
        if (!std::isfinite(dense[j].real()) || !std::isfinite(dense[j].imag())) {
            throw InvalidInput("sampler: non-finite entry at index " + std::to_string(j));
        }
        w[j] = std::norm(dense[j]);
    }
    return w;
}

}  // namespace

SampledVector exact_sampler(std::vector<Complex> dense) {
    auto w = squared_magnitudes(dense);
    const double norm = euclidean_norm(dense);
    if (!(norm > 0.0)) throw InvalidInput("exact_sampler: all-zero vector");
    auto sampler = std::make_shared<const DiscreteSampler>(w);
    for (auto& x : w) x /= norm * norm;
    return SampledVector(QueryVector(std::move(dense)), [sampler](Rng& rng) { return (*sampler)(rng); }, norm, 0.0,
                         std::move(w));
}

SampledVector distorted_sampler(std::vector<Complex> dense, double zeta, std::span<const double> tilt,
                                double norm_tilt) {
    if (!(zeta >= 0.0 && zeta < 1.0)) throw InvalidInput("distorted_sampler: zeta must lie in [0, 1)");
    if (tilt.size() != dense.size()) throw ShapeError("distorted_sampler: tilt size does not match vector");
    if (!(norm_tilt >= -1.0 && norm_tilt <= 1.0)) throw ConstructionError("distorted_sampler: norm tilt outside [-1, 1]");
    const auto w = squared_magnitudes(dense);
    const double norm = euclidean_norm(dense);
    if (!(norm > 0.0)) throw InvalidInput("distorted_sampler: all-zero vector");

    // Shrink whichever side of the tilt carries excess mass so that
    // sum_j tilt_j w_j = 0; the tilted weights then already sum to ||v||^2.
    std::vector<double> t(tilt.begin(), tilt.end());
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (!(t[j] >= -1.0 && t[j] <= 1.0)) throw ConstructionError("distorted_sampler: tilt outside [-1, 1]");
        (t[j] > 0 ? pos : neg) += std::abs(t[j]) * w[j];
    }
    if (pos > neg && pos > 0.0) {
        for (auto& x : t) if (x > 0) x *= neg / pos;
    } else if (neg > pos && neg > 0.0) {
        for (auto& x : t) if (x < 0) x *= pos / neg;
    }

    std::vector<double> weights(w.size());
    std::vector<double> probs(w.size());
    const double total = norm * norm;
    for (std::size_t j = 0; j < w.size(); ++j) {
        weights[j] = w[j] * (1.0 + zeta * t[j]);
        probs[j] = weights[j] / total;
        const double exact = w[j] / total;
        const double slack = 1e-12 * exact;
        if (probs[j] < (1.0 - zeta) * exact - slack || probs[j] > (1.0 + zeta) * exact + slack) {
            throw ConstructionError("distorted_sampler: probability band violated at index " + std::to_string(j));
        }
    }
    auto sampler = std::make_shared<const DiscreteSampler>(weights);
    const double m = norm * (1.0 + zeta * norm_tilt);
    return SampledVector(QueryVector(std::move(dense)), [sampler](Rng& rng) { return (*sampler)(rng); }, m, zeta,
                         std::move(probs));
}

SampledVector distorted_sampler(std::vector<Complex> dense, double zeta, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xd15702));
    std::vector<double> tilt(dense.size());
    for (auto& x : tilt) x = (rng() & 1U) ? 1.0 : -1.0;
    const double norm_tilt = (rng() & 1U) ? 1.0 : -1.0;
    return distorted_sampler(std::move(dense), zeta, tilt, norm_tilt);
}

SampledVector subset_state(Index dimension, std::vector<Index> support) {
    if (support.empty()) throw InvalidInput("subset_state: empty support");
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
        throw InvalidInput("subset_state: repeated support index");
    }
    if (support.back() >= dimension) throw InvalidInput("subset_state: support index outside dimension");
    const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
    auto set = std::make_shared<const std::vector<Index>>(std::move(support));
    QueryVector q(dimension, [set, amp](Index i) {
        return std::binary_search(set->begin(), set->end(), i) ? Complex{amp, 0.0} : Complex{};
    });
    auto sampler = [set](Rng& rng) {
        const auto k = static_cast<Index>(uniform01(rng) * static_cast<double>(set->size()));
        return (*set)[std::min(k, set->size() - 1)];
    };
    return SampledVector(std::move(q), sampler, 1.0, 0.0);
}

}  // namespace dqsvt
