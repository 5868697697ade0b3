#include <dqsvt/svt.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace dqsvt {

namespace {

// Dense per-level cache for small dimensions, hash map otherwise.
class LevelCache {
  public:
    LevelCache(Index dimension, std::size_t levels) : dim_(dimension), dense_(dimension <= kDenseLimit) {
        if (dense_) {
            values_.resize(levels);
            present_.resize(levels);
        } else {
            maps_.resize(levels);
        }
    }

    const Complex* find(std::size_t level, Index j) const {
        if (dense_) {
            if (present_[level].empty() || !present_[level][j]) return nullptr;
            return &values_[level][j];
        }
        auto it = maps_[level].find(j);
        return it == maps_[level].end() ? nullptr : &it->second;
    }

    void store(std::size_t level, Index j, Complex v) {
        ++count_;
        if (dense_) {
            if (present_[level].empty()) {
                values_[level].assign(dim_, Complex{});
                present_[level].assign(dim_, 0);
            }
            values_[level][j] = v;
            present_[level][j] = 1;
        } else {
            maps_[level].emplace(j, v);
        }
    }

    std::uint64_t count() const noexcept { return count_; }

  private:
    static constexpr Index kDenseLimit = 4096;
    Index dim_;
    bool dense_;
    std::vector<std::vector<Complex>> values_;
    std::vector<std::vector<char>> present_;
    std::vector<std::unordered_map<Index, Complex>> maps_;
    std::uint64_t count_ = 0;
};

struct ChainWalker {
    std::span<const SparseMatrix> chain;
    const QueryVector& u;
    QueryStats& stats;
    bool memoize;
    std::vector<std::unordered_map<Index, Complex>> memo;

    Complex value(std::size_t level, Index idx) {
        if (level == chain.size()) {
            ++stats.vector_queries;
            return u[idx];
        }
        if (memoize) {
            auto it = memo[level].find(idx);
            if (it != memo[level].end()) return it->second;
        }
        const SparseMatrix& b = chain[level];
        Complex acc{};
        for (Index l = 0; l < b.sparsity(); ++l) {
            ++stats.matrix_queries;
            auto e = b.row_entry(idx, l);
            if (!e) break;
            acc += e->value * value(level + 1, e->index);
        }
        if (memoize) memo[level].emplace(idx, acc);
        return acc;
    }
};

}  // namespace

Complex chain_entry(std::span<const SparseMatrix> chain, const QueryVector& u, Index i, QueryStats* stats,
                    bool memoize) {
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        if (chain[k].cols() != chain[k + 1].rows()) {
            throw ShapeError("chain_entry: factor " + std::to_string(k) + " has " +
                             std::to_string(chain[k].cols()) + " columns but factor " + std::to_string(k + 1) +
                             " has " + std::to_string(chain[k + 1].rows()) + " rows");
        }
    }
    if (!chain.empty() && chain.back().cols() != u.dimension()) {
        throw ShapeError("chain_entry: last factor has " + std::to_string(chain.back().cols()) +
                         " columns but u has dimension " + std::to_string(u.dimension()));
    }
    const Index top = chain.empty() ? u.dimension() : chain.front().rows();
    if (i >= top) throw RangeError("chain_entry: index " + std::to_string(i) + " out of range");

    QueryStats local;
    ChainWalker walker{chain, u, local, memoize, {}};
    walker.memo.resize(chain.size());
    const Complex out = walker.value(0, i);
    if (stats) *stats += local;
    return out;
}

// ---------------------------------------------------------------------------
// SvtEvaluator

struct SvtEvaluator::Impl {
    SparseMatrix a;
    QueryVector u;
    EvenPolynomial p;
    bool memoize;
    std::vector<double> c;
    std::size_t d;
    QueryStats stats;
    // xcache holds x_k entries, hcache holds (A x_k) entries, both keyed by k.
    LevelCache xcache;
    LevelCache hcache;
    std::vector<Complex> ucache;
    std::vector<char> uknown;

    Impl(SparseMatrix a_, QueryVector u_, EvenPolynomial p_, bool memo)
        : a(std::move(a_)),
          u(std::move(u_)),
          p(std::move(p_)),
          memoize(memo),
          c(p.coefficients().begin(), p.coefficients().end()),
          d(c.size() - 1),
          xcache(a.cols(), d + 3),
          hcache(a.rows(), d + 3) {
        if (a.cols() != u.dimension()) {
            throw ShapeError("svt: matrix has " + std::to_string(a.cols()) + " columns but u has dimension " +
                             std::to_string(u.dimension()));
        }
        if (memoize && u.dimension() <= (Index{1} << 16)) {
            ucache.resize(u.dimension());
            uknown.assign(u.dimension(), 0);
        }
    }

    Complex u_at(Index j) {
        if (!ucache.empty() && uknown[j]) return ucache[j];
        ++stats.vector_queries;
        const Complex v = u[j];
        if (!ucache.empty()) {
            ucache[j] = v;
            uknown[j] = 1;
        }
        return v;
    }

    // (A x_k)_l for the level-k vector x_k.
    Complex a_times(std::size_t k, Index l) {
        if (memoize) {
            if (const Complex* hit = hcache.find(k, l)) return *hit;
        }
        Complex acc{};
        for (Index r = 0; r < a.sparsity(); ++r) {
            ++stats.matrix_queries;
            auto e = a.row_entry(l, r);
            if (!e) break;
            acc += e->value * x(k, e->index);
        }
        if (memoize) hcache.store(k, l, acc);
        return acc;
    }

    // (A^dagger A x_k)_j
    Complex gram_times(std::size_t k, Index j) {
        if (p.basis() == EvenPolynomial::Basis::kChebyshev && k > d) return Complex{};
        Complex acc{};
        for (Index r = 0; r < a.sparsity(); ++r) {
            ++stats.matrix_queries;
            auto e = a.col_entry(j, r);
            if (!e) break;
            acc += std::conj(e->value) * a_times(k, e->index);
        }
        return acc;
    }

    // Monomial basis: x_k = (A^dagger A)^k u. Chebyshev basis: x_k is the
    // Clenshaw vector b_k, zero for k > d.
    Complex x(std::size_t k, Index j) {
        if (p.basis() == EvenPolynomial::Basis::kMonomial) {
            if (k == 0) return u_at(j);
        } else if (k > d) {
            return Complex{};
        }
        if (memoize) {
            if (const Complex* hit = xcache.find(k, j)) return *hit;
        }
        Complex v;
        if (p.basis() == EvenPolynomial::Basis::kMonomial) {
            v = gram_times(k - 1, j);
        } else {
            v = c[k] * u_at(j) + 2.0 * (2.0 * gram_times(k + 1, j) - x(k + 1, j)) - x(k + 2, j);
        }
        if (memoize) xcache.store(k, j, v);
        return v;
    }

    Complex entry(Index i) {
        if (i >= a.cols()) throw RangeError("svt_entry: index " + std::to_string(i) + " out of range");
        if (p.basis() == EvenPolynomial::Basis::kMonomial) {
            Complex acc{};
            for (std::size_t r = 0; r <= d; ++r) {
                if (c[r] != 0.0) acc += c[r] * x(r, i);
            }
            return acc;
        }
        if (d == 0) return c[0] * u_at(i);
        return c[0] * u_at(i) + (2.0 * gram_times(1, i) - x(1, i)) - x(2, i);
    }
};

SvtEvaluator::SvtEvaluator(SparseMatrix a, QueryVector u, EvenPolynomial p, bool memoize)
    : impl_(std::make_unique<Impl>(std::move(a), std::move(u), std::move(p), memoize)) {}
SvtEvaluator::~SvtEvaluator() = default;
SvtEvaluator::SvtEvaluator(SvtEvaluator&&) noexcept = default;
SvtEvaluator& SvtEvaluator::operator=(SvtEvaluator&&) noexcept = default;

Complex SvtEvaluator::entry(Index i) { return impl_->entry(i); }
const QueryStats& SvtEvaluator::stats() const noexcept { return impl_->stats; }
std::uint64_t SvtEvaluator::cached_values() const noexcept {
    return impl_->xcache.count() + impl_->hcache.count();
}

Complex svt_entry(const SparseMatrix& a, const QueryVector& u, const EvenPolynomial& p, Index i, QueryStats* stats,
                  bool memoize) {
    SvtEvaluator ev(a, u, p, memoize);
    const Complex out = ev.entry(i);
    if (stats) *stats += ev.stats();
    return out;
}

Complex single_sample(const SparseMatrix& a, const QueryVector& u, const SampledVector& v, const EvenPolynomial& p,
                      Rng& rng) {
    const Index j = v.sample(rng);
    const Complex vj = v.entry(j);
    if (vj == Complex{}) throw InvalidSampler("sampler returned index " + std::to_string(j) + " with zero entry");
    const double m = v.norm_estimate();
    return svt_entry(a, u, p, j) * (m * m) / vj;
}

// ---------------------------------------------------------------------------
// Estimator

std::uint64_t required_samples(double eps, double zeta) {
    const double num = 16.0 * (1.0 + 7.0 * zeta) * (1.0 + 7.0 * zeta);
    const double den = (eps - 7.0 * zeta) * (eps - 7.0 * zeta);
    return static_cast<std::uint64_t>(std::ceil(num / den));
}

std::uint64_t required_batches(double fail_prob) {
    return static_cast<std::uint64_t>(std::ceil(18.0 * std::log(1.0 / fail_prob)));
}

EstimatorConfig EstimatorConfig::make(double eps, double fail_prob, double zeta, std::uint64_t seed,
                                      unsigned workers) {
    if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("eps must lie in (0, 1]");
    if (!(fail_prob > 0.0 && fail_prob < 1.0)) throw ConfigError("failure probability must lie in (0, 1)");
    if (!(zeta >= 0.0) || zeta > eps / 8.0) {
        throw ConfigError("zeta = " + std::to_string(zeta) + " exceeds eps / 8 = " + std::to_string(eps / 8.0));
    }
    EstimatorConfig cfg;
    cfg.eps = eps;
    cfg.fail_prob = fail_prob;
    cfg.samples_per_batch = required_samples(eps, zeta);
    cfg.batches = required_batches(fail_prob);
    cfg.seed = seed;
    cfg.workers = std::max(1u, workers);
    return cfg;
}

namespace {

double median(std::vector<double> xs) {
    const std::size_t n = xs.size();
    std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
    const double hi = xs[n / 2];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(xs.begin(), xs.begin() + n / 2);
    return 0.5 * (lo + hi);
}

constexpr std::size_t kChunk = 256;

}  // namespace

BilinearEstimate estimate_bilinear(const SparseMatrix& a, const QueryVector& u, const SampledVector& v,
                                   const EvenPolynomial& p, const EstimatorConfig& cfg) {
    if (a.cols() != u.dimension() || v.dimension() != u.dimension()) {
        throw ShapeError("estimate_bilinear: dimensions of A, u and v disagree");
    }
    if (cfg.samples_per_batch == 0 || cfg.batches == 0) throw ConfigError("estimate_bilinear: empty config");
    if (v.zeta() > cfg.eps / 8.0) {
        throw ConfigError("zeta of v = " + std::to_string(v.zeta()) + " exceeds eps / 8 = " +
                          std::to_string(cfg.eps / 8.0));
    }
    if (v.norm_estimate() / (1.0 + v.zeta()) > 1.0 + 1e-12) {
        throw ConfigError("norm estimate of v implies ||v|| > 1");
    }

    const std::uint64_t r = cfg.samples_per_batch;
    const std::uint64_t k = cfg.batches;
    std::vector<Index> draws(r * k);
    for (std::uint64_t b = 0; b < k; ++b) {
        Rng rng(derive_seed(cfg.seed, b));
        for (std::uint64_t t = 0; t < r; ++t) draws[b * r + t] = v.sample(rng);
    }

    std::vector<Index> distinct = draws;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    // X_j = w_j m^2 / v_j for each distinct index, chunk by chunk.
    std::vector<Complex> xval(distinct.size());
    const std::size_t chunks = (distinct.size() + kChunk - 1) / kChunk;
    std::vector<QueryStats> chunk_stats(chunks);
    const double m2 = v.norm_estimate() * v.norm_estimate();
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;

    auto work = [&] {
        for (;;) {
            const std::size_t ch = next.fetch_add(1);
            if (ch >= chunks) return;
            try {
                SvtEvaluator ev(a, u, p);
                const std::size_t end = std::min(distinct.size(), (ch + 1) * kChunk);
                for (std::size_t q = ch * kChunk; q < end; ++q) {
                    const Index j = distinct[q];
                    const Complex vj = v.entry(j);
                    if (vj == Complex{}) {
                        throw InvalidSampler("sampler returned index " + std::to_string(j) + " with zero entry");
                    }
                    xval[q] = ev.entry(j) * m2 / vj;
                }
                chunk_stats[ch] = ev.stats();
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(cfg.workers, std::max<std::size_t>(chunks, 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);

    std::vector<double> re(k);
    std::vector<double> im(k);
    for (std::uint64_t b = 0; b < k; ++b) {
        Complex sum{};
        for (std::uint64_t t = 0; t < r; ++t) {
            const Index j = draws[b * r + t];
            const auto pos = std::lower_bound(distinct.begin(), distinct.end(), j) - distinct.begin();
            sum += xval[static_cast<std::size_t>(pos)];
        }
        sum /= static_cast<double>(r);
        re[b] = sum.real();
        im[b] = sum.imag();
    }

    BilinearEstimate out;
    out.value = Complex(median(std::move(re)), median(std::move(im)));
    out.samples = r * k;
    out.batches = k;
    out.distinct_indices = distinct.size();
    for (const auto& s : chunk_stats) out.queries += s;
    return out;
}

}  // namespace dqsvt
