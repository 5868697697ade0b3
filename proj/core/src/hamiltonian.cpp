#include <dqsvt/hamiltonian.hpp>

#include <dqsvt/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace dqsvt {

void LocalHamiltonian::validate() const {
    if (n < 0) throw InvalidInput("hamiltonian: negative qubit count");
    if (k < 0) throw InvalidInput("hamiltonian: negative locality");
    if (k > kMaxLocality) throw SizeError("hamiltonian: locality above " + std::to_string(kMaxLocality));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& term = terms[t];
        const std::string where = "hamiltonian term " + std::to_string(t) + ": ";
        if (static_cast<int>(term.qubits.size()) > k) throw InvalidInput(where + "acts on more than k qubits");
        auto sorted = term.qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvalidInput(where + "repeated qubit");
        }
        for (int q : term.qubits) {
            if (q < 0 || q >= n) throw InvalidInput(where + "qubit " + std::to_string(q) + " out of range");
        }
        const Index dim = term.block_dim();
        if (term.block.size() != dim * dim) throw InvalidInput(where + "block has the wrong size");
        for (Index r = 0; r < dim; ++r) {
            for (Index c = 0; c < dim; ++c) {
                const Complex x = term.block[r * dim + c];
                if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
                    throw InvalidInput(where + "non-finite entry");
                }
                if (std::abs(x - std::conj(term.block[c * dim + r])) > 1e-12) {
                    throw InvalidInput(where + "block is not Hermitian");
                }
            }
        }
    }
}

double gershgorin_bound(const SparseMatrix& h) {
    double best = 0.0;
    for (Index i = 0; i < h.rows(); ++i) {
        double row = 0.0;
        for (Index l = 0; l < h.sparsity(); ++l) {
            auto e = h.row_entry(i, l);
            if (!e) break;
            row += std::abs(e->value);
        }
        best = std::max(best, row);
    }
    return best;
}

namespace {

SparseMatrix assemble_raw(const LocalHamiltonian& h, bool shift) {
    const Index dim = h.dimension();
    std::vector<Triplet> entries;
    std::map<Index, Complex> row;
    Index max_row = 0;
    const double scale = shift ? 0.25 : 1.0;
    for (Index x = 0; x < dim; ++x) {
        row.clear();
        if (shift) row[x] += 0.75;
        for (const auto& term : h.terms) {
            const Index bd = term.block_dim();
            const std::size_t j = term.qubits.size();
            Index mask = 0;
            Index local_row = 0;
            for (std::size_t q = 0; q < j; ++q) {
                const int bit = h.n - 1 - term.qubits[q];
                mask |= Index{1} << bit;
                local_row |= ((x >> bit) & 1U) << (j - 1 - q);
            }
            for (Index c = 0; c < bd; ++c) {
                const Complex v = term.block[local_row * bd + c];
                if (v == Complex{}) continue;
                Index y = x & ~mask;
                for (std::size_t q = 0; q < j; ++q) {
                    y |= ((c >> (j - 1 - q)) & 1U) << (h.n - 1 - term.qubits[q]);
                }
                row[y] += scale * v;
            }
        }
        Index count = 0;
        for (const auto& [col, v] : row) {
            if (v == Complex{}) continue;
            entries.push_back({x, col, v});
            ++count;
        }
        max_row = std::max(max_row, count);
    }

    Index bound = shift ? 1 : 0;
    for (const auto& term : h.terms) bound += term.block_dim();
    if (max_row > bound) throw InconsistencyError("assemble_sparse: row sparsity exceeds the m 2^k bound");
    return SparseMatrix(dim, dim, std::move(entries));
}

}  // namespace

SparseMatrix assemble_sparse(const LocalHamiltonian& h, const AssembleOptions& opts) {
    h.validate();
    if (h.n > opts.max_qubits) {
        throw SizeError("assemble_sparse: " + std::to_string(h.n) + " qubits exceeds the cap of " +
                        std::to_string(opts.max_qubits));
    }
    SparseMatrix plain = assemble_raw(h, false);
    if (opts.check_norm) {
        double norm = gershgorin_bound(plain);
        if (norm > 1.0 + 1e-9 && h.n <= kMaxDenseQubits) norm = operator_norm(to_dense_matrix(plain));
        if (norm > 1.0 + 1e-9) {
            std::ostringstream msg;
            msg << "assemble_sparse: ||H|| bound " << norm << " exceeds 1";
            throw InvalidInput(msg.str());
        }
    }
    return opts.shift ? assemble_raw(h, true) : plain;
}

const char* to_string(GlhOutcome o) noexcept { return o == GlhOutcome::kLow ? "LOW" : "HIGH"; }

GlhDecision decide_glh_shifted(const SparseMatrix& shifted, const SampledVector& u, double delta, double a, double b,
                               const GlhConfig& cfg) {
    if (!(a >= -1.0 && a < b && b <= 1.0)) throw InvalidInput("glh: need -1 <= a < b <= 1");
    SveProblem p{shifted, u, 0.5, (3.0 + a) / 4.0, 0.5, (b - a) / 4.0, delta};
    GlhDecision out;
    out.sve = decide_singular_interval(p, SveConfig{cfg.fail_prob, cfg.seed, cfg.workers});
    out.outcome = out.sve.decision == SveDecision::kHasSv ? GlhOutcome::kLow : GlhOutcome::kHigh;
    return out;
}

GlhDecision decide_glh(const LocalHamiltonian& h, const SampledVector& u, double delta, double a, double b,
                       const GlhConfig& cfg) {
    return decide_glh_shifted(assemble_sparse(h, {.shift = true}), u, delta, a, b, cfg);
}

int scan_resolution(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw InvalidInput("glh: eps must lie in (0, 1]");
    return static_cast<int>(std::ceil(2.0 / eps * (1.0 - 1e-9)));
}

ScanResult scan_ground_energy(double eps, const std::function<GlhOutcome(int, double, double)>& decide) {
    ScanResult out;
    const int r = scan_resolution(eps);
    out.r = r;
    out.outcomes.reserve(2 * static_cast<std::size_t>(r));
    for (int i = 1; i <= 2 * r; ++i) {
        const double a = static_cast<double>(i - r - 1) / r;
        const double b = static_cast<double>(i - r) / r;
        out.outcomes.push_back(decide(i, a, b));
    }
    // Length of the leading run of kHigh; the rest must all be kLow.
    int i0 = 0;
    while (i0 < 2 * r && out.outcomes[i0] == GlhOutcome::kHigh) ++i0;
    for (int i = i0; i < 2 * r; ++i) {
        if (out.outcomes[i] != GlhOutcome::kLow) {
            std::string pattern;
            for (auto o : out.outcomes) pattern += o == GlhOutcome::kLow ? 'L' : 'H';
            throw InconsistencyError("glh scan: outcome pattern " + pattern + " matches no case");
        }
    }
    if (i0 == 0) {
        out.scan_case = ScanCase::kAllLow;
        out.lo = -1.0;
        out.hi = -1.0 + 1.0 / r;
    } else if (i0 == 2 * r) {
        out.scan_case = ScanCase::kAllHigh;
        out.lo = 1.0 - 1.0 / r;
        out.hi = 1.0;
    } else {
        out.scan_case = ScanCase::kStep;
        out.step = i0;
        out.lo = std::max(-1.0, static_cast<double>(i0 - r - 1) / r);
        out.hi = std::min(1.0, static_cast<double>(i0 - r + 1) / r);
    }
    out.estimate = 0.5 * (out.lo + out.hi);
    return out;
}

GroundEnergyEstimate estimate_ground_energy(const LocalHamiltonian& h, const SampledVector& u, double delta,
                                            double eps, const GlhConfig& cfg) {
    const SparseMatrix shifted = assemble_sparse(h, {.shift = true});
    const int r = scan_resolution(eps);
    GroundEnergyEstimate out;
    auto decide = [&](int i, double a, double b) {
        GlhConfig step = cfg;
        step.fail_prob = cfg.fail_prob / (2.0 * r);
        step.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        auto d = decide_glh_shifted(shifted, u, delta, a, b, step);
        for (const auto& w : d.sve.warnings) out.warnings.push_back("iteration " + std::to_string(i) + ": " + w);
        return d.outcome;
    };
    out.scan = scan_ground_energy(eps, decide);
    return out;
}

double ground_overlap(const LocalHamiltonian& h, std::span<const Complex> u) {
    if (h.n > kMaxDenseQubits) throw SizeError("ground_overlap: more than 12 qubits");
    if (u.size() != h.dimension()) throw ShapeError("ground_overlap: vector dimension does not match 2^n");
    const auto ground = exact_ground(to_dense_matrix(assemble_sparse(h, {.check_norm = false})));
    const DenseVector v = to_dense_vector(u);
    return (ground.projector * v).norm();
}

}  // namespace dqsvt
