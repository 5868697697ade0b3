#include "cli.hpp"

#include <dqsvt/hamiltonian.hpp>
#include <dqsvt/io.hpp>
#include <dqsvt/kitaev.hpp>
#include <dqsvt/oracle.hpp>
#include <dqsvt/sve.hpp>
#include <dqsvt/svt.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace dqsvt::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(Complex z) { return fmt(z.real()) + " " + fmt(z.imag()); }

// FNV-1a over the bytes of every input file, in argument order.
class Digest {
  public:
    void add_file(const fs::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InvalidInput("cannot open " + path.string());
        char buf[4096];
        while (in.read(buf, sizeof buf) || in.gcount() > 0) {
            for (std::streamsize k = 0; k < in.gcount(); ++k) {
                hash_ ^= static_cast<unsigned char>(buf[k]);
                hash_ *= 0x100000001b3ULL;
            }
        }
    }

    [[nodiscard]] std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
        return buf;
    }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

// Line-oriented report: an optional headline followed by key=value pairs.
class Report {
  public:
    void headline(std::string line) { headline_ = std::move(line); }
    void add(const std::string& key, const std::string& value) { lines_.push_back(key + "=" + value); }
    void add(const std::string& key, double value) { add(key, fmt(value)); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void raw(std::string line) { lines_.push_back(std::move(line)); }

    void write(std::ostream& out) const {
        if (!headline_.empty()) out << headline_ << '\n';
        for (const auto& l : lines_) out << l << '\n';
    }

  private:
    std::string headline_;
    std::vector<std::string> lines_;
};

struct Common {
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out;
};

void emit(const Report& r, const std::string& path, std::ostream& out) {
    r.write(out);
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path);
    r.write(f);
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "Run seed")->capture_default_str();
    sub->add_option("--workers", c.workers, "Worker threads (wall time only)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "Also write the report to this file");
}

SampledVector sampled(std::vector<Complex> v, double zeta, std::uint64_t seed) {
    if (zeta > 0) return distorted_sampler(std::move(v), zeta, derive_seed(seed, 0x5a));
    return exact_sampler(std::move(v));
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
    std::string matrix, u, v, poly;
    double eps = 0.1;
    double fail_prob = 0.01;
    double zeta = 0.0;
};

int cmd_estimate(const EstimateArgs& a, const Common& c, std::ostream& out) {
    Digest digest;
    for (const auto* p : {&a.matrix, &a.u, &a.v, &a.poly}) digest.add_file(*p);
    const auto m = load_matrix(a.matrix);
    const auto u = load_vector(a.u);
    const auto v = sampled(load_vector(a.v), a.zeta, c.seed);
    const auto p = load_polynomial(a.poly);
    const auto cfg = EstimatorConfig::make(a.eps, a.fail_prob, a.zeta, c.seed, c.workers);
    const auto res = estimate_bilinear(m, QueryVector(u), v, p, cfg);

    Report r;
    r.headline(fmt(res.value));
    r.add("command", std::string("estimate"));
    r.add("inputs_digest", digest.hex());
    r.add("seed", c.seed);
    r.add("eps", a.eps);
    r.add("fail_prob", a.fail_prob);
    r.add("zeta", a.zeta);
    r.add("degree", p.degree());
    r.add("samples", res.samples);
    r.add("samples_per_batch", res.samples / std::max<std::uint64_t>(res.batches, 1));
    r.add("batches", res.batches);
    r.add("distinct_indices", res.distinct_indices);
    r.add("matrix_queries", res.queries.matrix_queries);
    r.add("vector_queries", res.queries.vector_queries);
    emit(r, c.out, out);
    return kOk;
}

// ---------------------------------------------------------------------------
// sve

struct SveArgs {
    std::string matrix, u;
    double t1 = 0, t2 = 0, theta1 = 0, theta2 = 0;
    double delta = 1.0;
    double fail_prob = 0.01;
    double zeta = 0.0;
};

void add_warnings(Report& r, const std::vector<std::string>& warnings) {
    r.add("warnings", static_cast<std::uint64_t>(warnings.size()));
    for (const auto& w : warnings) r.add("warning", w);
}

int cmd_sve(const SveArgs& a, const Common& c, std::ostream& out) {
    Digest digest;
    digest.add_file(a.matrix);
    digest.add_file(a.u);
    const SveProblem problem{load_matrix(a.matrix), sampled(load_vector(a.u), a.zeta, c.seed), a.t1, a.t2,
                             a.theta1, a.theta2, a.delta};
    const auto res = decide_singular_interval(problem, {a.fail_prob, c.seed, c.workers});

    Report r;
    r.headline(to_string(res.decision));
    r.add("command", std::string("sve"));
    r.add("inputs_digest", digest.hex());
    r.add("seed", c.seed);
    r.add("estimate", fmt(res.estimate));
    r.add("threshold", res.threshold);
    r.add("eps", res.eps);
    r.add("degree", res.degree);
    r.add("samples", res.run.samples);
    r.add("batches", res.run.batches);
    r.add("matrix_queries", res.run.queries.matrix_queries);
    add_warnings(r, res.warnings);
    emit(r, c.out, out);
    return res.warnings.empty() ? kOk : kWarnings;
}

// ---------------------------------------------------------------------------
// glh-decide / glh-estimate

struct GlhArgs {
    std::string hamiltonian, u;
    double delta = 1.0;
    double a = 0, b = 0;
    double eps = 0.25;
    double fail_prob = 0.01;
    double zeta = 0.0;
};

int cmd_glh_decide(const GlhArgs& a, const Common& c, std::ostream& out) {
    Digest digest;
    digest.add_file(a.hamiltonian);
    digest.add_file(a.u);
    const auto h = load_hamiltonian(a.hamiltonian);
    const auto u = sampled(load_vector(a.u), a.zeta, c.seed);
    const auto d = decide_glh(h, u, a.delta, a.a, a.b, {a.fail_prob, c.seed, c.workers});

    Report r;
    r.headline(to_string(d.outcome));
    r.add("command", std::string("glh-decide"));
    r.add("inputs_digest", digest.hex());
    r.add("seed", c.seed);
    r.add("a", a.a);
    r.add("b", a.b);
    r.add("delta", a.delta);
    r.add("estimate", fmt(d.sve.estimate));
    r.add("degree", d.sve.degree);
    r.add("matrix_queries", d.sve.run.queries.matrix_queries);
    add_warnings(r, d.sve.warnings);
    emit(r, c.out, out);
    return d.sve.warnings.empty() ? kOk : kWarnings;
}

const char* to_string(ScanCase s) {
    switch (s) {
        case ScanCase::kAllLow: return "all_low";
        case ScanCase::kAllHigh: return "all_high";
        case ScanCase::kStep: return "step";
    }
    return "?";
}

int cmd_glh_estimate(const GlhArgs& a, const Common& c, std::ostream& out) {
    Digest digest;
    digest.add_file(a.hamiltonian);
    digest.add_file(a.u);
    const auto h = load_hamiltonian(a.hamiltonian);
    const auto u = sampled(load_vector(a.u), a.zeta, c.seed);
    const auto e = estimate_ground_energy(h, u, a.delta, a.eps, {a.fail_prob, c.seed, c.workers});

    std::string pattern;
    for (auto o : e.scan.outcomes) pattern += o == GlhOutcome::kLow ? 'L' : 'H';
    Report r;
    r.headline(fmt(e.scan.estimate));
    r.add("command", std::string("glh-estimate"));
    r.add("inputs_digest", digest.hex());
    r.add("seed", c.seed);
    r.add("eps", a.eps);
    r.add("delta", a.delta);
    r.add("r", e.scan.r);
    r.add("case", std::string(to_string(e.scan.scan_case)));
    r.add("step", e.scan.step);
    r.add("interval", fmt(e.scan.lo) + " " + fmt(e.scan.hi));
    r.add("outcomes", pattern);
    add_warnings(r, e.warnings);
    emit(r, c.out, out);
    return e.warnings.empty() ? kOk : kWarnings;
}

// ---------------------------------------------------------------------------
// gen-kitaev

struct KitaevArgs {
    std::string circuit;
    std::string input;
    int idle = 1;
    double delta_weight = 0;
    std::optional<double> beta_prime;
};

int cmd_gen_kitaev(const KitaevArgs& a, const Common& c, std::ostream& out) {
    if (c.out.empty()) throw InvalidInput("gen-kitaev: --out prefix is required");
    Digest digest;
    digest.add_file(a.circuit);
    const auto circuit = load_circuit(a.circuit);
    const std::string bits = a.input.empty() ? std::string(static_cast<std::size_t>(circuit.n), '0') : a.input;
    const auto x = parse_input_bits(bits, circuit.n);
    const auto inst = build_gadget(circuit, x, a.idle, {a.delta_weight, a.beta_prime});

    const double yes = inst.alpha_prime / inst.normalization;
    const double no = 0.5 * (inst.alpha_prime + inst.beta_prime) / inst.normalization;
    const double lo = yes + 0.1 * (no - yes);
    const double hi = no - 0.1 * (no - yes);

    // Overlap the decision procedure may assume: the guide's weight on the
    // eigenspaces at or below lo when the input accepts, otherwise the
    // guide-history overlap.
    double delta = std::sqrt(static_cast<double>(a.idle) / (2.0 * (inst.layout.clock() + 1)));
    if (inst.accepts && inst.h.n <= kMaxDenseQubits) {
        Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(
            to_dense_matrix(assemble_sparse(inst.h, {.check_norm = false})));
        const DenseVector g = to_dense_vector(inst.guide.base());
        double weight = 0;
        for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
            if (eig.eigenvalues()(k) <= lo) weight += std::norm(eig.eigenvectors().col(k).dot(g));
        }
        delta = std::sqrt(weight);
    }
    delta *= 0.999;

    const std::string ham_path = c.out + ".ham";
    const std::string guide_path = c.out + ".guide.vec";
    save_hamiltonian(ham_path, inst.h);
    save_vector(guide_path, inst.guide.base().to_dense());

    Report r;
    r.headline(inst.accepts ? "LOW" : "HIGH");
    r.add("command", std::string("gen-kitaev"));
    r.add("inputs_digest", digest.hex());
    r.add("input", bits);
    r.add("qubits", inst.layout.total_qubits());
    r.add("clock", inst.layout.clock());
    r.add("idle", a.idle);
    r.add("acceptance", acceptance_probability(circuit, x));
    r.add("delta_weight", inst.delta_weight);
    r.add("alpha", inst.alpha);
    r.add("alpha_prime", inst.alpha_prime);
    r.add("beta_prime", inst.beta_prime);
    r.add("normalization", inst.normalization);
    r.add("yes_energy", yes);
    r.add("no_energy", no);
    r.add("a", lo);
    r.add("b", hi);
    r.add("delta", delta);
    r.add("hamiltonian", ham_path);
    r.add("guide", guide_path);
    r.write(out);
    return kOk;
}

// ---------------------------------------------------------------------------
// oracle-check

struct Check {
    std::string name;
    double value;
    double tol;
    [[nodiscard]] bool pass() const { return value <= tol; }
};

double max_abs(const DenseMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double relative(const DenseVector& got, const DenseVector& want) {
    return (got - want).norm() / std::max(1.0, want.norm());
}

std::vector<fs::path> files_with(const fs::path& dir, const std::string& ext) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

void matrix_checks(const fs::path& path, const std::vector<fs::path>& polys, const std::vector<fs::path>& vecs,
                   std::vector<Check>& checks) {
    const auto a = load_matrix(path);
    const DenseMatrix d = to_dense_matrix(a);
    const std::string stem = path.filename().string();
    const auto svd = dense_svd(d);
    checks.push_back({stem + " svd_reconstruction", svd.reconstruction_error(d), 1e-10});
    checks.push_back({stem + " svd_orthonormality", svd.orthonormality_error(), 1e-10});
    const DenseMatrix proj = exact_projector(d, 0.0, 0.5 * operator_norm(d));
    checks.push_back({stem + " projector_idempotent", max_abs(proj * proj - proj), 1e-10});
    checks.push_back({stem + " projector_hermitian", max_abs(proj.adjoint() - proj), 1e-10});

    for (const auto& vp : vecs) {
        const auto u = load_vector(vp);
        if (u.size() != a.cols()) continue;
        const DenseVector du = to_dense_vector(u);
        const QueryVector qu(u);
        for (const auto& pp : polys) {
            const auto p = load_polynomial(pp);
            const std::string tag = stem + "/" + vp.filename().string() + "/" + pp.filename().string();
            const DenseVector spectral = exact_svt_apply(d, p, du);
            checks.push_back({tag + " power_vs_spectral", relative(exact_polynomial_apply(d, p, du), spectral), 1e-9});
            SvtEvaluator eval(a, qu, p);
            DenseVector sparse(spectral.size());
            for (Index i = 0; i < a.cols(); ++i) sparse(static_cast<Eigen::Index>(i)) = eval.entry(i);
            checks.push_back({tag + " sparse_vs_spectral", relative(sparse, spectral), 1e-10});
        }
    }
}

void hamiltonian_checks(const fs::path& path, std::vector<Check>& checks) {
    const auto h = load_hamiltonian(path);
    const std::string stem = path.filename().string();
    if (h.n > kMaxDenseQubits) return;
    const auto sparse = assemble_sparse(h, {.check_norm = false});
    const DenseMatrix d = to_dense_matrix(sparse);
    checks.push_back({stem + " hermitian", max_abs(d.adjoint() - d), 1e-12});
    const auto g = exact_ground(d);
    checks.push_back({stem + " ground_above_gershgorin", std::max(0.0, -gershgorin_bound(sparse) - g.energy), 1e-12});
    checks.push_back({stem + " ground_projector_idempotent", max_abs(g.projector * g.projector - g.projector), 1e-10});
    const auto shifted = to_dense_matrix(assemble_sparse(h, {.shift = true, .check_norm = false}));
    const double mapped = exact_ground(shifted).energy;
    checks.push_back({stem + " shift_maps_spectrum", std::abs(mapped - (g.energy + 3.0) / 4.0), 1e-10});
}

void circuit_checks(const fs::path& path, std::vector<Check>& checks) {
    const auto c = load_circuit(path);
    const std::string stem = path.filename().string();
    if (c.n > 4) return;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.n); ++x) {
        const auto terms = build_terms(c, x, 1);
        if (terms.layout.work_qubits() > kMaxDenseQubits) return;
        const auto sum = weighted_sum({{&terms.h_in, 1.0}, {&terms.h_prop, 1.0}, {&terms.h_stab, 1.0}});
        const DenseMatrix hm = to_dense_matrix(assemble_sparse(sum, {.check_norm = false}));
        const DenseVector hist = to_dense_vector(history_state(c, x, 1));
        const std::string tag = stem + " x=" + std::to_string(x);
        checks.push_back({tag + " history_energy", std::abs((hist.adjoint() * hm * hist)(0)), 1e-10});
        const auto gap = verify_gap_lemma(c, x, 1);
        checks.push_back({tag + " gap_lemma", std::max(0.0, gap.bound - gap.value), 0.0});
    }
}

int cmd_oracle_check(const std::string& dir, const Common& c, std::ostream& out) {
    if (!fs::is_directory(dir)) throw InvalidInput("oracle-check: not a directory: " + dir);
    const auto polys = files_with(dir, ".poly");
    const auto vecs = files_with(dir, ".vec");
    std::vector<Check> checks;
    for (const auto& m : files_with(dir, ".mtx")) matrix_checks(m, polys, vecs, checks);
    for (const auto& h : files_with(dir, ".ham")) hamiltonian_checks(h, checks);
    for (const auto& ci : files_with(dir, ".circ")) circuit_checks(ci, checks);

    Report r;
    std::uint64_t failed = 0;
    for (const auto& k : checks) {
        failed += k.pass() ? 0 : 1;
        r.raw((k.pass() ? "PASS " : "FAIL ") + k.name + " value=" + fmt(k.value) + " tol=" + fmt(k.tol));
    }
    r.headline(failed == 0 ? "PASS" : "FAIL");
    r.add("command", std::string("oracle-check"));
    r.add("checks", static_cast<std::uint64_t>(checks.size()));
    r.add("failed", failed);
    emit(r, c.out, out);
    return failed == 0 ? kOk : kInconsistency;
}

// ---------------------------------------------------------------------------
// bench

struct Range {
    long lo;
    long hi;
};

// "s=2..4,d=1..3,n=16..256"; a bare value is a one-point range.
std::map<std::string, Range> parse_sweep(const std::string& text) {
    std::map<std::string, Range> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw InvalidInput("sweep: expected key=range, got '" + part + "'");
        const std::string key = part.substr(0, eq);
        const std::string value = part.substr(eq + 1);
        Range r{};
        try {
            const auto dots = value.find("..");
            if (dots == std::string::npos) {
                r.lo = r.hi = std::stol(value);
            } else {
                r.lo = std::stol(value.substr(0, dots));
                r.hi = std::stol(value.substr(dots + 2));
            }
        } catch (const std::exception&) {
            throw InvalidInput("sweep: bad range '" + value + "' for " + key);
        }
        if (r.lo <= 0 || r.hi < r.lo) throw InvalidInput("sweep: empty or nonpositive range for " + key);
        if (key != "s" && key != "d" && key != "n") throw InvalidInput("sweep: unknown key " + key);
        out[key] = r;
    }
    for (const char* k : {"s", "d", "n"}) {
        if (!out.contains(k)) throw InvalidInput(std::string("sweep: missing key ") + k);
    }
    return out;
}

// Exactly s nonzeros per row and column at random distinct cyclic offsets.
SparseMatrix bench_matrix(Index n, Index s, Rng& rng) {
    std::vector<Index> offsets(n);
    for (Index k = 0; k < n; ++k) offsets[k] = k;
    for (Index k = 0; k < s; ++k) std::swap(offsets[k], offsets[k + static_cast<Index>(uniform01(rng) * (n - k))]);
    std::vector<Triplet> entries;
    entries.reserve(n * s);
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < s; ++k) {
            const Complex v{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
            entries.push_back({i, (i + offsets[k]) % n, v / static_cast<double>(s)});
        }
    }
    return SparseMatrix(n, n, std::move(entries), s);
}

struct BenchArgs {
    std::string sweep = "s=2..4,d=1..3,n=16..256";
    int entries = 4;
};

int cmd_bench(const BenchArgs& a, const Common& c, std::ostream& out) {
    const auto sweep = parse_sweep(a.sweep);
    Report r;
    r.headline("s,d,n,entries,queries_per_entry,queries_per_entry_memo,s_pow_2d,ratio");
    double c_max = 0;
    for (long s = sweep.at("s").lo; s <= sweep.at("s").hi; ++s) {
        for (long d = sweep.at("d").lo; d <= sweep.at("d").hi; ++d) {
            for (long n = sweep.at("n").lo; n <= sweep.at("n").hi; n *= 2) {
                if (s > n) continue;
                Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>((s * 64 + d) * 65536 + n)));
                const auto m = bench_matrix(static_cast<Index>(n), static_cast<Index>(s), rng);
                std::vector<Complex> u(static_cast<std::size_t>(n));
                for (auto& x : u) x = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
                const QueryVector qu(u);
                const auto p = EvenPolynomial::monomial(std::vector<double>(static_cast<std::size_t>(d) + 1, 1.0 / (d + 1)));
                QueryStats plain;
                QueryStats memo;
                for (int k = 0; k < a.entries; ++k) {
                    const Index i = static_cast<Index>(uniform01(rng) * static_cast<double>(n));
                    (void)svt_entry(m, qu, p, i, &plain, false);
                    (void)svt_entry(m, qu, p, i, &memo, true);
                }
                const double per = static_cast<double>(plain.matrix_queries) / a.entries;
                const double per_memo = static_cast<double>(memo.matrix_queries) / a.entries;
                const double bound = std::pow(static_cast<double>(s), 2.0 * d);
                c_max = std::max(c_max, per / bound);
                r.raw(std::to_string(s) + "," + std::to_string(d) + "," + std::to_string(n) + "," +
                      std::to_string(a.entries) + "," + fmt(per) + "," + fmt(per_memo) + "," + fmt(bound) + "," +
                      fmt(per / bound));
            }
        }
    }
    r.raw("# c_max=" + fmt(c_max));
    emit(r, c.out, out);
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse singular value transformation by sampling"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common common;

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Estimate v^dagger P(sqrt(A^dagger A)) u");
    estimate->add_option("--matrix", est.matrix)->required()->check(CLI::ExistingFile);
    estimate->add_option("--u", est.u)->required()->check(CLI::ExistingFile);
    estimate->add_option("--v", est.v)->required()->check(CLI::ExistingFile);
    estimate->add_option("--poly", est.poly)->required()->check(CLI::ExistingFile);
    estimate->add_option("--eps", est.eps)->capture_default_str();
    estimate->add_option("--fail-prob", est.fail_prob)->capture_default_str();
    estimate->add_option("--zeta", est.zeta, "Distortion of the sampler built for v")->capture_default_str();
    add_common(estimate, common);

    SveArgs sve;
    auto* sve_cmd = app.add_subcommand("sve", "Decide whether A has a singular value in [t1, t2]");
    sve_cmd->add_option("--matrix", sve.matrix)->required()->check(CLI::ExistingFile);
    sve_cmd->add_option("--u", sve.u, "Guide vector")->required()->check(CLI::ExistingFile);
    sve_cmd->add_option("--t1", sve.t1)->required();
    sve_cmd->add_option("--t2", sve.t2)->required();
    sve_cmd->add_option("--theta1", sve.theta1)->required();
    sve_cmd->add_option("--theta2", sve.theta2)->required();
    sve_cmd->add_option("--delta", sve.delta)->required();
    sve_cmd->add_option("--fail-prob", sve.fail_prob)->capture_default_str();
    sve_cmd->add_option("--zeta", sve.zeta)->capture_default_str();
    add_common(sve_cmd, common);

    GlhArgs glh;
    auto* decide = app.add_subcommand("glh-decide", "Decide lambda_H <= a or lambda_H >= b");
    decide->add_option("--hamiltonian", glh.hamiltonian)->required()->check(CLI::ExistingFile);
    decide->add_option("--u", glh.u, "Guide vector")->required()->check(CLI::ExistingFile);
    decide->add_option("--delta", glh.delta)->required();
    decide->add_option("--a", glh.a)->required();
    decide->add_option("--b", glh.b)->required();
    decide->add_option("--fail-prob", glh.fail_prob)->capture_default_str();
    decide->add_option("--zeta", glh.zeta)->capture_default_str();
    add_common(decide, common);

    auto* ground = app.add_subcommand("glh-estimate", "Estimate lambda_H to within eps");
    ground->add_option("--hamiltonian", glh.hamiltonian)->required()->check(CLI::ExistingFile);
    ground->add_option("--u", glh.u, "Guide vector")->required()->check(CLI::ExistingFile);
    ground->add_option("--delta", glh.delta)->required();
    ground->add_option("--eps", glh.eps)->capture_default_str();
    ground->add_option("--fail-prob", glh.fail_prob)->capture_default_str();
    ground->add_option("--zeta", glh.zeta)->capture_default_str();
    add_common(ground, common);

    KitaevArgs kit;
    auto* gen = app.add_subcommand("gen-kitaev", "Write the clock Hamiltonian and guide for a circuit");
    gen->add_option("--circuit", kit.circuit)->required()->check(CLI::ExistingFile);
    gen->add_option("--input", kit.input, "Input bit string, wire 1 first (default all zeros)");
    gen->add_option("--idle", kit.idle, "Pre-idling steps, a power of 2")->capture_default_str();
    gen->add_option("--delta-weight", kit.delta_weight, "Clock penalty weight, 0 for the default")
        ->capture_default_str();
    gen->add_option("--beta-prime", kit.beta_prime);
    add_common(gen, common);

    std::string fixtures;
    auto* oracle = app.add_subcommand("oracle-check", "Cross-check sparse and dense paths over a fixture directory");
    oracle->add_option("--fixtures", fixtures)->required();
    add_common(oracle, common);

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Query-count sweep as CSV");
    bench_cmd->add_option("--sweep", bench.sweep)->capture_default_str();
    bench_cmd->add_option("--entries", bench.entries, "Entries evaluated per configuration")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_common(bench_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInputError;
    }

    const auto start = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        if (*estimate) code = cmd_estimate(est, common, out);
        else if (*sve_cmd) code = cmd_sve(sve, common, out);
        else if (*decide) code = cmd_glh_decide(glh, common, out);
        else if (*ground) code = cmd_glh_estimate(glh, common, out);
        else if (*gen) code = cmd_gen_kitaev(kit, common, out);
        else if (*oracle) code = cmd_oracle_check(fixtures, common, out);
        else if (*bench_cmd) code = cmd_bench(bench, common, out);
    } catch (const InconsistencyError& e) {
        err << "error: " << e.what() << '\n';
        return kInconsistency;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInconsistency;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "wall_time_s=" << fmt(secs) << '\n';
    return code;
}

}  // namespace dqsvt::cli
