#include <dqsvt/kitaev.hpp>

#include <dqsvt/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dqsvt {

namespace {

constexpr double kUnitaryTol = 1e-12;

bool is_unitary(const std::vector<Complex>& u, Index dim) {
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            Complex dot{};
            for (Index k = 0; k < dim; ++k) dot += std::conj(u[k * dim + r]) * u[k * dim + c];
            if (std::abs(dot - (r == c ? 1.0 : 0.0)) > kUnitaryTol) return false;
        }
    }
    return true;
}

// Applies a gate to a state over `wires` qubits, wire 0 most significant.
void apply_gate(std::vector<Complex>& state, int wires, const Gate& g) {
    const std::size_t j = g.wires.size();
    const Index bd = Index{1} << j;
    Index mask = 0;
    for (int w : g.wires) mask |= Index{1} << (wires - 1 - w);
    std::vector<Complex> in(bd);
    for (Index base = 0; base < state.size(); ++base) {
        if (base & mask) continue;
        auto spread = [&](Index local) {
            Index y = base;
            for (std::size_t q = 0; q < j; ++q) {
                if ((local >> (j - 1 - q)) & 1U) y |= Index{1} << (wires - 1 - g.wires[q]);
            }
            return y;
        };
        for (Index c = 0; c < bd; ++c) in[c] = state[spread(c)];
        for (Index r = 0; r < bd; ++r) {
            Complex acc{};
            for (Index c = 0; c < bd; ++c) acc += g.unitary[r * bd + c] * in[c];
            state[spread(r)] = acc;
        }
    }
}

std::vector<Complex> run_circuit(const Circuit& c, std::uint64_t x, std::size_t steps) {
    const int wires = c.n + c.p;
    std::vector<Complex> state(Index{1} << wires, Complex{});
    state[static_cast<Index>(x) << c.p] = 1.0;
    for (std::size_t s = 0; s < steps; ++s) apply_gate(state, wires, c.gates[s]);
    return state;
}

LocalTerm diagonal_projector(std::vector<int> qubits, Index hot) {
    LocalTerm t{std::move(qubits), {}};
    const Index bd = t.block_dim();
    t.block.assign(bd * bd, Complex{});
    t.block[hot * bd + hot] = 1.0;
    return t;
}

void check_layout(const KitaevLayout& l) {
    if (l.idle < 1) throw InvalidInput("kitaev: pre-idle length must be at least 1");
    if (l.total_qubits() > kMaxKitaevQubits) {
        throw SizeError("kitaev: " + std::to_string(l.total_qubits()) + " qubits exceeds the cap of " +
                        std::to_string(kMaxKitaevQubits));
    }
}

int locality(const std::vector<LocalTerm>& terms) {
    std::size_t k = 0;
    for (const auto& t : terms) k = std::max(k, t.qubits.size());
    return static_cast<int>(k);
}

}  // namespace

// ---------------------------------------------------------------------------
// Gates and circuits

Gate Gate::standard(const std::string& name, std::vector<int> wires) {
    const double h = 1.0 / std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    Gate g{name, std::move(wires), {}};
    if (name == "H") {
        g.unitary = {h, h, h, -h};
    } else if (name == "X") {
        g.unitary = {0.0, 1.0, 1.0, 0.0};
    } else if (name == "Z") {
        g.unitary = {1.0, 0.0, 0.0, -1.0};
    } else if (name == "T") {
        g.unitary = {1.0, 0.0, 0.0, std::exp(i * (std::numbers::pi / 4.0))};
    } else if (name == "CNOT") {
        g.unitary = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    } else {
        throw InvalidInput("unknown gate " + name);
    }
    const std::size_t want = name == "CNOT" ? 2 : 1;
    if (g.wires.size() != want) throw InvalidInput("gate " + name + " expects " + std::to_string(want) + " wires");
    return g;
}

Gate Gate::matrix(std::vector<int> wires, std::vector<Complex> unitary) {
    if (wires.size() != 1 && wires.size() != 2) throw InvalidInput("matrix gates act on one or two wires");
    const Index dim = Index{1} << wires.size();
    if (unitary.size() != dim * dim) throw InvalidInput("matrix gate has the wrong number of entries");
    if (!is_unitary(unitary, dim)) throw InvalidInput("matrix gate is not unitary");
    return Gate{wires.size() == 1 ? "MAT2" : "MAT4", std::move(wires), std::move(unitary)};
}

void Circuit::validate() const {
    if (n < 0 || p < 0 || n + p == 0) throw InvalidInput("circuit: needs at least one wire");
    const int wires = n + p;
    const int out = output_wire();
    if (out < 0 || out >= wires) throw InvalidInput("circuit: output wire out of range");
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const auto& g = gates[k];
        const std::string where = "circuit gate " + std::to_string(k) + ": ";
        if (g.wires.empty() || g.wires.size() > 2) throw InvalidInput(where + "must act on one or two wires");
        if (g.wires.size() == 2 && g.wires[0] == g.wires[1]) throw InvalidInput(where + "repeated wire");
        for (int w : g.wires) {
            if (w < 0 || w >= wires) throw InvalidInput(where + "wire out of range");
        }
        const Index dim = Index{1} << g.wires.size();
        if (g.unitary.size() != dim * dim || !is_unitary(g.unitary, dim)) {
            throw InvalidInput(where + "not unitary");
        }
    }
}

Index KitaevLayout::work_index(std::uint64_t x, std::uint64_t b, int t) const {
    const int mm = clock();
    const Index unary = ((Index{1} << t) - 1) << (mm - t);
    return ((((static_cast<Index>(x) << p) | static_cast<Index>(b)) << mm) | unary);
}

Index KitaevLayout::full_index(std::uint64_t x, std::uint64_t b, int t, int d) const {
    return (work_index(x, b, t) << 1) | static_cast<Index>(d);
}

std::uint64_t parse_input_bits(const std::string& bits, int n) {
    if (static_cast<int>(bits.size()) != n) {
        throw InvalidInput("input string must have " + std::to_string(n) + " bits");
    }
    std::uint64_t x = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw InvalidInput("input string must contain only 0 and 1");
        x = (x << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return x;
}

// ---------------------------------------------------------------------------
// Terms

KitaevTerms build_terms(const Circuit& c, std::uint64_t x, int idle) {
    c.validate();
    KitaevTerms out;
    KitaevLayout& l = out.layout;
    l = {c.n, c.p, static_cast<int>(c.gates.size()), idle};
    check_layout(l);
    if (c.n < 64 && (x >> c.n) != 0) throw InvalidInput("kitaev: input has more than n bits");

    const int mm = l.clock();
    const int nq = l.work_qubits();
    auto clock_qubit = [&](int j) { return c.n + c.p + j - 1; };  // C_j, j = 1..M

    std::vector<LocalTerm> in;
    for (int i = 0; i < c.n; ++i) {
        const Index bit = (x >> (c.n - 1 - i)) & 1U;
        in.push_back(diagonal_projector({i, clock_qubit(1)}, (1 - bit) << 1));
    }
    for (int j = 0; j < c.p; ++j) in.push_back(diagonal_projector({c.n + j, clock_qubit(1)}, Index{2}));

    std::vector<LocalTerm> prop;
    for (int t = 1; t <= mm; ++t) {
        const Gate* g = t > idle ? &c.gates[static_cast<std::size_t>(t - idle - 1)] : nullptr;
        LocalTerm term;
        const std::size_t gw = g ? g->wires.size() : 0;
        if (g) term.qubits = g->wires;
        const bool has_prev = t > 1;
        const bool has_next = t < mm;
        if (has_prev) term.qubits.push_back(clock_qubit(t - 1));
        term.qubits.push_back(clock_qubit(t));
        if (has_next) term.qubits.push_back(clock_qubit(t + 1));

        const std::size_t j = term.qubits.size();
        const Index bd = term.block_dim();
        const Index gdim = Index{1} << gw;
        term.block.assign(bd * bd, Complex{});
        // Local index layout: gate bits, then [prev], cur, [next].
        const std::size_t clock_bits = j - gw;
        auto decode = [&](Index idx, Index& gbits, int& prev, int& cur, int& next) {
            gbits = idx >> clock_bits;
            std::size_t pos = clock_bits;
            prev = has_prev ? static_cast<int>((idx >> --pos) & 1U) : 1;
            cur = static_cast<int>((idx >> --pos) & 1U);
            next = has_next ? static_cast<int>((idx >> --pos) & 1U) : 0;
        };
        auto gate_entry = [&](Index r, Index col) -> Complex {
            if (!g) return r == col ? 1.0 : 0.0;
            return g->unitary[r * gdim + col];
        };
        for (Index r = 0; r < bd; ++r) {
            Index gr;
            int pr, cr, nr;
            decode(r, gr, pr, cr, nr);
            if (pr != 1 || nr != 0) continue;
            for (Index col = 0; col < bd; ++col) {
                Index gc;
                int pc, cc, nc;
                decode(col, gc, pc, cc, nc);
                if (pc != 1 || nc != 0) continue;
                Complex v{};
                if (gr == gc && cr == cc) v += 1.0;
                if (cr == 1 && cc == 0) v -= gate_entry(gr, gc);
                if (cr == 0 && cc == 1) v -= std::conj(gate_entry(gc, gr));
                term.block[r * bd + col] = 0.5 * v;
            }
        }
        prop.push_back(std::move(term));
    }

    std::vector<LocalTerm> outt{diagonal_projector({c.output_wire(), clock_qubit(mm)}, Index{1})};

    std::vector<LocalTerm> stab;
    for (int j = 1; j < mm; ++j) stab.push_back(diagonal_projector({clock_qubit(j), clock_qubit(j + 1)}, Index{1}));

    out.h_in = {nq, locality(in), std::move(in)};
    out.h_prop = {nq, locality(prop), std::move(prop)};
    out.h_out = {nq, locality(outt), std::move(outt)};
    out.h_stab = {nq, locality(stab), std::move(stab)};
    return out;
}

LocalHamiltonian weighted_sum(const std::vector<std::pair<const LocalHamiltonian*, double>>& parts) {
    LocalHamiltonian out;
    if (parts.empty()) return out;
    out.n = parts.front().first->n;
    for (const auto& [h, w] : parts) {
        if (h->n != out.n) throw InvalidInput("weighted_sum: qubit counts differ");
        out.k = std::max(out.k, h->k);
        for (const auto& t : h->terms) {
            LocalTerm scaled = t;
            for (auto& v : scaled.block) v *= w;
            out.terms.push_back(std::move(scaled));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// States

double acceptance_probability(const Circuit& c, std::uint64_t x) {
    c.validate();
    const auto state = run_circuit(c, x, c.gates.size());
    const int wires = c.n + c.p;
    const Index bit = Index{1} << (wires - 1 - c.output_wire());
    double acc = 0.0;
    for (Index i = 0; i < state.size(); ++i) {
        if (i & bit) acc += std::norm(state[i]);
    }
    return acc;
}

std::vector<Complex> history_state(const Circuit& c, std::uint64_t x, int idle) {
    c.validate();
    KitaevLayout l{c.n, c.p, static_cast<int>(c.gates.size()), idle};
    check_layout(l);
    const int mm = l.clock();
    const int wires = c.n + c.p;
    std::vector<Complex> out(Index{1} << l.work_qubits(), Complex{});
    const double w = 1.0 / std::sqrt(static_cast<double>(mm + 1));
    std::vector<Complex> state(Index{1} << wires, Complex{});
    state[static_cast<Index>(x) << c.p] = 1.0;
    for (int t = 0; t <= mm; ++t) {
        if (t > idle) apply_gate(state, wires, c.gates[static_cast<std::size_t>(t - idle - 1)]);
        const Index unary = ((Index{1} << t) - 1) << (mm - t);
        for (Index ab = 0; ab < state.size(); ++ab) {
            if (state[ab] != Complex{}) out[(ab << mm) | unary] = w * state[ab];
        }
    }
    return out;
}

SampledVector semiclassical_guide(const KitaevLayout& layout, std::uint64_t x) {
    check_layout(layout);
    const int nn = layout.idle;
    if ((nn & (nn - 1)) != 0) throw InvalidInput("kitaev: N must be a power of 2");
    std::vector<Index> support;
    for (int t = 1; t <= nn; ++t) {
        for (int d = 0; d < 2; ++d) support.push_back(layout.full_index(x, 0, t, d));
    }
    return subset_state(Index{1} << layout.total_qubits(), std::move(support));
}

// ---------------------------------------------------------------------------
// Gadget

namespace {

LocalHamiltonian penalty_hamiltonian(const KitaevTerms& t, double weight) {
    return weighted_sum({{&t.h_in, weight}, {&t.h_prop, weight}, {&t.h_stab, weight}, {&t.h_out, 1.0}});
}

Eigen::VectorXd dense_spectrum(const LocalHamiltonian& h) {
    if (h.n > kMaxDenseQubits) throw SizeError("kitaev: dense diagonalization above 12 qubits");
    return exact_ground(to_dense_matrix(assemble_sparse(h, {.check_norm = false}))).spectrum;
}

}  // namespace

KitaevInstance build_gadget(const Circuit& c, std::uint64_t x, int idle, const GadgetOptions& opts) {
    const KitaevTerms terms = build_terms(c, x, idle);
    const KitaevLayout layout = terms.layout;
    const int mm = layout.clock();
    if (layout.work_qubits() > kMaxDenseQubits) {
        throw SizeError("kitaev: gadget needs dense diagonalization; at most 12 work qubits");
    }

    const std::uint64_t inputs = std::uint64_t{1} << c.n;
    std::vector<double> acceptance(inputs);
    double alpha = 1.0;
    for (std::uint64_t y = 0; y < inputs; ++y) {
        acceptance[y] = acceptance_probability(c, y);
        if (acceptance[y] > 0.5) alpha = std::min(alpha, acceptance[y]);
    }
    const double alpha_prime = (1.0 - alpha) / (mm + 1);

    const double gap = std::numbers::pi * std::numbers::pi / 64.0;
    const double weight =
        opts.delta_weight > 0.0 ? opts.delta_weight : std::max(1.0, 10.0 * mm * mm * mm * alpha_prime / gap);

    double beta_prime = 0.0;
    if (opts.beta_prime) {
        beta_prime = *opts.beta_prime;
    } else {
        bool any = false;
        for (std::uint64_t y = 0; y < inputs; ++y) {
            if (acceptance[y] > 0.5) continue;
            const double e = dense_spectrum(penalty_hamiltonian(build_terms(c, y, idle), weight))(0);
            beta_prime = any ? std::min(beta_prime, e) : e;
            any = true;
        }
        if (!any) throw ConstructionError("kitaev: every input accepts; supply beta' explicitly");
    }

    const LocalHamiltonian hp = penalty_hamiltonian(terms, weight);
    const auto spectrum = dense_spectrum(hp);
    const double zero_block = 0.5 * (alpha_prime + beta_prime);
    const double normalization = std::max({zero_block, spectrum(spectrum.size() - 1), 1e-300});

    const int flag = layout.work_qubits();
    LocalHamiltonian h;
    h.n = layout.total_qubits();
    h.k = hp.k + 1;
    const double s = 1.0 / normalization;
    h.terms.push_back(LocalTerm{{flag}, {zero_block * s, 0.0, 0.0, 0.0}});
    for (const auto& t : hp.terms) {
        LocalTerm lifted;
        lifted.qubits = t.qubits;
        lifted.qubits.push_back(flag);
        const Index bd = t.block_dim();
        const Index ld = 2 * bd;
        lifted.block.assign(ld * ld, Complex{});
        for (Index r = 0; r < bd; ++r) {
            for (Index col = 0; col < bd; ++col) {
                lifted.block[(2 * r + 1) * ld + 2 * col + 1] = t.block[r * bd + col] * s;
            }
        }
        h.terms.push_back(std::move(lifted));
    }
    return KitaevInstance{layout,
                          c,
                          x,
                          weight,
                          alpha,
                          alpha_prime,
                          beta_prime,
                          normalization,
                          acceptance[x] > 0.5,
                          std::move(h),
                          history_state(c, x, idle),
                          semiclassical_guide(layout, x)};
}

GapReport verify_gap_lemma(const Circuit& c, std::uint64_t x, int idle) {
    const KitaevTerms t = build_terms(c, x, idle);
    const int mm = t.layout.clock();
    const auto spectrum = dense_spectrum(weighted_sum({{&t.h_in, 1.0}, {&t.h_prop, 1.0}, {&t.h_stab, 1.0}}));
    GapReport r;
    r.bound = std::numbers::pi * std::numbers::pi / (64.0 * mm * mm * mm);
    r.value = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        if (spectrum(i) > 1e-9) {
            r.value = spectrum(i);
            break;
        }
    }
    if (!r.holds()) throw InconsistencyError("gap below pi^2 / (64 M^3)");
    return r;
}

}  // namespace dqsvt
