#pragma once

// Circuit-to-Hamiltonian instance generator with a unary clock, pre-idling
// and a flag-qubit gadget. Intended for desk-scale instances whose spectral
// properties can be checked densely.
//
// Register order, most significant first: A (n input qubits), B (p
// ancillas), C (M clock qubits), D (one flag qubit). Clock value t is the
// unary string 1^t 0^(M-t), t = 0..M.

#include <dqsvt/access.hpp>
#include <dqsvt/hamiltonian.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dqsvt {

inline constexpr int kMaxKitaevQubits = 18;

struct Gate {
    std::string name;           // H, X, Z, CNOT, T, MAT2, MAT4
    std::vector<int> wires;     // zero-based over the n + p circuit wires
    std::vector<Complex> unitary;  // 2x2 or 4x4 row-major; first wire is the high bit

    /// Standard gate by name. Throws InvalidInput for an unknown name or a
    /// wire count that does not match.
    static Gate standard(const std::string& name, std::vector<int> wires);
    /// Throws InvalidInput when the matrix is not unitary to 1e-12.
    static Gate matrix(std::vector<int> wires, std::vector<Complex> unitary);
};

struct Circuit {
    int n = 0;  // input wires
    int p = 0;  // ancilla wires
    std::vector<Gate> gates;
    int output = -1;  // -1 selects the first ancilla, or wire 0 when p == 0

    [[nodiscard]] int output_wire() const noexcept { return output >= 0 ? output : (p > 0 ? n : 0); }
    /// Throws InvalidInput for bad wires or non-unitary gates.
    void validate() const;
};

/// Qubit bookkeeping for one pre-idled circuit.
struct KitaevLayout {
    int n = 0;
    int p = 0;
    int m = 0;      // circuit gates
    int idle = 0;   // N
    [[nodiscard]] int clock() const noexcept { return m + idle; }  // M
    [[nodiscard]] int work_qubits() const noexcept { return n + p + clock(); }
    [[nodiscard]] int total_qubits() const noexcept { return work_qubits() + 1; }
    /// Basis index in A B C (no flag qubit) for input bits x, ancilla bits
    /// b and clock value t.
    [[nodiscard]] Index work_index(std::uint64_t x, std::uint64_t b, int t) const;
    /// Basis index in A B C D.
    [[nodiscard]] Index full_index(std::uint64_t x, std::uint64_t b, int t, int d) const;
};

/// Parses a bit string of length n ("0110"), first character for wire 0.
[[nodiscard]] std::uint64_t parse_input_bits(const std::string& bits, int n);

struct KitaevTerms {
    KitaevLayout layout;
    LocalHamiltonian h_in;
    LocalHamiltonian h_prop;
    LocalHamiltonian h_out;
    LocalHamiltonian h_stab;
};

/// The four terms over A B C for the circuit pre-idled by N identity steps.
/// Throws SizeError when n + p + M + 1 exceeds kMaxKitaevQubits and
/// InvalidInput for N < 1.
[[nodiscard]] KitaevTerms build_terms(const Circuit& c, std::uint64_t x, int idle);

/// sum_i w_i H_i as one local Hamiltonian over the qubits of the first part.
/// Throws InvalidInput when the parts disagree on n.
[[nodiscard]] LocalHamiltonian weighted_sum(const std::vector<std::pair<const LocalHamiltonian*, double>>& parts);

/// (1/sqrt(M+1)) sum_t U_t ... U_1 |x>|0>|t> over A B C.
[[nodiscard]] std::vector<Complex> history_state(const Circuit& c, std::uint64_t x, int idle);

/// Probability that the output wire reads 1 after running c on |x>|0>.
[[nodiscard]] double acceptance_probability(const Circuit& c, std::uint64_t x);

/// |x>_A |0>_B (N^(-1/2) sum_{t=1..N} |t>)_C |+>_D as a subset state.
/// Throws InvalidInput unless N is a power of 2.
[[nodiscard]] SampledVector semiclassical_guide(const KitaevLayout& layout, std::uint64_t x);

struct GadgetOptions {
    double delta_weight = 0;          // Delta; 0 selects the default
    std::optional<double> beta_prime;  // overrides the enumerated value
};

struct KitaevInstance {
    KitaevLayout layout;
    Circuit circuit;
    std::uint64_t x = 0;
    double delta_weight = 0;  // Delta
    double alpha = 0;         // min acceptance over accepting inputs
    double alpha_prime = 0;   // (1 - alpha) / (M + 1)
    double beta_prime = 0;    // min lambda_min(H') over rejecting inputs
    double normalization = 1; // H = H_raw / normalization
    bool accepts = false;     // acceptance probability of x above 1/2
    LocalHamiltonian h;       // normalized, over A B C D
    std::vector<Complex> history;  // over A B C
    SampledVector guide;
};

/// Full gadget instance for input x. alpha is the least acceptance
/// probability over inputs accepted with probability above 1/2 (1 when there
/// are none); beta' is the least ground energy of H' over the remaining
/// inputs, by dense diagonalization. The default Delta is
/// max(1, 10 M^3 alpha' / (pi^2 / 64)). Throws ConstructionError when every
/// input accepts and no override is given, SizeError beyond the dense cap.
[[nodiscard]] KitaevInstance build_gadget(const Circuit& c, std::uint64_t x, int idle,
                                          const GadgetOptions& opts = {});

struct GapReport {
    double value = 0;  // smallest eigenvalue above 1e-9
    double bound = 0;  // pi^2 / (64 M^3)
    [[nodiscard]] bool holds() const noexcept { return value >= bound; }
};

/// Smallest nonzero eigenvalue of H_in + H_prop + H_stab. Throws
/// InconsistencyError when it falls below the bound.
[[nodiscard]] GapReport verify_gap_lemma(const Circuit& c, std::uint64_t x, int idle);

}  // namespace dqsvt
