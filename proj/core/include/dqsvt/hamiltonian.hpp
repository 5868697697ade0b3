#pragma once

// k-local Hamiltonians on n qubits and the guided ground-energy routines
// built on top of the singular value decision procedure.
//
// Qubit 0 is the most significant bit of a computational basis index. Inside
// a term, the first listed qubit is the most significant bit of the block.

#include <dqsvt/access.hpp>
#include <dqsvt/sve.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace dqsvt {

inline constexpr int kMaxLocality = 10;
inline constexpr int kMaxAssembleQubits = 20;
inline constexpr int kMaxDenseQubits = 12;

struct LocalTerm {
    std::vector<int> qubits;
    std::vector<Complex> block;  // 2^j x 2^j, row-major

    [[nodiscard]] Index block_dim() const noexcept { return Index{1} << qubits.size(); }
};

struct LocalHamiltonian {
    int n = 0;
    int k = 0;
    std::vector<LocalTerm> terms;

    /// Throws InvalidInput on repeated or out-of-range qubits, a term wider
    /// than k, a block of the wrong size, or a block that is not Hermitian
    /// to 1e-12. Throws SizeError for k above kMaxLocality.
    void validate() const;
    [[nodiscard]] Index dimension() const noexcept { return Index{1} << n; }
};

struct AssembleOptions {
    bool shift = false;       // return (H + 3I) / 4
    bool check_norm = true;   // require ||H|| <= 1
    int max_qubits = kMaxAssembleQubits;
};

/// Sparse matrix of H (or of (H + 3I)/4), summing each term's contribution
/// over matching basis pairs. The norm check is exact for n <= 12 and uses
/// the Gershgorin bound above that. Throws InvalidInput for a norm violation
/// and SizeError above max_qubits.
[[nodiscard]] SparseMatrix assemble_sparse(const LocalHamiltonian& h, const AssembleOptions& opts = {});

/// Largest absolute row sum.
[[nodiscard]] double gershgorin_bound(const SparseMatrix& h);

enum class GlhOutcome { kLow, kHigh };

[[nodiscard]] const char* to_string(GlhOutcome o) noexcept;

struct GlhConfig {
    double fail_prob = 0.01;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct GlhDecision {
    GlhOutcome outcome = GlhOutcome::kHigh;
    SveResult sve;
};

/// Decides lambda_H <= a versus lambda_H >= b by asking whether (H + 3I)/4
/// has a singular value in [1/2, (3 + a)/4] with theta1 = 1/2 and
/// theta2 = (b - a)/4. Throws InvalidInput unless -1 <= a < b <= 1.
[[nodiscard]] GlhDecision decide_glh(const LocalHamiltonian& h, const SampledVector& u, double delta, double a,
                                     double b, const GlhConfig& cfg);

/// Same, with the shifted matrix (H + 3I)/4 already assembled.
[[nodiscard]] GlhDecision decide_glh_shifted(const SparseMatrix& shifted, const SampledVector& u, double delta,
                                             double a, double b, const GlhConfig& cfg);

enum class ScanCase { kAllLow, kAllHigh, kStep };

struct ScanResult {
    double estimate = 0;
    double lo = 0;  // concluded interval
    double hi = 0;
    ScanCase scan_case = ScanCase::kStep;
    int step = 0;   // i0 in case kStep, 0 otherwise
    int r = 0;
    std::vector<GlhOutcome> outcomes;  // outcome of iteration i at position i - 1
};

/// r = ceil(2/eps) (with a 1e-9 relative allowance, so eps = 2/r gives r).
[[nodiscard]] int scan_resolution(double eps);

/// Runs decide(i, a_i, b_i) for i = 1..2r with a_i = (i - r - 1)/r and
/// b_i = (i - r)/r, classifies the outcome pattern and returns the midpoint
/// of the concluded interval. Throws InconsistencyError when the pattern is
/// not a run of kHigh followed by a run of kLow.
[[nodiscard]] ScanResult scan_ground_energy(double eps,
                                            const std::function<GlhOutcome(int, double, double)>& decide);

struct GroundEnergyEstimate {
    ScanResult scan;
    std::vector<std::string> warnings;
};

/// Scan driven by decide_glh, with failure probability fail_prob / (2r) per
/// iteration and seed derive_seed(seed, i) for iteration i.
[[nodiscard]] GroundEnergyEstimate estimate_ground_energy(const LocalHamiltonian& h, const SampledVector& u,
                                                          double delta, double eps, const GlhConfig& cfg);

/// ||Pi_H u|| from a dense eigendecomposition. Throws SizeError for n > 12.
[[nodiscard]] double ground_overlap(const LocalHamiltonian& h, std::span<const Complex> u);

}  // namespace dqsvt
