#pragma once

// Deciding whether a sparse matrix has a singular value in [t1, t2] given a
// guide with overlap delta on the corresponding right singular subspace.

#include <dqsvt/access.hpp>
#include <dqsvt/polynomial.hpp>
#include <dqsvt/svt.hpp>

#include <string>
#include <vector>

namespace dqsvt {

struct SveProblem {
    SparseMatrix a;
    SampledVector u;
    double t1 = 0;
    double t2 = 0;
    double theta1 = 0;
    double theta2 = 0;
    double delta = 1;

    /// Throws InvalidInput for bad interval parameters, ShapeError when u
    /// does not match A, ConfigError when zeta of u exceeds delta^2 / 56.
    void validate() const;
    [[nodiscard]] ThresholdSpec threshold_spec() const;
};

enum class SveDecision { kHasSv, kNoSv };

[[nodiscard]] const char* to_string(SveDecision d) noexcept;

struct SveConfig {
    double fail_prob = 0.01;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct SveResult {
    SveDecision decision = SveDecision::kNoSv;
    Complex estimate;
    double threshold = 0;  // delta^2 / 2
    double eps = 0;        // delta^2 / 7
    int degree = 0;
    BilinearEstimate run;
    std::vector<std::string> warnings;
};

/// Builds the threshold polynomial with chi = delta^2 / 3, estimates
/// u^dagger P(sqrt(A^dagger A)) u to eps = delta^2 / 7, and answers kHasSv iff
/// the real part exceeds delta^2 / 2.
///
/// Warnings are attached, never thrown, when the imaginary part reaches eps
/// and when the real part lands strictly between the two bands a promise
/// instance can produce.
[[nodiscard]] SveResult decide_singular_interval(const SveProblem& p, const SveConfig& cfg);

/// Same, with a caller-supplied polynomial (which must satisfy the threshold
/// boxes for p.threshold_spec()).
[[nodiscard]] SveResult decide_singular_interval(const SveProblem& p, const EvenPolynomial& poly,
                                                 const SveConfig& cfg);

}  // namespace dqsvt
