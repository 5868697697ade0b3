#pragma once

#include <dqsvt/common.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dqsvt {

/// Even real polynomial P(x) = P(-x), stored in one of two bases:
///
///   kMonomial:  P(x) = sum_r a_r x^(2r)
///   kChebyshev: P(x) = sum_k c_k T_(2k)(x) = sum_k c_k T_k(2x^2 - 1)
///
/// Only even-power information is stored, and both evaluators depend on x
/// only through x^2, so P(x) == P(-x) holds bit for bit.
class EvenPolynomial {
  public:
    enum class Basis { kMonomial, kChebyshev };

    /// Monomial degree above which conversion to monomial form is reported as
    /// ill-conditioned.
    static constexpr int kMonomialWarnDegree = 30;

    EvenPolynomial() : EvenPolynomial(Basis::kMonomial, {1.0}) {}

    static EvenPolynomial monomial(std::vector<double> even_coefficients) {
        return {Basis::kMonomial, std::move(even_coefficients)};
    }
    static EvenPolynomial chebyshev(std::vector<double> even_coefficients) {
        return {Basis::kChebyshev, std::move(even_coefficients)};
    }

    [[nodiscard]] Basis basis() const noexcept { return basis_; }
    /// Coefficient r multiplies x^(2r) (monomial) or T_(2r)(x) (Chebyshev).
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }
    /// d, so that the degree is 2d.
    [[nodiscard]] int half_degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] int degree() const noexcept { return 2 * half_degree(); }

    [[nodiscard]] double operator()(double x) const;

    /// Appends a message to `warnings` when the degree exceeds
    /// kMonomialWarnDegree.
    [[nodiscard]] EvenPolynomial to_monomial(std::vector<std::string>* warnings = nullptr) const;
    [[nodiscard]] EvenPolynomial to_chebyshev() const;

  private:
    EvenPolynomial(Basis basis, std::vector<double> coeffs);

    Basis basis_;
    std::vector<double> coeffs_;
};

[[nodiscard]] inline double eval(const EvenPolynomial& p, double x) { return p(x); }

/// Odd real polynomial on [-half_width, half_width]:
///   P(x) = sum_k b_k T_(2k+1)(x / half_width).
class OddPolynomial {
  public:
    OddPolynomial(std::vector<double> odd_coefficients, double half_width);

    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] double half_width() const noexcept { return half_width_; }
    [[nodiscard]] int degree() const noexcept { return 2 * static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] double operator()(double x) const;

  private:
    std::vector<double> coeffs_;
    double half_width_;
};

/// Odd polynomial P' with
///   P'(x) in [-1, 1]        on [-2, 2],
///   P'(x) in [-1, -1 + xi]  on [-2, -eta],
///   P'(x) in [1 - xi, 1]    on [eta, 2].
///
/// Realized as the Chebyshev interpolant of erf(k x / 2) with k tied to the
/// degree, rescaled so its sup norm on [-2, 2] is 1, and accepted only after a
/// grid check of the three boxes. Degrees are tried on a fixed geometric
/// ladder up to kSignMaxDegree. The polynomial built for a given degree does
/// not depend on xi, so the accepted degree is nonincreasing in xi.
///
/// Throws InvalidInput for eta <= 0 or xi outside (0, 1/2), and
/// ConstructionError when no degree on the ladder certifies.
[[nodiscard]] OddPolynomial build_sign_approx(double eta, double xi);

inline constexpr int kSignMaxDegree = 8191;

struct SignBoxReport {
    double sup_excess = 0;    // max(|P'| - 1) on [-2, 2]
    double upper_excess = 0;  // max violation of [1 - xi, 1] on [eta, 2]
    double lower_excess = 0;  // max violation of [-1, -1 + xi] on [-2, -eta]
    [[nodiscard]] bool pass(double tol = 1e-9) const {
        return sup_excess <= tol && upper_excess <= tol && lower_excess <= tol;
    }
};

[[nodiscard]] SignBoxReport check_sign_boxes(const OddPolynomial& p, double eta, double xi, int grid = 10000);

/// Interval parameters of a threshold polynomial: theta1 <= t1 <= t2 <= 1 -
/// theta2, thetas positive, chi in (0, 1).
struct ThresholdSpec {
    double t1 = 0;
    double t2 = 0;
    double theta1 = 0;
    double theta2 = 0;
    double chi = 0;

    /// Throws InvalidInput on violation.
    void validate() const;
};

/// Intermediate pieces of the threshold construction, exposed for tests and
/// diagnostics.
struct ThresholdConstruction {
    ThresholdSpec spec;
    double xi = 0;             // chi / 3
    OddPolynomial left;        // eta = theta1 / 2
    OddPolynomial right;       // eta = theta2 / 2
    double normalization = 0;  // max(1 + xi, sup of Q(x) + Q(-x))
    EvenPolynomial poly;

    /// Q(x) = (1 - xi) (left(x - t1 + theta1/2) + right(-x + t2 + theta2/2)) / 2 + xi
    [[nodiscard]] double q(double x) const;
};

/// Even P with |P| <= 1 on [-1, 1], P in [1 - chi, 1] on [t1, t2] and
/// P in [0, chi] on [0, t1 - theta1] u [t2 + theta2, 1], in Chebyshev form.
/// The result passes verify_threshold on a 10^4 point grid or
/// ConstructionError is thrown.
[[nodiscard]] ThresholdConstruction build_threshold_construction(const ThresholdSpec& spec);
[[nodiscard]] EvenPolynomial build_threshold(const ThresholdSpec& spec);

/// Measured ratio bound between the threshold degree and
/// (1/theta1 + 1/theta2) ln(1/chi) for this implementation.
inline constexpr double kThresholdDegreeConstant = 16.0;

struct ThresholdReport {
    double sup_excess = 0;      // max(|P| - 1) on [-1, 1]
    double inner_violation = 0; // on [t1, t2]
    double outer_violation = 0; // on [0, t1 - theta1] u [t2 + theta2, 1]
    double tolerance = 1e-9;
    [[nodiscard]] bool pass() const {
        return sup_excess <= tolerance && inner_violation <= tolerance && outer_violation <= tolerance;
    }
    /// Name of the worst region, empty when passing.
    [[nodiscard]] std::string failing_region() const;
};

/// Throws InvalidInput when grid < 1000.
[[nodiscard]] ThresholdReport verify_threshold(const EvenPolynomial& p, const ThresholdSpec& spec,
                                               int grid = 10000);

/// Chebyshev coefficients of f interpolated at the n+1 first-kind nodes on
/// [-1, 1]; exact for polynomials of degree <= n.
[[nodiscard]] std::vector<double> chebyshev_interpolate(const std::function<double(double)>& f, int n);

/// Clenshaw evaluation of sum_k c_k T_k(y).
[[nodiscard]] double chebyshev_eval(std::span<const double> c, double y);

}  // namespace dqsvt
