#pragma once

// Dense reference computations. Everything here is O(N^3) and meant for
// desk-scale cross-checks of the sparse and sampling code paths.

#include <dqsvt/access.hpp>
#include <dqsvt/polynomial.hpp>

#include <Eigen/Dense>

#include <span>

namespace dqsvt {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Spectral grouping tolerance shared by every oracle routine.
inline constexpr double kDegeneracyTol = 1e-9;

[[nodiscard]] DenseMatrix to_dense_matrix(const SparseMatrix& a);
[[nodiscard]] DenseVector to_dense_vector(std::span<const Complex> v);
[[nodiscard]] DenseVector to_dense_vector(const QueryVector& v);

/// A = sum_i sigma_i u_i v_i^dagger with sigma descending. `right` is the
/// full N x N unitary; columns past min(M, N) carry singular value zero.
struct DenseSvd {
    Eigen::VectorXd sigma;  // length N, zero-padded when M < N
    DenseMatrix left;       // M x min(M, N)
    DenseMatrix right;      // N x N

    /// Max entry error of the reconstruction and of the two Gram matrices.
    [[nodiscard]] double reconstruction_error(const DenseMatrix& a) const;
    [[nodiscard]] double orthonormality_error() const;
};

/// Throws InconsistencyError when the factorization misses 1e-10 on either
/// check.
[[nodiscard]] DenseSvd dense_svd(const DenseMatrix& a);

/// sum_i P(sigma_i) (v_i^dagger u) v_i over all N right singular vectors.
/// Throws ShapeError on mismatch and SizeError for N > 2048.
[[nodiscard]] DenseVector exact_svt_apply(const DenseMatrix& a, const EvenPolynomial& p, const DenseVector& u);

/// The same operator applied through matrix powers of A^dagger A: the power
/// sum for monomial coefficients, the three-term recurrence in
/// 2 A^dagger A - I for Chebyshev coefficients. No decomposition is involved.
[[nodiscard]] DenseVector exact_polynomial_apply(const DenseMatrix& a, const EvenPolynomial& p,
                                                 const DenseVector& u);

/// v^dagger P(sqrt(A^dagger A)) u.
[[nodiscard]] Complex exact_bilinear(const DenseMatrix& a, const EvenPolynomial& p, const DenseVector& u,
                                     const DenseVector& v);

/// Projector onto the right singular vectors with sigma in [lo, hi], widened
/// by kDegeneracyTol.
[[nodiscard]] DenseMatrix exact_projector(const DenseMatrix& a, double lo, double hi);

struct GroundSpace {
    double energy = 0;
    Eigen::VectorXd spectrum;  // ascending
    DenseMatrix projector;
    Index degeneracy = 0;
};

/// Smallest eigenvalue and the projector onto all eigenvalues within
/// kDegeneracyTol of it. Throws InvalidInput for a non-Hermitian input and
/// SizeError above dimension 4096.
[[nodiscard]] GroundSpace exact_ground(const DenseMatrix& h);

/// Largest singular value.
[[nodiscard]] double operator_norm(const DenseMatrix& a);

}  // namespace dqsvt
