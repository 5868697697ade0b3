#include <dqsvt/oracle.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>

namespace dqsvt {

namespace {

constexpr Index kSvtLimit = 2048;
constexpr Index kGroundLimit = 4096;

}  // namespace

DenseMatrix to_dense_matrix(const SparseMatrix& a) {
    DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (const auto& t : a.triplets()) out(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    return out;
}

DenseVector to_dense_vector(std::span<const Complex> v) {
    DenseVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

DenseVector to_dense_vector(const QueryVector& v) {
    const auto dense = v.to_dense();
    return to_dense_vector(dense);
}

double DenseSvd::reconstruction_error(const DenseMatrix& a) const {
    const auto t = left.cols();
    const DenseMatrix rebuilt = left * sigma.head(t).cast<Complex>().asDiagonal() * right.leftCols(t).adjoint();
    return (rebuilt - a).cwiseAbs().maxCoeff();
}

double DenseSvd::orthonormality_error() const {
    double err = 0.0;
    if (left.cols() > 0) {
        err = (left.adjoint() * left - DenseMatrix::Identity(left.cols(), left.cols())).cwiseAbs().maxCoeff();
    }
    if (right.cols() > 0) {
        err = std::max(err, (right.adjoint() * right - DenseMatrix::Identity(right.cols(), right.cols()))
                                .cwiseAbs()
                                .maxCoeff());
    }
    return err;
}

DenseSvd dense_svd(const DenseMatrix& a) {
    if (a.cols() > static_cast<Eigen::Index>(kSvtLimit) || a.rows() > static_cast<Eigen::Index>(kSvtLimit)) {
        throw SizeError("dense_svd: dimension above " + std::to_string(kSvtLimit));
    }
    Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
    DenseSvd out;
    const auto n = a.cols();
    const auto t = std::min(a.rows(), a.cols());
    out.sigma = Eigen::VectorXd::Zero(n);
    out.sigma.head(t) = svd.singularValues();
    out.left = svd.matrixU().leftCols(t);
    out.right = svd.matrixV();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (out.reconstruction_error(a) > 1e-10 * scale || out.orthonormality_error() > 1e-10) {
        throw InconsistencyError("dense_svd: factorization check failed");
    }
    return out;
}

DenseVector exact_svt_apply(const DenseMatrix& a, const EvenPolynomial& p, const DenseVector& u) {
    if (a.cols() != u.size()) throw ShapeError("exact_svt_apply: A columns and u dimension differ");
    const DenseSvd svd = dense_svd(a);
    const DenseVector coeff = svd.right.adjoint() * u;
    DenseVector scaled(coeff.size());
    for (Eigen::Index i = 0; i < coeff.size(); ++i) scaled(i) = p(svd.sigma(i)) * coeff(i);
    return svd.right * scaled;
}

DenseVector exact_polynomial_apply(const DenseMatrix& a, const EvenPolynomial& p, const DenseVector& u) {
    if (a.cols() != u.size()) throw ShapeError("exact_polynomial_apply: A columns and u dimension differ");
    const auto c = p.coefficients();
    const DenseMatrix gram = a.adjoint() * a;
    if (p.basis() == EvenPolynomial::Basis::kMonomial) {
        DenseVector power = u;
        DenseVector acc = c[0] * u;
        for (std::size_t r = 1; r < c.size(); ++r) {
            power = gram * power;
            acc += c[r] * power;
        }
        return acc;
    }
    // T_k(B) u by the forward recurrence with B = 2 A^dagger A - I.
    auto apply_b = [&gram](const DenseVector& x) -> DenseVector { return 2.0 * (gram * x) - x; };
    DenseVector prev = u;
    DenseVector acc = c[0] * u;
    if (c.size() == 1) return acc;
    DenseVector cur = apply_b(u);
    acc += c[1] * cur;
    for (std::size_t k = 2; k < c.size(); ++k) {
        DenseVector next = 2.0 * apply_b(cur) - prev;
        acc += c[k] * next;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return acc;
}

Complex exact_bilinear(const DenseMatrix& a, const EvenPolynomial& p, const DenseVector& u, const DenseVector& v) {
    if (v.size() != u.size()) throw ShapeError("exact_bilinear: u and v dimensions differ");
    return v.dot(exact_svt_apply(a, p, u));
}

DenseMatrix exact_projector(const DenseMatrix& a, double lo, double hi) {
    const DenseSvd svd = dense_svd(a);
    const auto n = a.cols();
    DenseMatrix out = DenseMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = svd.sigma(i);
        if (s >= lo - kDegeneracyTol && s <= hi + kDegeneracyTol) {
            out += svd.right.col(i) * svd.right.col(i).adjoint();
        }
    }
    return out;
}

GroundSpace exact_ground(const DenseMatrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0) throw InvalidInput("exact_ground: matrix is empty or not square");
    if (h.rows() > static_cast<Eigen::Index>(kGroundLimit)) {
        throw SizeError("exact_ground: dimension above " + std::to_string(kGroundLimit));
    }
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidInput("exact_ground: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h);
    if (eig.info() != Eigen::Success) throw InconsistencyError("exact_ground: eigensolver failed");
    GroundSpace out;
    out.spectrum = eig.eigenvalues();
    out.energy = out.spectrum(0);
    out.projector = DenseMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < h.rows() && out.spectrum(i) <= out.energy + kDegeneracyTol; ++i) {
        out.projector += eig.eigenvectors().col(i) * eig.eigenvectors().col(i).adjoint();
        ++out.degeneracy;
    }
    return out;
}

double operator_norm(const DenseMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<DenseMatrix> svd(a);
    return svd.singularValues()(0);
}

}  // namespace dqsvt
