#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cesaro/config.hpp"
#include "cesaro/error.hpp"

namespace cesaro {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Throws unless every entry of `a` is finite.
inline void require_finite(const Matrix& a, const char* what = "matrix")
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const Complex z = a.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a non-finite entry");
        }
    }
}

inline void require_square(const Matrix& a, const char* what = "matrix")
{
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " must be square and non-empty, got " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()));
    }
}

inline Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

inline Matrix mul(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                                      " times " + std::to_string(b.rows()) + "x" +
                                                      std::to_string(b.cols()));
    }
    return a * b;
}

inline Matrix adjoint(const Matrix& a) { return a.adjoint(); }

inline RealVector singular_values(const Matrix& a)
{
    if (a.size() == 0) {
        return RealVector{};
    }
    return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

/// Largest singular value.
inline double operator_norm(const Matrix& a)
{
    if (a.size() == 0) {
        return 0.0;
    }
    return singular_values(a)(0);
}

/// Operator norm of a Hermitian matrix via its eigenvalues; cheaper than an SVD.
inline double hermitian_norm(const Matrix& h)
{
    if (h.size() == 0) {
        return 0.0;
    }
    const Matrix sym = 0.5 * (h + h.adjoint());
    const RealVector ev = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

inline double smallest_singular_value(const Matrix& a)
{
    const RealVector s = singular_values(a);
    return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

/// Ratio of extreme singular values; infinity for singular input.
inline double condition(const Matrix& a)
{
    const RealVector s = singular_values(a);
    if (s.size() == 0) {
        return 1.0;
    }
    const double lo = s(s.size() - 1);
    return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

inline Matrix inverse(const Matrix& a, const Tolerances& tol = {})
{
    require_square(a, "inverse");
    const RealVector s = singular_values(a);
    const double threshold = tol.sing * s(0);
    if (s(s.size() - 1) <= threshold || s(0) == 0.0) {
        throw Error(ErrorCode::SingularMatrix,
                    "smallest singular value " + std::to_string(s(s.size() - 1)) + " is below " +
                        std::to_string(threshold));
    }
    return a.partialPivLu().inverse();
}

/// Spectrum, eigenvectors and a Schur pair of a square matrix.
struct EigenSystem {
    std::vector<Complex> values;
    Matrix vectors;  // right eigenvectors as columns (unreliable for defective eigenvalues)
    Matrix schur_q;  // unitary
    Matrix schur_t;  // upper triangular, a = schur_q * schur_t * schur_q^*
};

inline EigenSystem eigen(const Matrix& a)
{
    require_square(a, "eigen");
    Eigen::ComplexSchur<Matrix> schur(a);
    if (schur.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "complex Schur iteration did not converge");
    }
    Eigen::ComplexEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "eigenvector computation did not converge");
    }
    EigenSystem out;
    out.schur_q = schur.matrixU();
    out.schur_t = schur.matrixT();
    out.schur_t.triangularView<Eigen::StrictlyLower>().setZero();
    out.values.reserve(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        out.values.push_back(out.schur_t(i, i));
    }
    out.vectors = solver.eigenvectors();
    return out;
}

inline double spectral_radius(const Matrix& a)
{
    if (a.size() == 0) {
        return 0.0;
    }
    double r = 0.0;
    for (const Complex& z : eigen(a).values) {
        r = std::max(r, std::abs(z));
    }
    return r;
}

/// Swaps the adjacent diagonal entries k and k+1 of the upper-triangular
/// `t` with a Givens rotation, updating the Schur vectors `q` so that
/// q * t * q^* is unchanged.
inline void swap_schur_pair(Matrix& q, Matrix& t, Eigen::Index k)
{
    const Complex a = t(k, k);
    const Complex b = t(k, k + 1);
    const Complex c = t(k + 1, k + 1);
    const double nrm = std::hypot(std::abs(b), std::abs(c - a));
    if (nrm == 0.0) {
        return;
    }
    // First column of the rotation is the eigenvector of the 2x2 block for c.
    const Complex cs = b / nrm;
    const Complex sn = (c - a) / nrm;
    Eigen::Matrix2cd z;
    z << cs, -std::conj(sn), sn, std::conj(cs);

    t.middleCols(k, 2) = (t.middleCols(k, 2) * z).eval();
    t.middleRows(k, 2) = (z.adjoint() * t.middleRows(k, 2)).eval();
    q.middleCols(k, 2) = (q.middleCols(k, 2) * z).eval();
    t(k, k) = c;
    t(k + 1, k + 1) = a;
    t(k + 1, k) = Complex{0.0, 0.0};
}

/// Reorders a Schur pair so the diagonal entries selected by `first` come
/// first, keeping the relative order within each group.
inline void reorder_schur(Matrix& q, Matrix& t, const std::function<bool(Complex)>& first)
{
    const Eigen::Index n = t.rows();
    Eigen::Index placed = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!first(t(i, i))) {
            continue;
        }
        for (Eigen::Index k = i - 1; k >= placed; --k) {
            swap_schur_pair(q, t, k);
        }
        ++placed;
    }
}

inline double hermitian_defect(const Matrix& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

/// Hermitian eigendecomposition with a deterministic basis: eigenvalues in
/// descending order and each eigenvector scaled so its first component of
/// modulus above 1e-12 is real and positive.
struct HermitianEigen {
    RealVector values;
    Matrix vectors;
};

inline HermitianEigen hermitian_eigen(const Matrix& a)
{
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    const Eigen::Index n = a.rows();
    HermitianEigen out{RealVector(n), Matrix(n, n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = n - 1 - j;
        out.values(j) = solver.eigenvalues()(src);
        Vector v = solver.eigenvectors().col(src);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v(i)) > 1e-12) {
                v *= std::conj(v(i)) / std::abs(v(i));
                break;
            }
        }
        out.vectors.col(j) = v;
    }
    return out;
}

/// Hermitian PSD square root; eigenvalues in [-tol.psd, 0) are clamped to 0.
inline Matrix psd_sqrt(const Matrix& a, const Tolerances& tol = {})
{
    require_square(a, "psd_sqrt");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (hermitian_defect(a) > tol.herm * scale) {
        throw Error(ErrorCode::NotHermitian, "psd_sqrt input is not Hermitian");
    }
    const HermitianEigen he = hermitian_eigen(a);
    RealVector roots(he.values.size());
    for (Eigen::Index i = 0; i < he.values.size(); ++i) {
        const double v = he.values(i);
        if (v < -tol.psd * scale) {
            throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(v) + " is negative");
        }
        roots(i) = std::sqrt(std::max(v, 0.0));
    }
    return he.vectors * roots.cast<Complex>().asDiagonal() * he.vectors.adjoint();
}

/// Orthonormal basis of the column span, in column order (modified
/// Gram-Schmidt with one reorthogonalisation pass, positive real diagonal
/// convention). Rejects inputs whose normalised Gram determinant is at or
/// below tol.sing.
inline Matrix orthonormalize_within(const Matrix& vectors, const Tolerances& tol = {})
{
    const Eigen::Index n = vectors.cols();
    Matrix q = vectors;
    double gram_det = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double original = q.col(j).norm();
        if (original == 0.0) {
            throw Error(ErrorCode::RankDeficient, "zero column " + std::to_string(j));
        }
        q.col(j) /= original;
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < j; ++i) {
                const Complex proj = q.col(i).dot(q.col(j));
                q.col(j) -= proj * q.col(i);
            }
        }
        const double residual = q.col(j).norm();
        gram_det *= residual * residual;
        if (gram_det <= tol.sing) {
            throw Error(ErrorCode::RankDeficient, "columns are numerically dependent at column " + std::to_string(j));
        }
        q.col(j) /= residual;
    }
    return q;
}

/// Haar-distributed unitary built from a Gaussian draw.
template <class Rng>
Matrix random_unitary(Eigen::Index d, Rng& rng)
{
    Matrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            g(i, j) = rng.complex_normal();
        }
    }
    return orthonormalize_within(g);
}

} // namespace cesaro
