#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cesaro/linalg_core.hpp"

namespace cesaro {

enum class Verdict { PowerBounded, NotPowerBounded };

enum class Reason { OK, SpectralRadiusExceedsOne, DefectiveUnimodularEigenvalue };

constexpr const char* to_string(Verdict v) noexcept
{
    return v == Verdict::PowerBounded ? "PowerBounded" : "NotPowerBounded";
}

constexpr const char* to_string(Reason r) noexcept
{
    switch (r) {
    case Reason::OK: return "OK";
    case Reason::SpectralRadiusExceedsOne: return "SpectralRadiusExceedsOne";
    case Reason::DefectiveUnimodularEigenvalue: return "DefectiveUnimodularEigenvalue";
    }
    return "Unknown";
}

/// Outcome of the power-boundedness test together with the spectral split
/// T = S (diag(lambda_1..lambda_m) + B) S^-1.
///
/// Columns 0..m-1 of `similarity_S` are unit eigenvectors for the unimodular
/// eigenvalues, orthonormal inside each eigenvalue cluster; the remaining
/// d-m columns are an orthonormal basis of the invariant subspace belonging
/// to the eigenvalues inside the unit disc. The split fields are empty when
/// the verdict is NotPowerBounded.
struct PowerboundReport {
    Verdict verdict = Verdict::NotPowerBounded;
    Reason reason = Reason::OK;
    std::size_t d = 0;
    std::size_t m = 0;
    std::size_t stable_dim_l = 0;
    std::vector<Complex> spectrum;
    std::vector<Complex> unimodular_values;  // one per unimodular column (cluster centre)
    std::vector<std::size_t> cluster_of;     // cluster index per unimodular column
    std::size_t cluster_count = 0;
    Matrix similarity_S;
    Matrix interior_block_B;
    double power_bound_estimate = 0.0;
    double reconstruction_residual = 0.0;
    bool dead_zone_warning = false;  // some eigenvalue sits in the annulus around |z| = 1

    [[nodiscard]] bool power_bounded() const noexcept { return verdict == Verdict::PowerBounded; }
};

struct ClassLabel {
    enum class Kind { C11, LStable, C0dot };
    Kind kind = Kind::C0dot;
    std::size_t l = 0;

    [[nodiscard]] std::string name() const
    {
        switch (kind) {
        case Kind::C11: return "C11";
        case Kind::C0dot: return "C0dot";
        case Kind::LStable: return "LStable(" + std::to_string(l) + ")";
        }
        return "Unknown";
    }

    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

/// sup of ||T^n|| over n = 1, 2, 4, ..., 2^14 by repeated squaring.
inline double power_bound_estimate(const Matrix& t)
{
    Matrix p = t;
    double best = 0.0;
    for (int k = 0; k <= 14; ++k) {
        const double nrm = p.allFinite() ? operator_norm(p) : std::numeric_limits<double>::infinity();
        best = std::max(best, nrm);
        if (!std::isfinite(nrm) || nrm > 1e150) {
            return std::numeric_limits<double>::infinity();
        }
        p = (p * p).eval();
    }
    return best;
}

namespace detail {

/// Single-linkage clustering of points within `radius`; clusters are numbered
/// by first appearance.
inline std::vector<std::size_t> cluster_points(const std::vector<Complex>& pts, double radius, std::size_t& count)
{
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(pts[i] - pts[j]) <= radius) {
                parent[find(j)] = find(i);
            }
        }
    }
    std::vector<std::size_t> label(n);
    std::vector<std::size_t> root_label(n, n);
    count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (root_label[r] == n) {
            root_label[r] = count++;
        }
        label[i] = root_label[r];
    }
    return label;
}

} // namespace detail

inline PowerboundReport classify(const Matrix& t, const Tolerances& tol = {})
{
    require_square(t, "classify");
    require_finite(t, "classify input");

    PowerboundReport rep;
    const auto d = static_cast<std::size_t>(t.rows());
    rep.d = d;
    rep.power_bound_estimate = power_bound_estimate(t);

    Eigen::ComplexSchur<Matrix> schur(t);
    if (schur.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "complex Schur iteration did not converge");
    }
    Matrix q = schur.matrixU();
    Matrix r = schur.matrixT();
    r.triangularView<Eigen::StrictlyLower>().setZero();
    for (std::size_t i = 0; i < d; ++i) {
        rep.spectrum.push_back(r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
    }

    // Rounding splits a repeated eigenvalue by about sqrt(eps ||T||), which can
    // push one copy of a defective unimodular eigenvalue just outside the
    // circle. Near-coincident eigenvalues are judged by their mean modulus.
    const double split = 100.0 * std::sqrt(std::numeric_limits<double>::epsilon() * std::max(1.0, operator_norm(t)));
    std::size_t n_groups = 0;
    const std::vector<std::size_t> group = detail::cluster_points(rep.spectrum, split, n_groups);
    std::vector<Complex> group_sum(n_groups, Complex{0.0, 0.0});
    std::vector<double> group_size(n_groups, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        group_sum[group[i]] += rep.spectrum[i];
        group_size[group[i]] += 1.0;
    }

    std::vector<Complex> unimodular;
    for (std::size_t i = 0; i < d; ++i) {
        const Complex z = rep.spectrum[i];
        const double dev = std::abs(group_sum[group[i]] / group_size[group[i]]) - 1.0;
        if (dev > tol.unimod) {
            rep.reason = Reason::SpectralRadiusExceedsOne;
            return rep;
        }
        if (std::abs(dev) <= tol.unimod) {
            unimodular.push_back(z);
            if (std::abs(dev) > 1e-2 * tol.unimod) {
                rep.dead_zone_warning = true;
            }
        }
    }

    const double t_norm = operator_norm(t);
    const double rank_tol = tol.sing * std::max(1.0, t_norm) * static_cast<double>(d);
    std::size_t n_clusters = 0;
    const std::vector<std::size_t> labels = detail::cluster_points(unimodular, tol.eig, n_clusters);

    const std::size_t m = unimodular.size();
    Matrix eigvecs(t.rows(), static_cast<Eigen::Index>(m));
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < n_clusters; ++c) {
        Complex centre{0.0, 0.0};
        std::size_t p = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (labels[i] == c) {
                centre += unimodular[i];
                ++p;
            }
        }
        centre /= static_cast<double>(p);

        // The eigenspace is the right null space of T - centre*I; its dimension
        // must equal the algebraic multiplicity p (only 1x1 Jordan blocks).
        const Matrix shifted = t - centre * identity(t.rows());
        Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
        const RealVector& sv = svd.singularValues();
        std::size_t geometric = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) <= rank_tol) {
                ++geometric;
            }
        }
        if (geometric < p) {
            rep.reason = Reason::DefectiveUnimodularEigenvalue;
            return rep;
        }
        const auto pi = static_cast<Eigen::Index>(p);
        eigvecs.middleCols(col, pi) = svd.matrixV().rightCols(pi);
        for (std::size_t k = 0; k < p; ++k) {
            rep.unimodular_values.push_back(centre);
            rep.cluster_of.push_back(c);
        }
        col += pi;
    }

    // A Jordan block whose computed eigenvalues split beyond the clustering
    // radius shows up as nearly parallel eigenvectors of distinct clusters.
    if (m > 0 && smallest_singular_value(eigvecs) <= std::sqrt(tol.sing)) {
        rep.reason = Reason::DefectiveUnimodularEigenvalue;
        rep.unimodular_values.clear();
        rep.cluster_of.clear();
        return rep;
    }

    // Interior eigenvalues go first, so the leading Schur vectors span the
    // T-invariant subspace of the interior spectrum.
    const double inner = 1.0 - tol.unimod;
    reorder_schur(q, r, [inner](Complex z) { return std::abs(z) < inner; });
    const auto l = static_cast<Eigen::Index>(d - m);

    Matrix s(t.rows(), t.cols());
    s.leftCols(static_cast<Eigen::Index>(m)) = eigvecs;
    s.rightCols(l) = q.leftCols(l);
    if (smallest_singular_value(s) <= tol.sing * operator_norm(s)) {
        rep.reason = Reason::DefectiveUnimodularEigenvalue;
        rep.unimodular_values.clear();
        rep.cluster_of.clear();
        return rep;
    }

    rep.verdict = Verdict::PowerBounded;
    rep.reason = Reason::OK;
    rep.m = m;
    rep.stable_dim_l = d - m;
    rep.cluster_count = n_clusters;
    rep.similarity_S = s;
    rep.interior_block_B = r.topLeftCorner(l, l);

    Matrix j = Matrix::Zero(t.rows(), t.cols());
    for (std::size_t i = 0; i < m; ++i) {
        j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = rep.unimodular_values[i];
    }
    j.bottomRightCorner(l, l) = rep.interior_block_B;
    rep.reconstruction_residual = operator_norm(s * j * s.partialPivLu().inverse() - t);
    return rep;
}

inline ClassLabel class_label(const PowerboundReport& rep)
{
    if (!rep.power_bounded()) {
        throw Error(ErrorCode::NotPowerBounded, "class_label needs a power-bounded report");
    }
    if (rep.stable_dim_l == 0) {
        return {ClassLabel::Kind::C11, 0};
    }
    if (rep.stable_dim_l == rep.d) {
        return {ClassLabel::Kind::C0dot, rep.d};
    }
    return {ClassLabel::Kind::LStable, rep.stable_dim_l};
}

/// Whether T^*n T^n converges: unit eigenvectors of distinct unimodular
/// clusters must be mutually orthogonal.
inline bool norm_limit_exists(const PowerboundReport& rep, const Tolerances& tol = {})
{
    if (!rep.power_bounded()) {
        throw Error(ErrorCode::NotPowerBounded, "norm_limit_exists needs a power-bounded matrix");
    }
    const Matrix& s = rep.similarity_S;
    for (std::size_t i = 0; i < rep.m; ++i) {
        for (std::size_t j = i + 1; j < rep.m; ++j) {
            if (rep.cluster_of[i] == rep.cluster_of[j]) {
                continue;
            }
            const auto a = static_cast<Eigen::Index>(i);
            const auto b = static_cast<Eigen::Index>(j);
            if (std::abs(s.col(a).dot(s.col(b))) > tol.orth) {
                return false;
            }
        }
    }
    return true;
}

inline bool norm_limit_exists(const Matrix& t, const Tolerances& tol = {})
{
    return norm_limit_exists(classify(t, tol), tol);
}

/// Membership in { A >= 0 : sigma(A) in {0} u [1, inf), dim ker A >= rank E((1, inf)) }.
inline bool spectral_set_membership(const Matrix& a, const Tolerances& tol = {})
{
    require_square(a, "spectral_set_membership");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (hermitian_defect(a) > tol.herm * scale) {
        throw Error(ErrorCode::NotHermitian, "spectral_set_membership input is not Hermitian");
    }
    const HermitianEigen he = hermitian_eigen(a);
    std::size_t zeros = 0;
    std::size_t above_one = 0;
    for (Eigen::Index i = 0; i < he.values.size(); ++i) {
        const double v = he.values(i);
        if (v < -tol.psd) {
            throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(v) + " is negative");
        }
        if (v <= tol.psd) {
            ++zeros;
        } else if (v < 1.0 - tol.psd) {
            return false;
        } else if (v > 1.0 + tol.psd) {
            ++above_one;
        }
    }
    return zeros >= above_one;
}

} // namespace cesaro
