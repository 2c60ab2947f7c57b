#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cesaro/asymptotics.hpp"
#include "cesaro/classifier.hpp"
#include "cesaro/linalg_core.hpp"
#include "cesaro/random.hpp"

namespace cesaro {

/// Unitary (eps^{(j-1)(k-1)} / sqrt(d)) with eps = exp(2 pi i / d).
inline Matrix dft_unitary(Eigen::Index d)
{
    if (d < 1) {
        throw Error(ErrorCode::InvalidArgument, "dft_unitary needs d >= 1");
    }
    Matrix u(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            // Reduce the exponent mod d before forming the angle to keep it small.
            const auto e = static_cast<double>((j * k) % d);
            u(j, k) = std::polar(scale, 2.0 * std::numbers::pi * e / static_cast<double>(d));
        }
    }
    return u;
}

enum class Feasibility { C11, LStable, Zero, Infeasible };

constexpr const char* to_string(Feasibility f) noexcept
{
    switch (f) {
    case Feasibility::C11: return "C11";
    case Feasibility::LStable: return "LStable";
    case Feasibility::Zero: return "Zero";
    case Feasibility::Infeasible: return "Infeasible";
    }
    return "Unknown";
}

/// Prescribed nonzero eigenvalues t_1..t_k of a limit in dimension d.
struct SpectrumTarget {
    std::size_t d = 0;
    std::vector<double> nonzero;

    [[nodiscard]] std::size_t k() const noexcept { return nonzero.size(); }
    [[nodiscard]] std::size_t stable_dim_l() const noexcept { return d - nonzero.size(); }

    [[nodiscard]] Feasibility feasibility(const Tolerances& tol = {}) const
    {
        if (d == 0 || nonzero.size() > d) {
            return Feasibility::Infeasible;
        }
        for (double t : nonzero) {
            if (!(t > 0.0) || !std::isfinite(t)) {
                return Feasibility::Infeasible;
            }
        }
        if (nonzero.empty()) {
            return Feasibility::Zero;
        }
        const double s = reciprocal_sum(nonzero);
        if (stable_dim_l() == 0) {
            return std::abs(s - static_cast<double>(d)) <= tol.trace_for(d) ? Feasibility::C11
                                                                             : Feasibility::Infeasible;
        }
        return s <= static_cast<double>(k()) + tol.trace_for(d) ? Feasibility::LStable : Feasibility::Infeasible;
    }

    /// diag(t_1..t_k) followed by l zeros.
    [[nodiscard]] Matrix matrix() const
    {
        Matrix a = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < nonzero.size() && i < d; ++i) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = nonzero[i];
        }
        return a;
    }
};

struct SynthesisOptions {
    std::uint64_t seed = 0;  // selects the global phase of the unimodular eigenvalues
};

struct SynthesisResult {
    Matrix T;
    Matrix certificate_S;   // invertible with unit columns
    AsymptoticLimit realized_A;
    std::size_t projection_rank = 0;  // A = S^-* (I_r + 0) S^-1 with r = projection_rank
    std::string certificate_note;
};

namespace detail {

inline double global_phase(std::uint64_t seed, std::size_t d)
{
    Rng rng(mix_seed(seed, 0x5eed));
    return rng.uniform() * 2.0 * std::numbers::pi / static_cast<double>(std::max<std::size_t>(d, 1));
}

inline HermitianEigen checked_hermitian_eigen(const Matrix& a, const Tolerances& tol, const char* what)
{
    require_square(a, what);
    require_finite(a, what);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (hermitian_defect(a) > tol.herm * scale) {
        throw Error(ErrorCode::NotHermitian, std::string(what) + ": target is not Hermitian");
    }
    HermitianEigen he = hermitian_eigen(a);
    for (Eigen::Index i = 0; i < he.values.size(); ++i) {
        if (he.values(i) < -tol.psd * scale) {
            throw Error(ErrorCode::NotPSD,
                        std::string(what) + ": target has negative eigenvalue " + std::to_string(he.values(i)));
        }
    }
    return he;
}

inline std::string format_double(double x)
{
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

} // namespace detail

/// T similar to a unitary whose Cesaro limit is the positive definite
/// `target`, which must satisfy sum 1/t_i = d.
inline SynthesisResult synthesize_c11(const Matrix& target, const Tolerances& tol = {},
                                      const SynthesisOptions& opts = {})
{
    const HermitianEigen he = detail::checked_hermitian_eigen(target, tol, "synthesize_c11");
    const Eigen::Index d = target.rows();
    const auto du = static_cast<std::size_t>(d);
    const double t_max = he.values(0);
    const double t_min = he.values(d - 1);
    if (!(t_min > tol.rank * std::max(t_max, 0.0)) || t_min <= 0.0) {
        throw Error(ErrorCode::NotPositiveDefinite,
                    "C11 synthesis needs a positive definite target; smallest eigenvalue is " +
                        detail::format_double(t_min));
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        s += 1.0 / he.values(i);
    }
    if (std::abs(s - static_cast<double>(d)) > tol.trace_for(du)) {
        throw Error(ErrorCode::Infeasible, "trace condition violated: sum 1/t_i = " + detail::format_double(s) +
                                               " but C11 needs it to equal d = " + std::to_string(d));
    }

    Matrix s0 = dft_unitary(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        s0.row(i) /= std::sqrt(he.values(i));
    }
    const double phi0 = detail::global_phase(opts.seed, du);
    Matrix lambda = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        lambda(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d) + phi0);
    }
    const Matrix t0 = s0 * lambda * s0.partialPivLu().inverse();
    const Matrix& v = he.vectors;

    SynthesisResult out;
    out.T = v * t0 * v.adjoint();
    out.certificate_S = v * s0;
    for (Eigen::Index j = 0; j < d; ++j) {
        out.certificate_S.col(j).normalize();
    }
    out.realized_A = cesaro_limit(out.T, tol);
    out.projection_rank = du;
    out.certificate_note = "A = S^-* S^-1 with unit columns of S";
    return out;
}

inline SynthesisResult synthesize_zero(std::size_t d, const Tolerances& tol = {})
{
    if (d == 0) {
        throw Error(ErrorCode::InvalidArgument, "synthesize_zero needs d >= 1");
    }
    const auto n = static_cast<Eigen::Index>(d);
    SynthesisResult out;
    out.T = Matrix::Zero(n, n);
    out.certificate_S = identity(n);
    out.realized_A = make_limit(Matrix::Zero(n, n), LimitMethod::Spectral, 0, tol);
    out.projection_rank = 0;
    out.certificate_note = "T = 0 is fully stable";
    return out;
}

/// T with a nontrivial stable subspace whose Cesaro limit is the singular
/// PSD `target`; its nonzero eigenvalues must satisfy sum 1/t_i <= k.
inline SynthesisResult synthesize_l_stable(const Matrix& target, const Tolerances& tol = {},
                                           const SynthesisOptions& opts = {})
{
    const HermitianEigen he = detail::checked_hermitian_eigen(target, tol, "synthesize_l_stable");
    const Eigen::Index d = target.rows();
    const auto du = static_cast<std::size_t>(d);
    const double nrm = std::max(std::abs(he.values(0)), std::abs(he.values(d - 1)));
    Eigen::Index k = 0;
    while (k < d && nrm > 0.0 && he.values(k) > tol.rank * nrm) {
        ++k;
    }
    const Eigen::Index l = d - k;
    if (l < 1 || l > d - 1) {
        throw Error(ErrorCode::RankMismatch, "l-stable synthesis needs 1 <= l <= d-1, got l = " + std::to_string(l));
    }
    std::vector<double> t(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        t[static_cast<std::size_t>(i)] = he.values(i);
    }
    const double s = reciprocal_sum(t);
    const double kd = static_cast<double>(k);
    if (s > kd + tol.trace_for(du)) {
        throw Error(ErrorCode::Infeasible, "trace condition violated: sum 1/t_i = " + detail::format_double(s) +
                                               " exceeds k = " + std::to_string(k));
    }

    // Rescale the largest eigenvalue so the reduced k x k problem is exactly C11.
    double c = 1.0;
    if (std::abs(s - kd) > tol.trace_for(du)) {
        c = 1.0 / (t[0] * (kd - (s - 1.0 / t[0])));
    }
    Matrix reduced = Matrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        reduced(i, i) = t[static_cast<std::size_t>(i)];
    }
    reduced(0, 0) = c * t[0];
    // The reduced target is exactly C11 up to rounding in c.
    Tolerances loose = tol;
    loose.trace = std::max(tol.trace, 1e-9);
    const Matrix e = synthesize_c11(reduced, loose, opts).T;

    Matrix r = Matrix::Zero(l, k);
    r(0, 0) = std::sqrt(std::max(1.0 / c - 1.0, 0.0));

    Matrix t_raw = Matrix::Zero(d, d);
    t_raw.bottomLeftCorner(k, l) = e * r.adjoint();
    t_raw.bottomRightCorner(k, k) = e;

    const Matrix top = psd_sqrt((identity(l) + r * r.adjoint()).inverse());
    const Matrix bottom = psd_sqrt((identity(k) + r.adjoint() * r).inverse());
    Matrix x(d, d);
    x.topLeftCorner(l, l) = top;
    x.topRightCorner(l, k) = r * bottom;
    x.bottomLeftCorner(k, l) = -r.adjoint() * top;
    x.bottomRightCorner(k, k) = bottom;

    // Eigenbasis ordered as (kernel, range) so target = W (0_l + diag t) W^*.
    Matrix w(d, d);
    w.leftCols(l) = he.vectors.rightCols(l);
    w.rightCols(k) = he.vectors.leftCols(k);
    const Matrix g = w * x.adjoint();

    SynthesisResult out;
    out.T = g * t_raw * g.adjoint();
    const PowerboundReport rep = classify(out.T, tol);
    if (!rep.power_bounded()) {
        throw Error(ErrorCode::ConvergenceFailure, "synthesized matrix failed power-boundedness classification");
    }
    out.certificate_S = rep.similarity_S;
    out.realized_A = cesaro_limit(rep, tol);
    out.projection_rank = static_cast<std::size_t>(k);
    out.certificate_note = "A = S^-* (I_k + 0_l) S^-1 with projection rank k = rank(A) = " + std::to_string(k);
    return out;
}

/// Routes a spectrum to the matching constructive branch.
inline SynthesisResult synthesize(const SpectrumTarget& target, const Tolerances& tol = {},
                                  const SynthesisOptions& opts = {})
{
    switch (target.feasibility(tol)) {
    case Feasibility::C11: return synthesize_c11(target.matrix(), tol, opts);
    case Feasibility::LStable: return synthesize_l_stable(target.matrix(), tol, opts);
    case Feasibility::Zero: return synthesize_zero(target.d, tol);
    case Feasibility::Infeasible: break;
    }
    std::string why;
    if (target.d == 0 || target.k() > target.d) {
        why = "need 1 <= d and k <= d";
    } else if (target.stable_dim_l() == 0) {
        why = "sum 1/t_i = " + detail::format_double(reciprocal_sum(target.nonzero)) + " must equal d = " +
              std::to_string(target.d);
    } else {
        why = "sum 1/t_i = " + detail::format_double(reciprocal_sum(target.nonzero)) + " must be <= k = " +
              std::to_string(target.k());
    }
    for (double t : target.nonzero) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            why = "every t_i must be positive and finite";
        }
    }
    throw Error(ErrorCode::Infeasible, "infeasible target: " + why);
}

/// An idempotent P with P^* P = target, for targets in the spectral set.
inline Matrix synthesize_norm_limit(const Matrix& target, const Tolerances& tol = {})
{
    if (!spectral_set_membership(target, tol)) {
        throw Error(ErrorCode::NotInSpectralSet,
                    "target needs spectrum in {0} u [1, inf) and at least as many zeros as eigenvalues above 1");
    }
    const HermitianEigen he = hermitian_eigen(target);
    const Eigen::Index d = target.rows();
    std::vector<Eigen::Index> big;
    std::vector<Eigen::Index> zeros;
    Matrix p0 = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double v = he.values(i);
        if (v > 1.0 + tol.psd) {
            big.push_back(i);
        } else if (v >= 1.0 - tol.psd) {
            p0(i, i) = 1.0;
        } else {
            zeros.push_back(i);
        }
    }
    // Each a > 1 pairs with a kernel direction z: P e_i = e_i + b e_z, P e_z = 0.
    for (std::size_t j = 0; j < big.size(); ++j) {
        const Eigen::Index i = big[j];
        const Eigen::Index z = zeros[j];
        p0(i, i) = 1.0;
        p0(z, i) = std::sqrt(he.values(i) - 1.0);
    }
    return he.vectors * p0 * he.vectors.adjoint();
}

/// Parameters of the random power-bounded generator.
struct GeneratorProfile {
    double condition_bound = 50.0;
    double interior_radius = 0.8;
    double gap_floor = 0.05;  // minimum distance between distinct unimodular eigenvalues
    double coupling = 0.1;    // scale of the strictly upper part of B
};

/// A generated T = S (diag(lambda) + B) S^-1 with its ground truth.
struct GeneratedInstance {
    Matrix T;
    Matrix S;
    std::vector<Complex> lambdas;
    Matrix B;
    std::size_t d = 0;
    std::size_t l = 0;
    Matrix limit;        // exact Cesaro limit Y^* Y, Y the first m rows of S^-1
    double delta = 0.0;  // lower bound of ||T^n v|| over unit v orthogonal to the stable subspace
};

namespace detail {

inline std::vector<Complex> draw_unimodular(std::size_t m, double gap_floor, Rng& rng)
{
    if (m == 0) {
        return {};
    }
    if (static_cast<double>(m) * gap_floor >= 2.0 * std::numbers::pi * 0.5) {
        throw Error(ErrorCode::InvalidArgument, "gap_floor too large for the requested number of eigenvalues");
    }
    for (;;) {
        std::vector<Complex> out;
        for (std::size_t i = 0; i < m; ++i) {
            out.push_back(rng.unit_phase());
        }
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            for (std::size_t j = i + 1; j < m && ok; ++j) {
                ok = std::abs(out[i] - out[j]) >= gap_floor;
            }
        }
        if (ok) {
            return out;
        }
    }
}

} // namespace detail

/// Deterministic random power-bounded matrix with d - l unimodular
/// eigenvalues and an l x l interior block.
inline GeneratedInstance random_powerbounded(std::size_t d, std::size_t l, std::uint64_t seed,
                                             const GeneratorProfile& profile = {})
{
    if (d == 0 || l > d) {
        throw Error(ErrorCode::InvalidArgument, "random_powerbounded needs d >= 1 and 0 <= l <= d");
    }
    if (!(profile.condition_bound > 1.0) || !(profile.interior_radius >= 0.0 && profile.interior_radius < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "generator profile needs condition_bound > 1 and radius in [0, 1)");
    }
    Rng rng(seed);
    const std::size_t m = d - l;
    const auto n = static_cast<Eigen::Index>(d);
    const auto mi = static_cast<Eigen::Index>(m);
    const auto li = static_cast<Eigen::Index>(l);

    GeneratedInstance g;
    g.d = d;
    g.l = l;
    g.lambdas = detail::draw_unimodular(m, profile.gap_floor, rng);

    g.B = Matrix::Zero(li, li);
    for (Eigen::Index i = 0; i < li; ++i) {
        g.B(i, i) = profile.interior_radius * rng.uniform() * rng.unit_phase();
        for (Eigen::Index j = i + 1; j < li; ++j) {
            g.B(i, j) = profile.coupling * rng.complex_normal();
        }
    }

    for (;;) {
        Matrix s(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                s(i, j) = rng.complex_normal();
            }
            s.col(j).normalize();
        }
        if (condition(s) <= profile.condition_bound) {
            g.S = s;
            break;
        }
    }

    Matrix j = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < mi; ++i) {
        j(i, i) = g.lambdas[static_cast<std::size_t>(i)];
    }
    j.bottomRightCorner(li, li) = g.B;
    const Matrix s_inv = g.S.partialPivLu().inverse();
    g.T = g.S * j * s_inv;

    const Matrix y = s_inv.topRows(mi);
    g.limit = y.adjoint() * y;
    if (m > 0) {
        // Orthonormal basis of the complement of the stable subspace span(S_interior).
        Matrix basis = identity(n);
        if (l > 0) {
            Eigen::JacobiSVD<Matrix> svd(g.S.rightCols(li), Eigen::ComputeFullU);
            basis = svd.matrixU().rightCols(mi);
        }
        g.delta = smallest_singular_value(g.S) * smallest_singular_value(y * basis);
    }
    return g;
}

/// W (U + C) W^* with W and U unitary and ||C|| <= 0.9; a contraction
/// whose limit is the projection onto the first d - l coordinates of W.
inline GeneratedInstance random_contraction(std::size_t d, std::size_t l, std::uint64_t seed)
{
    if (d == 0 || l > d) {
        throw Error(ErrorCode::InvalidArgument, "random_contraction needs d >= 1 and 0 <= l <= d");
    }
    Rng rng(seed);
    const std::size_t m = d - l;
    const auto n = static_cast<Eigen::Index>(d);
    const auto mi = static_cast<Eigen::Index>(m);
    const auto li = static_cast<Eigen::Index>(l);

    GeneratedInstance g;
    g.d = d;
    g.l = l;
    for (std::size_t i = 0; i < m; ++i) {
        g.lambdas.push_back(rng.unit_phase());
    }
    g.B = Matrix::Zero(li, li);
    if (l > 0) {
        for (Eigen::Index i = 0; i < li; ++i) {
            for (Eigen::Index k = 0; k < li; ++k) {
                g.B(i, k) = rng.complex_normal();
            }
        }
        g.B *= 0.9 * rng.uniform() / std::max(operator_norm(g.B), 1e-300);
    }
    g.S = random_unitary(n, rng);
    Matrix j = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < mi; ++i) {
        j(i, i) = g.lambdas[static_cast<std::size_t>(i)];
    }
    j.bottomRightCorner(li, li) = g.B;
    g.T = g.S * j * g.S.adjoint();
    g.limit = g.S.leftCols(mi) * g.S.leftCols(mi).adjoint();
    g.delta = m > 0 ? 1.0 : 0.0;
    return g;
}

/// S (I_r + 0) S^-1 with a random rank r in [0, d] and cond(S) <= condition_bound.
inline Matrix random_idempotent(std::size_t d, std::uint64_t seed, double condition_bound = 20.0)
{
    if (d == 0) {
        throw Error(ErrorCode::InvalidArgument, "random_idempotent needs d >= 1");
    }
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(d);
    const auto r = static_cast<Eigen::Index>(rng.integer(0, static_cast<std::int64_t>(d)));
    Matrix s(n, n);
    do {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                s(i, j) = rng.complex_normal();
            }
        }
    } while (condition(s) > condition_bound);
    Matrix j = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < r; ++i) {
        j(i, i) = 1.0;
    }
    return s * j * s.partialPivLu().inverse();
}

/// W diag(a) W^* with spectrum in {0} u [1, inf): some eigenvalues in (1, 5],
/// at least as many zeros, ones for the rest.
inline Matrix random_spectral_set_member(std::size_t d, std::uint64_t seed)
{
    if (d == 0) {
        throw Error(ErrorCode::InvalidArgument, "random_spectral_set_member needs d >= 1");
    }
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(d);
    const auto big = rng.integer(0, static_cast<std::int64_t>(d / 2));
    const auto zeros = rng.integer(big, static_cast<std::int64_t>(d) - big);
    RealVector a = RealVector::Ones(n);
    for (Eigen::Index i = 0; i < big; ++i) {
        a(i) = rng.uniform(1.05, 5.0);
    }
    for (Eigen::Index i = 0; i < zeros; ++i) {
        a(n - 1 - i) = 0.0;
    }
    const Matrix w = random_unitary(n, rng);
    const Matrix out = w * a.cast<Complex>().asDiagonal() * w.adjoint();
    return 0.5 * (out + out.adjoint());
}

} // namespace cesaro
