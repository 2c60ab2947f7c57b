#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cesaro/classifier.hpp"
#include "cesaro/linalg_core.hpp"

namespace cesaro {

enum class LimitMethod { Iterated, Spectral };

/// A Cesaro (equivalently Banach) asymptotic limit with its spectral metadata.
struct AsymptoticLimit {
    Matrix A;
    std::size_t rank_k = 0;
    std::size_t stable_dim_l = 0;
    std::vector<double> nonzero_eigs;  // descending
    LimitMethod method = LimitMethod::Spectral;
    std::size_t n_used = 0;            // Cesaro terms, for the iterated method
};

/// Wraps a PSD matrix with its rank data. Eigenvalues above tol.rank * ||A||
/// count as nonzero.
inline AsymptoticLimit make_limit(const Matrix& a, LimitMethod method = LimitMethod::Spectral,
                                  std::size_t n_used = 0, const Tolerances& tol = {})
{
    AsymptoticLimit out;
    out.A = 0.5 * (a + a.adjoint());
    out.method = method;
    out.n_used = n_used;
    const HermitianEigen he = hermitian_eigen(out.A);
    const double nrm = he.values.size() == 0 ? 0.0 : std::max(std::abs(he.values(0)),
                                                              std::abs(he.values(he.values.size() - 1)));
    const double cut = tol.rank * nrm;
    for (Eigen::Index i = 0; i < he.values.size(); ++i) {
        if (nrm > 0.0 && he.values(i) > cut) {
            out.nonzero_eigs.push_back(he.values(i));
        }
    }
    out.rank_k = out.nonzero_eigs.size();
    out.stable_dim_l = static_cast<std::size_t>(a.rows()) - out.rank_k;
    return out;
}

/// The Gram matrix S^*S of the similarity and the part of it that survives
/// Cesaro averaging: entry (k, l) of J^*n (S^*S) J^n carries the phase
/// conj(lambda_k)^n lambda_l^n, whose mean vanishes unless lambda_k and
/// lambda_l belong to the same unimodular cluster.
struct GramFilter {
    Matrix G;
    Matrix Gtilde;
};

inline GramFilter gram_filter(const PowerboundReport& rep)
{
    if (!rep.power_bounded()) {
        throw Error(ErrorCode::NotPowerBounded, "gram_filter needs a power-bounded report");
    }
    GramFilter gf;
    gf.G = rep.similarity_S.adjoint() * rep.similarity_S;
    gf.Gtilde = Matrix::Zero(gf.G.rows(), gf.G.cols());
    for (std::size_t k = 0; k < rep.m; ++k) {
        for (std::size_t l = 0; l < rep.m; ++l) {
            if (rep.cluster_of[k] == rep.cluster_of[l]) {
                const auto a = static_cast<Eigen::Index>(k);
                const auto b = static_cast<Eigen::Index>(l);
                gf.Gtilde(a, b) = gf.G(a, b);
            }
        }
    }
    return gf;
}

/// Running partial sums of T^*j T^j with compensated summation.
///
/// After `step()` has been called n times, `sum()` holds
/// sum_{j=1}^n T^*j T^j and `power()` holds T^n.
class CesaroAccumulator {
public:
    static constexpr double kPowerCeiling = 1e8;

    explicit CesaroAccumulator(const Matrix& t)
        : t_(t)
        , power_(identity(t.rows()))
        , next_(t.rows(), t.cols())
        , term_(t.rows(), t.cols())
        , sum_(Matrix::Zero(t.rows(), t.cols()))
        , comp_(Matrix::Zero(t.rows(), t.cols()))
    {
        require_square(t, "CesaroAccumulator");
        require_finite(t, "CesaroAccumulator input");
    }

    void step()
    {
        next_.noalias() = t_ * power_;
        power_.swap(next_);
        ++count_;
        const double frob = power_.norm();
        if (!(frob <= kPowerCeiling)) {
            const double op = power_.allFinite() ? operator_norm(power_) : std::numeric_limits<double>::infinity();
            if (!(op <= kPowerCeiling)) {
                throw Error(ErrorCode::NotConverging,
                            "||T^" + std::to_string(count_) +
                                "|| exceeds 1e8; Cesaro means of a matrix converge only if it is power-bounded");
            }
        }
        term_.noalias() = power_.adjoint() * power_;
        // Kahan update: sum += term.
        next_ = term_ - comp_;
        term_ = sum_ + next_;
        comp_ = (term_ - sum_) - next_;
        sum_.swap(term_);
    }

    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] const Matrix& sum() const noexcept { return sum_; }
    [[nodiscard]] const Matrix& power() const noexcept { return power_; }

    [[nodiscard]] Matrix mean() const
    {
        return count_ == 0 ? Matrix(sum_) : Matrix(sum_ / static_cast<double>(count_));
    }

private:
    Matrix t_;
    Matrix power_;
    Matrix next_;
    Matrix term_;
    Matrix sum_;
    Matrix comp_;
    std::size_t count_ = 0;
};

/// (1/n) sum_{j=1}^n T^*j T^j.
inline Matrix cesaro_iterate(const Matrix& t, std::size_t n)
{
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "cesaro_iterate needs n >= 1");
    }
    CesaroAccumulator acc(t);
    for (std::size_t j = 0; j < n; ++j) {
        acc.step();
    }
    return acc.mean();
}

/// Closed-form limit S^-* Gtilde S^-1 from the spectral split of T.
inline AsymptoticLimit cesaro_limit(const PowerboundReport& rep, const Tolerances& tol = {})
{
    if (!rep.power_bounded()) {
        throw Error(ErrorCode::NotPowerBounded,
                    "the Cesaro asymptotic limit exists only for power-bounded matrices (reason: " +
                        std::string(to_string(rep.reason)) + ")");
    }
    const auto d = static_cast<Eigen::Index>(rep.d);
    const auto m = static_cast<Eigen::Index>(rep.m);
    if (m == 0) {
        return make_limit(Matrix::Zero(d, d), LimitMethod::Spectral, 0, tol);
    }
    const GramFilter gf = gram_filter(rep);
    const Matrix s_inv = rep.similarity_S.partialPivLu().inverse();
    const Matrix y = s_inv.topRows(m);
    const Matrix a = y.adjoint() * gf.Gtilde.topLeftCorner(m, m) * y;
    return make_limit(a, LimitMethod::Spectral, 0, tol);
}

inline AsymptoticLimit cesaro_limit(const Matrix& t, const Tolerances& tol = {})
{
    return cesaro_limit(classify(t, tol), tol);
}

inline AsymptoticLimit adjoint_limit(const Matrix& t, const Tolerances& tol = {})
{
    return cesaro_limit(Matrix(t.adjoint()), tol);
}

/// ||T^* A T - A|| / max(||A||, 1).
inline double check_invariance(const Matrix& t, const AsymptoticLimit& lim)
{
    const Matrix diff = t.adjoint() * lim.A * t - lim.A;
    return operator_norm(diff) / std::max(operator_norm(lim.A), 1.0);
}

/// A nonzero asymptotic limit has norm at least one.
inline bool norm_lower_bound_check(const AsymptoticLimit& lim, const Tolerances& tol = {})
{
    const double nrm = operator_norm(lim.A);
    return nrm <= tol.zero || nrm >= 1.0 - tol.norm;
}

enum class TraceVerdict { C11Exact, LStableFeasible, Violation };

constexpr const char* to_string(TraceVerdict v) noexcept
{
    switch (v) {
    case TraceVerdict::C11Exact: return "C11Exact";
    case TraceVerdict::LStableFeasible: return "LStableFeasible";
    case TraceVerdict::Violation: return "Violation";
    }
    return "Unknown";
}

inline double reciprocal_sum(const std::vector<double>& values)
{
    double s = 0.0;
    for (double v : values) {
        s += 1.0 / v;
    }
    return s;
}

/// Trace conditions on the nonzero eigenvalues t_1..t_k of a limit:
/// sum 1/t_i = d when nothing is stable, sum 1/t_i <= k otherwise. The
/// fully stable case A = 0 satisfies the inequality with an empty sum.
inline TraceVerdict trace_condition(const AsymptoticLimit& lim, const Tolerances& tol = {})
{
    const std::size_t d = static_cast<std::size_t>(lim.A.rows());
    const double s = reciprocal_sum(lim.nonzero_eigs);
    const double slack = tol.trace_for(d);
    if (lim.stable_dim_l == 0) {
        return std::abs(s - static_cast<double>(d)) <= slack ? TraceVerdict::C11Exact : TraceVerdict::Violation;
    }
    return s <= static_cast<double>(lim.rank_k) + slack ? TraceVerdict::LStableFeasible : TraceVerdict::Violation;
}

/// ||A_{T,C}^-1 + A_{T^*,C}^-1 - 2I|| for a 2x2 matrix similar to a unitary.
inline double harmonic_mean_check(const Matrix& t, const Tolerances& tol = {})
{
    if (t.rows() != 2 || t.cols() != 2) {
        throw Error(ErrorCode::WrongDimension, "harmonic_mean_check is defined for 2x2 matrices");
    }
    const PowerboundReport rep = classify(t, tol);
    if (!rep.power_bounded() || class_label(rep).kind != ClassLabel::Kind::C11) {
        throw Error(ErrorCode::NotC11, "harmonic_mean_check needs a C11 matrix");
    }
    const Matrix a = cesaro_limit(rep, tol).A;
    const Matrix b = adjoint_limit(t, tol).A;
    return operator_norm(inverse(a, tol) + inverse(b, tol) - 2.0 * identity(2));
}

/// The 3x3 matrix S diag(1, -1, i) S^-1 with S = [[i,2,1],[0,1,i],[1,0,4]].
inline Matrix harmonic_counterexample_matrix()
{
    const Complex i{0.0, 1.0};
    Matrix s(3, 3);
    s << i, 2.0, 1.0, 0.0, 1.0, i, 1.0, 0.0, 4.0;
    Matrix u = Matrix::Zero(3, 3);
    u(0, 0) = 1.0;
    u(1, 1) = -1.0;
    u(2, 2) = i;
    return s * u * s.partialPivLu().inverse();
}

/// Ascending eigenvalues of A_{T,C}^-1 + A_{T^*,C}^-1 for the 3x3 example.
inline std::vector<double> harmonic_mean_counterexample(const Tolerances& tol = {})
{
    const Matrix t = harmonic_counterexample_matrix();
    const Matrix sum = inverse(cesaro_limit(t, tol).A, tol) + inverse(adjoint_limit(t, tol).A, tol);
    const HermitianEigen he = hermitian_eigen(sum);
    std::vector<double> out(he.values.data(), he.values.data() + he.values.size());
    std::sort(out.begin(), out.end());
    return out;
}

/// Envelope constant C(T) for ||mean_n - A|| <= C(T)/n:
/// 40 cond(S)^2 ||S||^2 (1/gap + 1/(1 - r(B))), where gap is the smallest
/// |1 - conj(lambda_k) lambda_l| over distinct unimodular clusters. Terms
/// with no pair or no interior block contribute zero.
inline double oracle_envelope(const PowerboundReport& rep)
{
    if (!rep.power_bounded()) {
        throw Error(ErrorCode::NotPowerBounded, "oracle_envelope needs a power-bounded report");
    }
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < rep.m; ++k) {
        for (std::size_t l = k + 1; l < rep.m; ++l) {
            if (rep.cluster_of[k] != rep.cluster_of[l]) {
                gap = std::min(gap, std::abs(1.0 - std::conj(rep.unimodular_values[k]) * rep.unimodular_values[l]));
            }
        }
    }
    double rate = std::isfinite(gap) ? 1.0 / gap : 0.0;
    if (rep.interior_block_B.size() > 0) {
        rate += 1.0 / (1.0 - spectral_radius(rep.interior_block_B));
    }
    const double cond = condition(rep.similarity_S);
    const double s_norm = operator_norm(rep.similarity_S);
    return 40.0 * cond * cond * s_norm * s_norm * rate;
}

} // namespace cesaro
