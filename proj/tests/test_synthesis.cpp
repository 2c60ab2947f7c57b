#include <gtest/gtest.h>

#include "cesaro/synthesis.hpp"
#include "oracles.hpp"

using namespace cesaro;

namespace {

Matrix diag(std::initializer_list<double> values)
{
    const auto n = static_cast<Eigen::Index>(values.size());
    Matrix m = Matrix::Zero(n, n);
    Eigen::Index i = 0;
    for (double v : values) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

double max_col_dev(const Matrix& s)
{
    double out = 0.0;
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
        out = std::max(out, std::abs(s.col(j).norm() - 1.0));
    }
    return out;
}

} // namespace

TEST(Dft, Examples)
{
    EXPECT_EQ(dft_unitary(1), Matrix::Identity(1, 1));
    Matrix two(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    two << r, r, r, -r;
    EXPECT_LE((dft_unitary(2) - two).norm(), 1e-15);
    for (Eigen::Index d : {3, 4, 7}) {
        const Matrix u = dft_unitary(d);
        EXPECT_LE((u.adjoint() * u - identity(d)).norm(), 1e-12);
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            EXPECT_NEAR(std::abs(u.data()[i]), 1.0 / std::sqrt(static_cast<double>(d)), 1e-15);
        }
    }
    EXPECT_THROW((void)dft_unitary(0), Error);
}

TEST(SynthesizeC11, IdentityGivesUnitary)
{
    const SynthesisResult r = synthesize_c11(identity(3));
    EXPECT_LE((r.T.adjoint() * r.T - identity(3)).norm(), 1e-12);
    EXPECT_LE(operator_norm(r.realized_A.A - identity(3)), 1e-12);
    EXPECT_LE(max_col_dev(r.certificate_S), 1e-12);
}

TEST(SynthesizeC11, DiagTwoTwoThirds)
{
    const Matrix target = diag({2.0, 2.0 / 3.0});
    const SynthesisResult r = synthesize_c11(target);
    EXPECT_LE(operator_norm(r.realized_A.A - target), 1e-9);
    EXPECT_LE(operator_norm(cesaro_iterate(r.T, 10000) - target), 1e-2);
    EXPECT_LE(operator_norm(oracle::cesaro_mean(r.T, 2000) - target), 1e-2);
    EXPECT_LE(max_col_dev(r.certificate_S), 1e-12);
    // A = S^-* S^-1 for the certificate.
    const Matrix si = r.certificate_S.inverse();
    EXPECT_LE(operator_norm(si.adjoint() * si - target), 1e-9);
    EXPECT_EQ(class_label(classify(r.T)).kind, ClassLabel::Kind::C11);
}

TEST(SynthesizeC11, InfeasibleAndNotPositiveDefinite)
{
    try {
        (void)synthesize_c11(diag({2.0, 2.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Infeasible);
    }
    try {
        (void)synthesize_c11(diag({2.0, 0.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
    }
}

TEST(SynthesizeC11, SeedChangesPhaseOnly)
{
    const Matrix target = diag({2.0, 2.0 / 3.0});
    const SynthesisResult a = synthesize_c11(target, {}, {1});
    const SynthesisResult b = synthesize_c11(target, {}, {2});
    EXPECT_GT(operator_norm(a.T - b.T), 1e-6);
    EXPECT_LE(operator_norm(a.realized_A.A - b.realized_A.A), 1e-12);
    EXPECT_EQ(synthesize_c11(target, {}, {1}).T, a.T);
}

TEST(SynthesizeLStable, OnesFamily)
{
    Matrix target(2, 2);
    target << 1, 1, 1, 1;
    const SynthesisResult r = synthesize_l_stable(target);
    EXPECT_LE(operator_norm(r.realized_A.A - target), 1e-9);
    EXPECT_EQ(r.realized_A.rank_k, 1u);
    EXPECT_NEAR(r.realized_A.nonzero_eigs[0], 2.0, 1e-12);
    // T^*n T^n is constant in n for this family.
    Matrix p = r.T;
    const Matrix first = p.adjoint() * p;
    for (int n = 2; n < 20; ++n) {
        p = r.T * p;
        EXPECT_LE(operator_norm(p.adjoint() * p - first), 1e-12);
    }
    EXPECT_LE(operator_norm(first - target), 1e-12);
    EXPECT_EQ(r.projection_rank, 1u);
    EXPECT_LE(max_col_dev(r.certificate_S), 1e-12);
}

TEST(SynthesizeLStable, Diag330)
{
    const Matrix target = diag({3.0, 3.0, 0.0});
    const SynthesisResult r = synthesize_l_stable(target);
    EXPECT_LE(operator_norm(r.realized_A.A - target), 1e-7 * 3.0);
    EXPECT_LE(operator_norm(cesaro_iterate(r.T, 10000) - target), 1e-2);
    const PowerboundReport rep = classify(r.T);
    EXPECT_EQ(class_label(rep), (ClassLabel{ClassLabel::Kind::LStable, 1}));
    // Rank-consistent certificate: A = S^-* (I_k + 0_l) S^-1 with k = rank(A).
    const Matrix si = r.certificate_S.inverse();
    Matrix proj = Matrix::Zero(3, 3);
    proj(0, 0) = 1.0;
    proj(1, 1) = 1.0;
    EXPECT_LE(operator_norm(si.adjoint() * proj * si - target), 1e-8);
    EXPECT_EQ(r.projection_rank, 2u);
}

TEST(SynthesizeLStable, BoundaryRoutesThroughDegenerateBranch)
{
    // sum 1/t = k exactly: c = 1, R = 0.
    const Matrix target = diag({2.0, 2.0 / 3.0, 0.0});
    const SynthesisResult r = synthesize_l_stable(target);
    EXPECT_LE(operator_norm(r.realized_A.A - target), 1e-7 * 2.0);
}

TEST(SynthesizeLStable, Errors)
{
    try {
        (void)synthesize_l_stable(diag({0.5, 0.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Infeasible);
    }
    try {
        (void)synthesize_l_stable(identity(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankMismatch);
    }
    try {
        (void)synthesize_l_stable(Matrix::Zero(2, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankMismatch);
    }
}

TEST(SynthesizeLStable, BlockFormXIsUnitaryAndDiagonalizes)
{
    // Rebuild X for c = 1/2, k = 2, l = 1 and check both identities.
    const double c = 0.5;
    Matrix r = Matrix::Zero(1, 2);
    r(0, 0) = std::sqrt(1.0 / c - 1.0);
    const Matrix top = psd_sqrt((identity(1) + r * r.adjoint()).inverse());
    const Matrix bottom = psd_sqrt((identity(2) + r.adjoint() * r).inverse());
    Matrix x(3, 3);
    x.topLeftCorner(1, 1) = top;
    x.topRightCorner(1, 2) = r * bottom;
    x.bottomLeftCorner(2, 1) = -r.adjoint() * top;
    x.bottomRightCorner(2, 2) = bottom;
    EXPECT_LE(operator_norm(x.adjoint() * x - identity(3)), 1e-12);
    const Matrix ae = diag({c * 4.0, 4.0 / 3.0});
    Matrix col(3, 2);
    col.topRows(1) = r;
    col.bottomRows(2) = identity(2);
    const Matrix a_raw = col * ae * col.adjoint();
    EXPECT_LE(operator_norm(x.adjoint() * a_raw * x - diag({0.0, 4.0, 4.0 / 3.0})), 1e-12);
}

TEST(SynthesizeZero, ZeroTarget)
{
    const SynthesisResult r = synthesize(SpectrumTarget{3, {}});
    EXPECT_EQ(r.T, Matrix::Zero(3, 3));
    EXPECT_EQ(r.realized_A.A, Matrix::Zero(3, 3));
    EXPECT_EQ(r.realized_A.stable_dim_l, 3u);
}

TEST(SpectrumTarget, Feasibility)
{
    EXPECT_EQ((SpectrumTarget{2, {2.0, 2.0 / 3.0}}).feasibility(), Feasibility::C11);
    EXPECT_EQ((SpectrumTarget{2, {2.0, 2.0}}).feasibility(), Feasibility::Infeasible);
    EXPECT_EQ((SpectrumTarget{2, {2.0}}).feasibility(), Feasibility::LStable);
    EXPECT_EQ((SpectrumTarget{2, {0.5}}).feasibility(), Feasibility::Infeasible);
    EXPECT_EQ((SpectrumTarget{4, {}}).feasibility(), Feasibility::Zero);
    EXPECT_EQ((SpectrumTarget{1, {-1.0}}).feasibility(), Feasibility::Infeasible);
    try {
        (void)synthesize(SpectrumTarget{2, {2.0, 2.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Infeasible);
        EXPECT_NE(std::string(e.what()).find("must equal d"), std::string::npos);
    }
}

TEST(SynthesizeRoundTrip, RandomTargetsInRotatedBases)
{
    Rng rng(31);
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        const std::size_t d = 2 + trial % 7;
        const std::size_t k = trial % 2 == 0 ? d : 1 + trial % (d - 1);
        std::vector<double> inv(k);
        double s = 0.0;
        for (double& v : inv) {
            v = rng.uniform(0.2, 1.0);
            s += v;
        }
        const double want = trial % 2 == 0 ? static_cast<double>(d) : static_cast<double>(k) * rng.uniform(0.5, 1.0);
        Matrix a = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < k; ++i) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = s / (want * inv[i]);
        }
        const Matrix u = random_unitary(static_cast<Eigen::Index>(d), rng);
        const Matrix target = u * a * u.adjoint();
        const SynthesisResult r = k == d ? synthesize_c11(target) : synthesize_l_stable(target);
        const double scale = operator_norm(target);
        EXPECT_LE(operator_norm(r.realized_A.A - target), 1e-7 * scale) << "trial " << trial;
        EXPECT_LE(max_col_dev(r.certificate_S), 1e-9);
        EXPECT_EQ(r.realized_A.rank_k, k);
    }
}

TEST(NormLimitSynthesis, Examples)
{
    EXPECT_LE((synthesize_norm_limit(identity(3)) - identity(3)).norm(), 1e-14);
    const Matrix a = diag({3.0, 1.0, 0.0});
    const Matrix p = synthesize_norm_limit(a);
    EXPECT_LE(operator_norm(p * p - p), 1e-12);
    EXPECT_LE(operator_norm(p.adjoint() * p - a), 1e-12);
    // The block on (e1, e3) has |b|^2 = 2.
    EXPECT_NEAR(std::abs(p(2, 0)), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(std::abs(p(1, 1)), 1.0, 1e-12);
    try {
        (void)synthesize_norm_limit(diag({2.0, 1.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInSpectralSet);
    }
}

TEST(NormLimitSynthesis, ConstantSequence)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t d = 1 + seed % 8;
        const Matrix a = random_spectral_set_member(d, seed);
        ASSERT_TRUE(spectral_set_membership(a));
        const Matrix p = synthesize_norm_limit(a);
        EXPECT_LE(operator_norm(p * p - p), 1e-12 * std::max(1.0, operator_norm(a)));
        Matrix pn = p;
        for (int n = 1; n <= 10; ++n) {
            EXPECT_LE(operator_norm(pn.adjoint() * pn - a), 1e-9 * std::max(1.0, operator_norm(a)));
            pn = p * pn;
        }
    }
}

TEST(Generator, ShapesAndDeterminism)
{
    const GeneratedInstance a = random_powerbounded(5, 2, 99);
    const GeneratedInstance b = random_powerbounded(5, 2, 99);
    EXPECT_EQ(a.T, b.T);
    EXPECT_NE(random_powerbounded(5, 2, 100).T, a.T);
    const PowerboundReport c11 = classify(random_powerbounded(4, 0, 1).T);
    EXPECT_EQ(class_label(c11).kind, ClassLabel::Kind::C11);
    const GeneratedInstance z = random_powerbounded(4, 4, 1);
    EXPECT_LT(spectral_radius(z.T), 1.0);
    EXPECT_EQ(cesaro_limit(z.T).A, Matrix::Zero(4, 4));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t d = 1 + seed % 8;
        const std::size_t l = (seed * 3) % (d + 1);
        const GeneratedInstance g = random_powerbounded(d, l, seed);
        EXPECT_LE(condition(g.S), 50.0);
        const PowerboundReport rep = classify(g.T);
        ASSERT_TRUE(rep.power_bounded());
        EXPECT_EQ(rep.stable_dim_l, l);
        EXPECT_EQ(rep.d, d);
        for (std::size_t i = 0; i < g.lambdas.size(); ++i) {
            for (std::size_t j = i + 1; j < g.lambdas.size(); ++j) {
                EXPECT_GE(std::abs(g.lambdas[i] - g.lambdas[j]), 10 * 1e-8);
            }
        }
    }
}

TEST(Generator, IdempotentsAreIdempotent)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Matrix p = random_idempotent(1 + seed % 8, seed);
        EXPECT_LE(operator_norm(p * p - p), 1e-10 * std::max(1.0, operator_norm(p)));
        EXPECT_TRUE(spectral_set_membership(p.adjoint() * p));
    }
}
