#include <gtest/gtest.h>

#include <numbers>

#include "cesaro/classifier.hpp"
#include "cesaro/random.hpp"
#include "cesaro/synthesis.hpp"
#include "oracles.hpp"

using namespace cesaro;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d)
{
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

const Complex kSixty = std::polar(1.0, std::numbers::pi / 3.0);

Matrix sixty_degree_matrix()
{
    Matrix s = m2(1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0);
    return s * m2(1, 0, 0, -1) * oracle::inverse2(s);
}

void expect_split_reconstructs(const Matrix& t, const PowerboundReport& rep)
{
    ASSERT_TRUE(rep.power_bounded());
    const auto m = static_cast<Eigen::Index>(rep.m);
    const auto d = static_cast<Eigen::Index>(rep.d);
    Matrix j = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < m; ++i) {
        j(i, i) = rep.unimodular_values[static_cast<std::size_t>(i)];
        EXPECT_NEAR(std::abs(j(i, i)), 1.0, 1e-8);
        EXPECT_NEAR(rep.similarity_S.col(i).norm(), 1.0, 1e-12);
    }
    j.bottomRightCorner(d - m, d - m) = rep.interior_block_B;
    const Matrix s = rep.similarity_S;
    EXPECT_LE(operator_norm(s * j * s.inverse() - t), 1e-9 * static_cast<double>(d) * condition(s));
    if (d > m) {
        EXPECT_LE(spectral_radius(rep.interior_block_B), 1.0 - 1e-8);
    }
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = a + 1; b < m; ++b) {
            if (rep.cluster_of[static_cast<std::size_t>(a)] == rep.cluster_of[static_cast<std::size_t>(b)]) {
                EXPECT_LE(std::abs(s.col(a).dot(s.col(b))), 1e-12);
            }
        }
    }
}

} // namespace

TEST(Classify, IdentityIsC11)
{
    const PowerboundReport rep = classify(identity(2));
    EXPECT_TRUE(rep.power_bounded());
    EXPECT_EQ(rep.m, 2u);
    EXPECT_EQ(rep.stable_dim_l, 0u);
    EXPECT_EQ(rep.cluster_count, 1u);
    EXPECT_EQ(class_label(rep).name(), "C11");
    expect_split_reconstructs(identity(2), rep);
}

TEST(Classify, JordanBlockIsDefective)
{
    const PowerboundReport rep = classify(m2(1, 1, 0, 1));
    EXPECT_FALSE(rep.power_bounded());
    EXPECT_EQ(rep.reason, Reason::DefectiveUnimodularEigenvalue);
    EXPECT_THROW((void)class_label(rep), Error);
}

TEST(Classify, RotatedJordanBlockIsDefective)
{
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        const Matrix u = random_unitary(3, rng);
        Matrix j = Matrix::Zero(3, 3);
        const Complex lam = rng.unit_phase();
        j(0, 0) = lam;
        j(1, 1) = lam;
        j(0, 1) = 0.3 + rng.uniform();
        j(2, 2) = 0.4;
        const PowerboundReport rep = classify(u * j * u.adjoint());
        EXPECT_FALSE(rep.power_bounded());
        EXPECT_EQ(rep.reason, Reason::DefectiveUnimodularEigenvalue);
    }
}

TEST(Classify, DiagonalSplit)
{
    const Matrix t = m2(0.5, 0, 0, kSixty);
    const PowerboundReport rep = classify(t);
    ASSERT_TRUE(rep.power_bounded());
    EXPECT_EQ(rep.m, 1u);
    EXPECT_EQ(rep.stable_dim_l, 1u);
    ASSERT_EQ(rep.interior_block_B.rows(), 1);
    EXPECT_NEAR(std::abs(rep.interior_block_B(0, 0) - 0.5), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(rep.unimodular_values[0] - kSixty), 0.0, 1e-14);
    EXPECT_EQ(class_label(rep), (ClassLabel{ClassLabel::Kind::LStable, 1}));
    EXPECT_EQ(class_label(rep).name(), "LStable(1)");
    expect_split_reconstructs(t, rep);
}

TEST(Classify, SpectralRadiusAboveOne)
{
    const PowerboundReport rep = classify(m2(1.5, 0, 0, 0.5));
    EXPECT_FALSE(rep.power_bounded());
    EXPECT_EQ(rep.reason, Reason::SpectralRadiusExceedsOne);
    const PowerboundReport barely = classify(m2(1.0 + 2e-6, 0, 0, 0.2));
    EXPECT_EQ(barely.reason, Reason::SpectralRadiusExceedsOne);
    EXPECT_GT(barely.power_bound_estimate, 1.0 + 2e-6);
}

TEST(Classify, GrowthAlongProbeRangeForUnstable)
{
    Rng rng(12);
    for (int t = 0; t < 10; ++t) {
        Matrix a(3, 3);
        for (Eigen::Index i = 0; i < 3; ++i) {
            for (Eigen::Index j = 0; j < 3; ++j) {
                a(i, j) = rng.complex_normal();
            }
        }
        a *= 1.2 / spectral_radius(a);
        const PowerboundReport rep = classify(a);
        EXPECT_EQ(rep.reason, Reason::SpectralRadiusExceedsOne);
        Matrix p = a;
        double prev = operator_norm(p);
        for (int k = 0; k < 6; ++k) {
            p = (p * p).eval();
        }
        EXPECT_GT(operator_norm(p), prev);
    }
}

TEST(Classify, DeadZoneWarning)
{
    const PowerboundReport rep = classify(m2(1.0 + 5e-9, 0, 0, 0.3));
    EXPECT_TRUE(rep.power_bounded());
    EXPECT_TRUE(rep.dead_zone_warning);
    EXPECT_FALSE(classify(identity(2)).dead_zone_warning);
}

TEST(ClassLabel, UnitaryC11ContractionC0dot)
{
    Rng rng(13);
    const Matrix u = random_unitary(4, rng);
    EXPECT_EQ(class_label(classify(u)).kind, ClassLabel::Kind::C11);
    const Matrix c = 0.9 * random_unitary(3, rng);
    EXPECT_EQ(class_label(classify(c)).kind, ClassLabel::Kind::C0dot);
    EXPECT_EQ(class_label(classify(m2(0.5, 0, 0, 0.25))).name(), "C0dot");
}

TEST(NormLimit, Examples)
{
    EXPECT_TRUE(norm_limit_exists(m2(1, 0, 0, -1)));
    EXPECT_FALSE(norm_limit_exists(sixty_degree_matrix()));
    Rng rng(14);
    for (int t = 0; t < 5; ++t) {
        EXPECT_TRUE(norm_limit_exists(random_unitary(5, rng)));
    }
    EXPECT_THROW((void)norm_limit_exists(m2(1, 1, 0, 1)), Error);
}

TEST(NormLimit, SixtyDegreeOscillationPersists)
{
    // T^*n T^n alternates between I (even n) and T^*T (odd n) for an
    // involution; the gap between consecutive terms never decays.
    const Matrix t = sixty_degree_matrix();
    Matrix p = identity(2);
    double min_gap = 1e300;
    for (int n = 1; n <= 400; ++n) {
        const Matrix prev = p.adjoint() * p;
        p = t * p;
        const Matrix cur = p.adjoint() * p;
        if (n > 200) {
            min_gap = std::min(min_gap, operator_norm(cur - prev));
        }
    }
    EXPECT_GT(min_gap, 0.5);
}

TEST(NormLimit, AgreesWithIteration)
{
    // Orthogonal eigenspaces: T^*n T^n settles; skewed ones: it keeps moving.
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const GeneratedInstance g = random_powerbounded(4, 2, seed);
        const bool exists = norm_limit_exists(g.T);
        EXPECT_FALSE(exists) << "generic S has skewed unimodular eigenvectors";
        const GeneratedInstance c = random_contraction(4, 2, seed);
        EXPECT_TRUE(norm_limit_exists(c.T));
        Matrix p = identity(4);
        for (int n = 0; n < 400; ++n) {
            p = c.T * p;
        }
        const Matrix a = p.adjoint() * p;
        for (int n = 0; n < 400; ++n) {
            p = c.T * p;
        }
        EXPECT_LE(operator_norm(p.adjoint() * p - a), 1e-6);
    }
}

TEST(Classify, UnitaryCovariance)
{
    Rng rng(15);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t d = 2 + seed % 6;
        const std::size_t l = seed % (d + 1);
        const GeneratedInstance g = random_powerbounded(d, l, seed);
        const Matrix u = random_unitary(static_cast<Eigen::Index>(d), rng);
        const PowerboundReport a = classify(g.T);
        const PowerboundReport b = classify(u * g.T * u.adjoint());
        ASSERT_TRUE(a.power_bounded());
        ASSERT_TRUE(b.power_bounded());
        EXPECT_EQ(a.m, b.m);
        EXPECT_EQ(a.m, d - l) << "generator m recovered exactly";
        for (const Complex& z : a.unimodular_values) {
            double best = 1e300;
            for (const Complex& w : b.unimodular_values) {
                best = std::min(best, std::abs(z - w));
            }
            EXPECT_LE(best, 1e-8);
        }
        expect_split_reconstructs(g.T, a);
    }
}

TEST(Classify, RepeatedUnimodularEigenvaluesOrthonormalized)
{
    Rng rng(16);
    Matrix s(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            s(i, j) = rng.complex_normal();
        }
    }
    Matrix j = Matrix::Zero(4, 4);
    j(0, 0) = kSixty;
    j(1, 1) = kSixty;
    j(2, 2) = -1.0;
    j(3, 3) = 0.3;
    const Matrix t = s * j * s.inverse();
    const PowerboundReport rep = classify(t);
    ASSERT_TRUE(rep.power_bounded());
    EXPECT_EQ(rep.m, 3u);
    EXPECT_EQ(rep.cluster_count, 2u);
    expect_split_reconstructs(t, rep);
}

TEST(SpectralSet, Examples)
{
    EXPECT_TRUE(spectral_set_membership(identity(3)));
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    EXPECT_TRUE(spectral_set_membership(a));
    EXPECT_FALSE(spectral_set_membership(m2(2, 0, 0, 1)));
    EXPECT_FALSE(spectral_set_membership(m2(0.5, 0, 0, 0)));
    try {
        (void)spectral_set_membership(m2(-1, 0, 0, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPSD);
    }
    EXPECT_THROW((void)spectral_set_membership(m2(1, 1, 0, 1)), Error);
}

TEST(PowerBoundEstimate, Values)
{
    EXPECT_NEAR(power_bound_estimate(identity(3)), 1.0, 1e-14);
    EXPECT_NEAR(power_bound_estimate(m2(1, 1, 0, 1)), oracle::norm2(m2(1, 16384, 0, 1)), 1e-6);
    EXPECT_TRUE(std::isinf(power_bound_estimate(m2(2, 0, 0, 0))));
}
