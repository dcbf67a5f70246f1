#include <gtest/gtest.h>

#include "support.hpp"

using namespace rotator;
using testing_support::minkowski;

TEST(Dot, SignatureExamples)
{
    EXPECT_DOUBLE_EQ(dot(Vec4{1, 0, 0, 0}, Vec4{1, 0, 0, 0}), 1.0);
    EXPECT_DOUBLE_EQ(dot(Vec4{1, 1, 0, 0}, Vec4{1, 1, 0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(dot(Vec4{1, 0, 0, 0}, Vec4{1, 1, 0, 0}), 1.0);
}

TEST(Dot, MatchesHandContractionAndIsBilinear)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i)
    {
        Vec4 a = testing_support::random_vec(rng), b = testing_support::random_vec(rng),
             c = testing_support::random_vec(rng);
        double alpha = 1.7, beta = -0.3;
        EXPECT_EQ(dot(a, b), minkowski(a, b));
        EXPECT_EQ(dot(a, b), dot(b, a));
        EXPECT_NEAR(dot(alpha * a + beta * b, c), alpha * dot(a, c) + beta * dot(b, c), 1e-14);
    }
}

TEST(ProjectOrthogonal, Examples)
{
    EXPECT_EQ(project_orthogonal(Vec4{1, 0, 0, 0}, Vec4{1, 0, 0, 0}), (Vec4{0, 0, 0, 0}));
    EXPECT_EQ(project_orthogonal(Vec4{0, 1, 0, 0}, Vec4{1, 0, 0, 0}), (Vec4{0, 1, 0, 0}));
    EXPECT_EQ(project_orthogonal(Vec4{1, 1, 0, 0}, Vec4{2, 0, 0, 0}), (Vec4{0, 1, 0, 0}));
}

TEST(ProjectOrthogonal, RejectsNullProjector)
{
    EXPECT_THROW(project_orthogonal(Vec4{1, 0, 0, 0}, Vec4{1, 1, 0, 0}), DegenerateError);
}

TEST(ProjectOrthogonal, ResultIsOrthogonal)
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i)
    {
        Vec4 y = testing_support::random_vec(rng), p = testing_support::random_vec(rng);
        if (std::abs(dot(p, p)) < 1e-3)
            continue;
        double scale = component_norm(y) * component_norm(p);
        EXPECT_LE(std::abs(dot(project_orthogonal(y, p), p)), 1e-12 * scale);
    }
}

TEST(CurvatureGram, Examples)
{
    Vec4 a{0.3, 1.0, -2.0, 0.5};
    EXPECT_NEAR(curvature_gram(a, a), 0.0, 1e-14);
    EXPECT_DOUBLE_EQ(curvature_gram(Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}), 1.0);
    EXPECT_DOUBLE_EQ(curvature_gram(Vec4{0, 2, 0, 0}, Vec4{0, 0, 3, 0}), 36.0);
}

TEST(PauliLubanski, Examples)
{
    Vec4 p{1, 0, 0, 0}, k{1, 1, 0, 0}, chi{0, 0, 0.5, 0};
    EXPECT_DOUBLE_EQ(pauli_lubanski_sq(p, k, chi), -0.25);
    EXPECT_DOUBLE_EQ(pauli_lubanski_sq(p, k, Vec4{}), 0.0);
    EXPECT_DOUBLE_EQ(pauli_lubanski_sq(p, Vec4{}, chi), 0.0);
}

TEST(PauliLubanski, ReducesOnConstraintSurface)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i)
    {
        State s = random_on_surface_state(RotatorSpec::fundamental_plus(), rng);
        double pk = dot(s.p, s.k);
        double expected = pk * pk * dot(s.chi, s.chi);
        EXPECT_NEAR(pauli_lubanski_sq(s.p, s.k, s.chi), expected, 1e-12 * std::abs(expected) + 1e-14);
    }
}

TEST(SpinTrivector, OrthogonalToItsFactors)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i)
    {
        Vec4 p = testing_support::random_vec(rng), k = testing_support::random_vec(rng),
             c = testing_support::random_vec(rng);
        Vec4 w = spin_trivector(p, k, c);
        // det(v, p, k, chi) with v in {p, k, chi} vanishes; raise the index via the metric.
        Vec4 w_up{w.t, -w.x, -w.y, -w.z};
        EXPECT_NEAR(dot(w_up, p), 0.0, 1e-13);
        EXPECT_NEAR(dot(w_up, k), 0.0, 1e-13);
        EXPECT_NEAR(dot(w_up, c), 0.0, 1e-13);
    }
}

TEST(Boost, PreservesScalarProducts)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i)
    {
        Vec4 a = testing_support::random_vec(rng), b = testing_support::random_vec(rng);
        Vec3 beta{0.3, -0.2, 0.4};
        EXPECT_NEAR(dot(boost(a, beta), boost(b, beta)), dot(a, b), 1e-13);
        EXPECT_NEAR(dot(boost_x(a, 0.5), boost_x(b, 0.5)), dot(a, b), 1e-13);
    }
}

TEST(Dual, SecondDerivativesThroughNesting)
{
    using D2 = Dual<Dual<double>>;
    D2 x(Dual<double>(0.7, 1.0), Dual<double>(1.0, 0.0));
    D2 y = sqrt(x) * x;  // x^{3/2}
    EXPECT_NEAR(y.re.re, std::pow(0.7, 1.5), 1e-15);
    EXPECT_NEAR(y.du.re, 1.5 * std::sqrt(0.7), 1e-15);
    EXPECT_NEAR(y.du.du, 0.75 / std::sqrt(0.7), 1e-14);
}
