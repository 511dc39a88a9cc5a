#include "fracwell/kernel.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fracwell;

namespace {

constexpr double pi = std::numbers::pi;

double oracle_value(const BasisIndex& b, double mu, double x)
{
    return static_cast<double>(
        oracle::finite_part_operator(b.parity() == Parity::Even, b.wavenumber(), mu, x));
}

} // namespace

TEST(BasisIndex, WavenumbersAndValidation)
{
    EXPECT_DOUBLE_EQ(BasisIndex::even(0).wavenumber(), pi / 2);
    EXPECT_DOUBLE_EQ(BasisIndex::even(3).wavenumber(), 7 * pi / 2);
    EXPECT_DOUBLE_EQ(BasisIndex::odd(2).wavenumber(), 2 * pi);
    EXPECT_THROW(BasisIndex::even(-1), DomainError);
    EXPECT_THROW(BasisIndex::odd(0), DomainError);
}

TEST(EvalPoint, RejectsOutsideInterval)
{
    EXPECT_NO_THROW(EvalPoint(1.0));
    EXPECT_THROW(EvalPoint(1.0 + 1e-15), DomainError);
    EXPECT_THROW(EvalPoint(std::nan("")), DomainError);
    const auto p = EvalPoint::from_right_wall(1e-300);
    EXPECT_EQ(p.one_minus_x(), 1e-300);
    EXPECT_TRUE(p.interior());
    EXPECT_FALSE(EvalPoint(-1.0).interior());
}

TEST(BasisEval, ValuesAndWallZeros)
{
    EXPECT_EQ(basis_eval(BasisIndex::even(0), 0.0), 1.0);
    EXPECT_DOUBLE_EQ(basis_eval(BasisIndex::odd(1), 0.5), 1.0);
    for (int k = 0; k < 6; ++k) {
        EXPECT_EQ(basis_eval(BasisIndex::even(k), 1.0), 0.0);
        EXPECT_EQ(basis_eval(BasisIndex::even(k), -1.0), 0.0);
        EXPECT_EQ(basis_eval(BasisIndex::odd(k + 1), 1.0), 0.0);
        EXPECT_EQ(basis_eval(BasisIndex::odd(k + 1), -1.0), 0.0);
    }
    EXPECT_NEAR(basis_derivative(BasisIndex::odd(2), 0.0), 2 * pi, 1e-14);
}

TEST(BasisEval, Orthonormal)
{
    const BasisIndex funcs[] = {BasisIndex::even(0), BasisIndex::even(1), BasisIndex::even(4),
                                BasisIndex::odd(1), BasisIndex::odd(3)};
    for (const auto& a : funcs) {
        for (const auto& b : funcs) {
            const auto inner = oracle::tanh_sinh_split(
                [&](oracle::Real x) { return basis_eval(a, static_cast<double>(x)) * basis_eval(b, static_cast<double>(x)); },
                -1, 1, 0.25L);
            const bool same = a.parity() == b.parity() && a.k() == b.k();
            EXPECT_NEAR(static_cast<double>(inner), same ? 1.0 : 0.0, 1e-13);
        }
    }
}

TEST(Kernel, LimitCases)
{
    EXPECT_NEAR(f_even(BasisIndex::even(0), LevyIndex(0.0), EvalPoint(0.3)), 0.8910065241883679, 1e-15);
    EXPECT_NEAR(f_even(BasisIndex::even(0), LevyIndex(2.0), EvalPoint(0.0)), pi * pi / 4, 1e-14);
    EXPECT_NEAR(g_odd(BasisIndex::odd(1), LevyIndex(0.0), EvalPoint(0.25)), std::sqrt(0.5), 1e-15);
    for (double mu : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        EXPECT_NEAR(g_odd(BasisIndex::odd(1), LevyIndex(mu), EvalPoint(0.0)), 0.0, 1e-15) << mu;
    }
}

TEST(Kernel, RejectsWallsAndWrongParity)
{
    EXPECT_THROW(f_even(BasisIndex::even(0), LevyIndex(1.0), EvalPoint(1.0)), DomainError);
    EXPECT_THROW(g_odd(BasisIndex::odd(1), LevyIndex(0.5), EvalPoint(-1.0)), DomainError);
    EXPECT_THROW(f_even(BasisIndex::odd(1), LevyIndex(1.0), EvalPoint(0.0)), DomainError);
    EXPECT_THROW(g_odd(BasisIndex::even(0), LevyIndex(1.0), EvalPoint(0.0)), DomainError);
}

TEST(Kernel, CauchyExamplesMatchFinitePartQuadrature)
{
    EXPECT_NEAR(f_even(BasisIndex::even(0), LevyIndex(1.0), EvalPoint(0.5)),
                oracle_value(BasisIndex::even(0), 1.0, 0.5), 1e-8);
    EXPECT_NEAR(g_odd(BasisIndex::odd(1), LevyIndex(1.0), EvalPoint(0.3)),
                oracle_value(BasisIndex::odd(1), 1.0, 0.3), 1e-8);
}

TEST(Kernel, MatchesFinitePartQuadratureOnGrid)
{
    for (double mu : {0.5, 1.0, 1.5}) {
        for (int k = 0; k <= 2; ++k) {
            for (double x : {0.0, 0.4, -0.4}) {
                const auto e = BasisIndex::even(k);
                EXPECT_NEAR(f_even(e, LevyIndex(mu), EvalPoint(x)), oracle_value(e, mu, x), 1e-7)
                    << "even k=" << k << " mu=" << mu << " x=" << x;
                if (k >= 1) {
                    const auto o = BasisIndex::odd(k);
                    EXPECT_NEAR(g_odd(o, LevyIndex(mu), EvalPoint(x)), oracle_value(o, mu, x), 1e-7)
                        << "odd k=" << k << " mu=" << mu << " x=" << x;
                }
            }
        }
    }
}

TEST(Kernel, MatchesFinitePartQuadratureOffGrid)
{
    for (double mu : {0.2, 0.999, 1.001, 1.8}) {
        for (double x : {0.13, -0.77, 0.95}) {
            for (const auto& b : {BasisIndex::even(3), BasisIndex::odd(3)}) {
                const double expected = oracle_value(b, mu, x);
                EXPECT_NEAR(apply_to_basis(b, LevyIndex(mu), EvalPoint(x)), expected, 1e-9 * (1.0 + std::abs(expected)))
                    << to_string(b.parity()) << " mu=" << mu << " x=" << x;
            }
        }
    }
}

TEST(Kernel, Parity)
{
    for (double mu : {0.3, 1.0, 1.7}) {
        for (int k = 0; k <= 4; ++k) {
            for (double x : {0.1, 0.37, 0.9}) {
                const auto e = BasisIndex::even(k);
                const auto o = BasisIndex::odd(k + 1);
                const LevyIndex m(mu);
                EXPECT_NEAR(f_even(e, m, EvalPoint(-x)), f_even(e, m, EvalPoint(x)), 1e-10);
                EXPECT_NEAR(g_odd(o, m, EvalPoint(-x)), -g_odd(o, m, EvalPoint(x)), 1e-10);
            }
        }
    }
}

TEST(Kernel, ContinuousThroughCauchyCase)
{
    for (int k = 0; k <= 3; ++k) {
        for (double x : {-0.9, -0.5, 0.0, 0.3, 0.9}) {
            for (const auto& b : {BasisIndex::even(k), BasisIndex::odd(k + 1)}) {
                const double at_one = apply_to_basis(b, LevyIndex(1.0), EvalPoint(x));
                EXPECT_NEAR(apply_to_basis(b, LevyIndex(1.0 - 1e-6), EvalPoint(x)), at_one, 1e-4);
                EXPECT_NEAR(apply_to_basis(b, LevyIndex(1.0 + 1e-6), EvalPoint(x)), at_one, 1e-4);
            }
        }
    }
}

TEST(Kernel, ContinuousTowardLaplacian)
{
    for (int k = 0; k <= 3; ++k) {
        const auto b = BasisIndex::even(k);
        const double w2 = b.wavenumber() * b.wavenumber();
        for (double x : {-0.6, 0.0, 0.45}) {
            EXPECT_NEAR(f_even(b, LevyIndex(2.0 - 1e-6), EvalPoint(x)), w2 * std::cos(b.wavenumber() * x), 1e-3 * w2);
        }
    }
}

TEST(Kernel, BlowsUpTowardWall)
{
    const auto b = BasisIndex::even(0);
    const LevyIndex cauchy(1.0);
    EXPECT_GT(f_even(b, cauchy, EvalPoint(0.999)), 10.0 * f_even(b, cauchy, EvalPoint(0.9)));
}
