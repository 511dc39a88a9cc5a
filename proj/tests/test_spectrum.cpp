#include "fracwell/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

using namespace fracwell;

namespace {

constexpr double pi = std::numbers::pi;

/// Solved spectra shared across tests, keyed by (mu, n_basis).
const Spectrum& cached(double mu, int n)
{
    static std::map<std::pair<double, int>, Spectrum> cache;
    const auto key = std::make_pair(mu, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, solve(LevyIndex(mu), n)).first;
    return it->second;
}

std::vector<double> sector_energies(const Spectrum& s, Parity parity, std::size_t count)
{
    std::vector<double> out;
    for (const auto& f : s.merged) {
        if (f.parity == parity && out.size() < count) out.push_back(f.energy);
    }
    return out;
}

} // namespace

TEST(Solve, CauchySixBasisFunctions)
{
    const double expected[] = {1.1704897, 2.780209, 4.35648331, 5.9397942, 7.52131594, 9.099426};
    const auto& s = cached(1.0, 6);
    ASSERT_EQ(s.merged.size(), 12u);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(s.merged[i].energy, expected[i], 1e-5) << i;
}

void expect_even_sector(double mu, const std::vector<double>& values)
{
    const auto even = sector_energies(cached(mu, 6), Parity::Even, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) EXPECT_NEAR(even[i], values[i], 1e-4) << mu << ' ' << i;
}

TEST(Solve, EvenSectorCauchy)
{
    expect_even_sector(1.0, {1.1704897, 4.35648331, 7.52131594, 10.68291, 13.845025, 17.01393});
}

TEST(Solve, EvenSectorHalfIndex)
{
    expect_even_sector(0.5, {0.97976, 2.04538, 2.71443, 3.24759, 3.70492, 4.11305});
}

TEST(Solve, EvenSectorIndexOnePointSeven)
{
    expect_even_sector(1.7, {1.88345, 13.394, 32.4753, 57.9598, 89.2117, 125.814});
}

TEST(Solve, LaplacianLimitIsOrdinaryWell)
{
    const auto& s = cached(2.0, 10);
    for (int n = 1; n <= 10; ++n) EXPECT_NEAR(s.state(n).energy, ordinary_spectrum(n), 1e-9) << n;
}

TEST(Solve, ZeroLimitIsDegenerate)
{
    const auto& s = cached(0.0, 5);
    EXPECT_TRUE(s.degenerate);
    ASSERT_EQ(s.merged.size(), 10u);
    for (const auto& f : s.merged) {
        EXPECT_NEAR(f.energy, 1.0, 1e-8);
        EXPECT_EQ(f.parity, f.label % 2 == 1 ? Parity::Even : Parity::Odd);
    }
}

TEST(Solve, MergedStructure)
{
    for (double mu : {0.5, 1.0, 1.7}) {
        const auto& s = cached(mu, 12);
        EXPECT_FALSE(s.degenerate);
        ASSERT_EQ(s.merged.size(), 24u);
        for (std::size_t j = 0; j < s.merged.size(); ++j) {
            const auto& f = s.merged[j];
            EXPECT_EQ(f.label, static_cast<int>(j + 1));
            EXPECT_GT(f.energy, 0.0);
            if (j > 0) {
                EXPECT_GT(f.energy, s.merged[j - 1].energy);
            }
            double norm = 0.0;
            for (double c : f.coefficients) norm += c * c;
            EXPECT_NEAR(norm, 1.0, 1e-12);
        }
    }
}

TEST(Solve, ParityAlternatesAtCauchy)
{
    const auto& s = cached(1.0, 30);
    for (int label = 1; label <= 6; ++label) {
        EXPECT_EQ(s.state(label).parity, label % 2 == 1 ? Parity::Even : Parity::Odd) << label;
    }
}

TEST(Solve, EnergiesDecreaseWithBasisSize)
{
    for (double mu : {0.5, 1.3}) {
        for (int n = 4; n < 9; ++n) {
            const auto& small = cached(mu, n);
            const auto& large = cached(mu, n + 1);
            for (int label = 1; label <= 2 * n; ++label) {
                EXPECT_LE(large.state(label).energy, small.state(label).energy + 1e-12) << mu << ' ' << n << ' ' << label;
            }
        }
    }
}

TEST(Solve, GroundStateAndGapGrowWithIndex)
{
    const auto& a = cached(0.5, 6);
    const auto& b = cached(1.0, 6);
    const auto& c = cached(1.7, 6);
    EXPECT_LT(a.state(1).energy, b.state(1).energy);
    EXPECT_LT(b.state(1).energy, c.state(1).energy);
    auto gap = [](const Spectrum& s) { return s.state(2).energy - s.state(1).energy; };
    EXPECT_LT(gap(a), gap(b));
    EXPECT_LT(gap(b), gap(c));
}

TEST(Merge, CoincidingSectorEnergiesAreAnError)
{
    EigenDecomposition even{1, {2.0}, {1.0}};
    EigenDecomposition odd{1, {2.0 + 1e-13}, {1.0}};
    EXPECT_THROW(merge_sectors(LevyIndex(1.0), 1, {}, even, odd), NumericalError);
    EXPECT_NO_THROW(merge_sectors(LevyIndex(0.0), 1, {}, even, odd));
}

TEST(Eigenfunction, TwoBasisGroundStateAtCenter)
{
    const auto& s = cached(1.0, 2);
    // states 1 and 3 are even; only the even sector enters psi(0)
    EXPECT_NEAR(eval_eigenfunction(s, 1, 0.0), 0.996257 - 0.086437, 1e-5);
}

TEST(Eigenfunction, WallsAndCenter)
{
    const auto& s = cached(1.0, 12);
    for (int label = 1; label <= 8; ++label) {
        EXPECT_EQ(eval_eigenfunction(s, label, 1.0), 0.0);
        EXPECT_EQ(eval_eigenfunction(s, label, -1.0), 0.0);
        if (s.state(label).parity == Parity::Odd) {
            EXPECT_EQ(eval_eigenfunction(s, label, 0.0), 0.0);
        }
    }
    EXPECT_THROW(eval_eigenfunction(s, 0, 0.0), DomainError);
    EXPECT_THROW(eval_eigenfunction(s, 25, 0.0), DomainError);
    EXPECT_THROW(eval_eigenfunction(s, 1, 1.5), DomainError);
}

TEST(Eigenfunction, PlotSignConvention)
{
    for (double mu : {0.5, 1.0, 1.7}) {
        const auto& s = cached(mu, 12);
        for (const auto& f : s.merged) {
            if (f.parity == Parity::Even) {
                EXPECT_GT(eval_eigenfunction(s, f.label, 0.0), 0.0) << mu << ' ' << f.label;
            } else {
                EXPECT_GT(eval_eigenfunction(s, f.label, 1e-6), 0.0) << mu << ' ' << f.label;
            }
        }
    }
}

TEST(Eigenfunction, NodeCountFollowsLabel)
{
    for (double mu : {0.5, 1.0, 1.7}) {
        const auto& s = cached(mu, 30);
        for (int label = 1; label <= 8; ++label) EXPECT_EQ(count_nodes(s, label), label - 1) << mu << ' ' << label;
    }
    EXPECT_THROW(count_nodes(cached(1.0, 30), 1, 100), DomainError);
}

TEST(ReferenceFormulas, AsymptoticEnergy)
{
    EXPECT_NEAR(asymptotic_energy(1, LevyIndex(1.0)), 3 * pi / 8, 1e-15);
    EXPECT_NEAR(asymptotic_energy(1, LevyIndex(1.0)), 1.178097, 1e-6);
    EXPECT_NEAR(asymptotic_energy(1, LevyIndex(2.0)), pi * pi / 4, 1e-14);
    EXPECT_NEAR(asymptotic_energy(2, LevyIndex(1.0)), 2.748894, 1e-6);
    EXPECT_NEAR(asymptotic_energy(3, LevyIndex(1.0)), 4.319690, 1e-6);
    EXPECT_NEAR(asymptotic_energy(11, LevyIndex(1.0)), 16.886061, 1e-6);
    EXPECT_THROW(asymptotic_energy(0, LevyIndex(1.0)), DomainError);
}

TEST(ReferenceFormulas, OrdinaryWell)
{
    EXPECT_NEAR(ordinary_spectrum(1), 2.4674011, 1e-7);
    EXPECT_NEAR(ordinary_spectrum(2), 9.8696044, 1e-7);
    EXPECT_NEAR(ordinary_spectrum(3), 22.2066099, 1e-7);
    EXPECT_THROW(ordinary_spectrum(0), DomainError);
}

TEST(ReferenceFormulas, GroundStateApproximation)
{
    EXPECT_EQ(zg_reference(1.0), 0.0);
    EXPECT_EQ(zg_reference(-1.0), 0.0);
    EXPECT_EQ(zg_reference(0.0), 0.921749);
    EXPECT_NEAR(zg_reference(0.3), zg_reference(-0.3), 1e-15);
    EXPECT_THROW(zg_reference(1.1), DomainError);
}

TEST(BoundaryExponent, LaplacianVanishesLinearly)
{
    const auto fit = boundary_exponent(cached(2.0, 10), 1);
    EXPECT_NEAR(fit.slope, 1.0, 0.02);
    EXPECT_EQ(fit.samples, 20);
}

TEST(BoundaryExponent, CauchySquareRoot)
{
    const auto fit = boundary_exponent(cached(1.0, 100), 1);
    EXPECT_NEAR(fit.slope, 0.5, 0.05);
    EXPECT_LT(fit.residual, 0.05);
}

TEST(BoundaryExponent, InvalidWindow)
{
    const auto& s = cached(1.0, 12);
    EXPECT_THROW(boundary_exponent(s, 1, 0.1, 0.01), DomainError);
    EXPECT_THROW(boundary_exponent(s, 1, 0.0, 0.1), DomainError);
    EXPECT_THROW(boundary_exponent(s, 1, 0.01, 0.1, 5), DomainError);
}

TEST(ApplyOperator, LaplacianBasisIsExact)
{
    const auto& s = cached(2.0, 10);
    for (int label = 1; label <= 6; ++label) {
        for (double x : {-0.99, -0.3, 0.0, 0.5, 0.999}) {
            EXPECT_NEAR(apply_operator(s, label, x), s.state(label).energy * eval_eigenfunction(s, label, x), 1e-9);
        }
    }
}

TEST(ApplyOperator, ResidualShrinksInTheBulk)
{
    EXPECT_LT(residual(cached(1.0, 12), 1, 0.0), residual(cached(1.0, 6), 1, 0.0));
}

TEST(ApplyOperator, ResidualGrowsTowardWall)
{
    const auto& s = cached(1.0, 30);
    EXPECT_GT(residual(s, 1, 0.999), 10.0 * residual(s, 1, 0.5));
}

TEST(ApplyOperator, RejectsNearWall)
{
    const auto& s = cached(1.0, 6);
    EXPECT_NO_THROW(apply_operator(s, 1, 1.0 - 2e-6));
    EXPECT_THROW(apply_operator(s, 1, 1.0 - 1e-7), DomainError);
    EXPECT_THROW(apply_operator(s, 1, -1.0), DomainError);
}
