#pragma once

// Special functions behind the kernel evaluations: the operator constant A_mu,
// Si/Ci, and the regularized power-trigonometric integrals
//
//     S_mu(z)    = int_0^z u^-mu sin u du
//     C_mu(a, b) = int_a^b u^-mu cos u du
//
// Small arguments (<= kSeriesCutoff) use term-by-term integrated Taylor series,
// which removes the u^-mu endpoint analytically. Larger arguments use the tail
//
//     T_mu(z) = int_z^inf u^-mu e^{iu} du = e^{iz} z^{1-mu} h(-iz),
//
// where h is the Legendre continued fraction of the upper incomplete gamma
// function Gamma(1-mu, w) = e^-w w^{1-mu} h(w), evaluated by modified Lentz.

#include "fracwell/errors.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace fracwell {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Stability index mu of the jump process, 0 <= mu <= 2.
/// mu = 0 and mu = 2 are admitted as exact limit cases.
class LevyIndex {
public:
    explicit LevyIndex(double mu) : mu_(mu)
    {
        if (!(mu >= 0.0 && mu <= 2.0)) {
            throw DomainError("Levy index must lie in [0, 2], got " + std::to_string(mu));
        }
    }

    double value() const noexcept { return mu_; }
    bool is_zero_limit() const noexcept { return mu_ == 0.0; }
    bool is_cauchy() const noexcept { return mu_ == 1.0; }
    bool is_laplacian() const noexcept { return mu_ == 2.0; }

    friend bool operator==(const LevyIndex&, const LevyIndex&) = default;

private:
    double mu_;
};

namespace detail {

inline constexpr double kSeriesCutoff = 2.0;
inline constexpr int kMaxSeriesTerms = 200;
inline constexpr int kMaxFractionTerms = 10000;

/// sin(pi mu / 2) without losing the zero at mu = 2.
inline double sin_half_pi(double mu)
{
    if (mu == 2.0) return 0.0;
    if (mu > 1.0) return std::sin(std::numbers::pi * (2.0 - mu) / 2.0);
    return std::sin(std::numbers::pi * mu / 2.0);
}

/// int_a^b u^{p-1} du for 0 < a <= b, continuous through p = 0.
inline double power_integral(double a, double b, double p)
{
    const double log_ratio = std::log(b / a);
    if (p == 0.0) return log_ratio;
    // expm1 form keeps accuracy for b close to a; far apart there is no cancellation.
    if (std::abs(p * log_ratio) < 1.0) return std::pow(a, p) * std::expm1(p * log_ratio) / p;
    return (std::pow(b, p) - std::pow(a, p)) / p;
}

/// Continued fraction h(w) with Gamma(s, w) = e^-w w^s h(w).
inline std::complex<double> gamma_fraction(double s, std::complex<double> w)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::complex<double> b = w + 1.0 - s;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i <= kMaxFractionTerms; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const std::complex<double> delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) return h;
    }
    throw NumericalError("incomplete gamma continued fraction did not converge");
}

/// T_mu(z) = int_z^inf u^-mu e^{iu} du for z > 0 and mu > 0.
inline std::complex<double> oscillatory_tail(double mu, double z)
{
    const std::complex<double> h = gamma_fraction(1.0 - mu, std::complex<double>(0.0, -z));
    const double scale = (mu == 1.0) ? 1.0 : std::pow(z, 1.0 - mu);
    return std::polar(scale, z) * h;
}

/// int_0^inf u^-mu sin u du = pi / (2 Gamma(mu) sin(pi mu / 2)), 0 < mu < 2.
inline double sine_moment_to_infinity(double mu)
{
    return std::numbers::pi / (2.0 * std::tgamma(mu) * sin_half_pi(mu));
}

inline double frac_sin_series(double mu, double z)
{
    // sum_j (-1)^j z^{2j+2-mu} / ((2j+2-mu) (2j+1)!)
    const double z2 = z * z;
    double power = std::pow(z, 2.0 - mu);
    double factorial = 1.0;
    double sum = 0.0;
    for (int j = 0; j < kMaxSeriesTerms; ++j) {
        const double term = power / ((2 * j + 2 - mu) * factorial);
        sum += (j % 2 == 0) ? term : -term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
        power *= z2;
        factorial *= (2.0 * j + 2.0) * (2.0 * j + 3.0);
    }
    return sum;
}

/// Series form of int_a^b u^-mu cos u du on 0 <= a <= b <= cutoff.
inline double frac_cos_series(double mu, double a, double b)
{
    // Leading term int u^-mu du, then sum_{j>=1} (-1)^j int u^{2j-mu} du / (2j)!.
    double sum = (a == 0.0) ? std::pow(b, 1.0 - mu) / (1.0 - mu) : power_integral(a, b, 1.0 - mu);
    double factorial = 1.0;
    for (int j = 1; j < kMaxSeriesTerms; ++j) {
        factorial *= (2.0 * j - 1.0) * (2.0 * j);
        const double p = 2.0 * j + 1.0 - mu;
        const double piece = (a == 0.0) ? std::pow(b, p) / p : power_integral(a, b, p);
        const double term = piece / factorial;
        sum += (j % 2 == 0) ? term : -term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) || term == 0.0) break;
    }
    return sum;
}

struct SiCi {
    double si;
    double ci;
};

inline SiCi sici_series(double x)
{
    double si = 0.0;
    double ci = 0.0;
    double power = x;       // x^{2k+1} / (2k+1)!
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        const double term = power / (2 * k + 1);
        si += (k % 2 == 0) ? term : -term;
        if (std::abs(term) <= 1e-17 * std::abs(si)) break;
        power *= x * x / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    power = x * x / 2.0;    // x^{2k} / (2k)!
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        const double term = power / (2 * k);
        ci += (k % 2 == 0) ? term : -term;
        if (std::abs(term) <= 1e-17 * std::abs(ci + 1.0)) break;
        power *= x * x / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    return {si, kEulerGamma + std::log(x) + ci};
}

} // namespace detail

/// A_mu = Gamma(mu + 1) sin(pi mu / 2) / pi; exactly zero at mu = 0 and mu = 2.
inline double a_mu(LevyIndex mu)
{
    const double m = mu.value();
    return std::tgamma(m + 1.0) * detail::sin_half_pi(m) / std::numbers::pi;
}

/// Si(x) and Ci(x) together; x > 0 (Si alone also accepts 0).
inline detail::SiCi sici(double x)
{
    if (!(x > 0.0)) throw DomainError("sici requires x > 0");
    if (x <= detail::kSeriesCutoff) return detail::sici_series(x);
    // int_x^inf e^{iu}/u du = -Ci(x) + i (pi/2 - Si(x))
    const std::complex<double> tail = detail::oscillatory_tail(1.0, x);
    return {std::numbers::pi / 2.0 - tail.imag(), -tail.real()};
}

inline double si(double x)
{
    if (x < 0.0) throw DomainError("si requires x >= 0");
    if (x == 0.0) return 0.0;
    return sici(x).si;
}

inline double ci(double x)
{
    if (!(x > 0.0)) throw DomainError("ci requires x > 0 (logarithmic singularity at 0)");
    return sici(x).ci;
}

/// int_0^z u^-mu sin u du, 0 <= mu < 2, z >= 0.
inline double frac_sin_integral(LevyIndex mu, double z)
{
    const double m = mu.value();
    if (m >= 2.0) throw DomainError("frac_sin_integral diverges at mu = 2");
    if (z < 0.0) throw DomainError("frac_sin_integral requires z >= 0");
    if (z == 0.0) return 0.0;
    if (m == 0.0) return 2.0 * std::pow(std::sin(z / 2.0), 2);
    if (m == 1.0) return si(z);
    if (z <= detail::kSeriesCutoff) return detail::frac_sin_series(m, z);
    return detail::sine_moment_to_infinity(m) - detail::oscillatory_tail(m, z).imag();
}

/// int_a^b u^-mu cos u du, 0 <= mu < 2, 0 <= a <= b; a = 0 needs mu < 1 unless a = b.
inline double frac_cos_integral(LevyIndex mu, double a, double b)
{
    const double m = mu.value();
    if (m >= 2.0) throw DomainError("frac_cos_integral requires mu < 2");
    if (a < 0.0 || b < a) throw DomainError("frac_cos_integral requires 0 <= a <= b");
    if (a == b) return 0.0;
    if (a == 0.0 && m >= 1.0) {
        throw DomainError("frac_cos_integral: u^-mu cos u is not integrable at 0 for mu >= 1");
    }
    if (m == 0.0) return std::sin(b) - std::sin(a);
    if (m == 1.0 && a > 0.0) return ci(b) - ci(a);

    constexpr double cut = detail::kSeriesCutoff;
    double result = 0.0;
    if (a < cut) result += detail::frac_cos_series(m, a, std::min(b, cut));
    if (b > cut) {
        const double lo = std::max(a, cut);
        result += (detail::oscillatory_tail(m, lo) - detail::oscillatory_tail(m, b)).real();
    }
    return result;
}

} // namespace fracwell
