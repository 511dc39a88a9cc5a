#pragma once

// Physical spectrum: both parity sectors diagonalized, merged by energy and
// relabeled n = 1, 2, ..., plus eigenfunction evaluation and diagnostics.

#include "fracwell/eigensolver.hpp"
#include "fracwell/errors.hpp"
#include "fracwell/galerkin.hpp"
#include "fracwell/kernel.hpp"
#include "fracwell/quadrature.hpp"
#include "fracwell/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace fracwell {

/// One eigenstate as a truncated trigonometric series.
struct Eigenfunction {
    Parity parity;
    /// a_k (even, k = 0..n-1) or b_k (odd, k = 1..n); unit Euclidean norm.
    std::vector<double> coefficients;
    double energy;
    /// Global energy-ordered label, starting at 1.
    int label;
};

struct Spectrum {
    LevyIndex mu;
    int n_basis;
    QuadratureSpec quadrature;
    EigenDecomposition even;
    EigenDecomposition odd;
    std::vector<Eigenfunction> merged;
    /// True at mu = 0, where every energy is 1 and the merged order is
    /// even/odd interleaved rather than energy-sorted.
    bool degenerate = false;

    const Eigenfunction& state(int label) const
    {
        if (label < 1 || label > static_cast<int>(merged.size())) {
            throw DomainError("state label " + std::to_string(label) + " out of range 1.." +
                              std::to_string(merged.size()));
        }
        return merged[static_cast<std::size_t>(label - 1)];
    }
};

inline constexpr double kDegeneracyTolerance = 1e-12;

namespace detail {

/// Plot-stable sign: psi(0) > 0 for even states, psi'(0) > 0 for odd ones.
inline void orient(Eigenfunction& f)
{
    double probe = 0.0;
    for (std::size_t k = 0; k < f.coefficients.size(); ++k) {
        probe += f.parity == Parity::Even ? f.coefficients[k]
                                          : f.coefficients[k] * sector_basis(Parity::Odd, static_cast<int>(k)).wavenumber();
    }
    if (probe < 0.0) {
        for (double& c : f.coefficients) c = -c;
    }
}

inline Eigenfunction make_state(Parity parity, const EigenDecomposition& d, std::size_t j)
{
    const auto v = d.vector(j);
    Eigenfunction f{parity, std::vector<double>(v.begin(), v.end()), d.eigenvalues[j], 0};
    orient(f);
    return f;
}

} // namespace detail

/// Builds a spectrum from already decomposed sector matrices.
inline Spectrum merge_sectors(LevyIndex mu, int n_basis, const QuadratureSpec& q, EigenDecomposition even,
                              EigenDecomposition odd)
{
    Spectrum s{mu, n_basis, q, std::move(even), std::move(odd), {}, mu.is_zero_limit()};
    const std::size_t ne = s.even.count();
    const std::size_t no = s.odd.count();
    s.merged.reserve(ne + no);

    std::size_t i = 0, j = 0;
    while (i < ne || j < no) {
        bool take_even;
        if (i == ne) {
            take_even = false;
        } else if (j == no) {
            take_even = true;
        } else if (s.degenerate) {
            take_even = i <= j;
        } else {
            const double ee = s.even.eigenvalues[i];
            const double eo = s.odd.eigenvalues[j];
            if (std::abs(ee - eo) <= kDegeneracyTolerance) {
                throw NumericalError("even and odd energies coincide within 1e-12 at E = " + std::to_string(ee));
            }
            take_even = ee < eo;
        }
        s.merged.push_back(take_even ? detail::make_state(Parity::Even, s.even, i++)
                                     : detail::make_state(Parity::Odd, s.odd, j++));
        s.merged.back().label = static_cast<int>(s.merged.size());
    }
    return s;
}

/// Assembles and diagonalizes both sectors at n_basis functions each.
inline Spectrum solve(LevyIndex mu, int n_basis, const QuadratureSpec& q = {})
{
    if (n_basis < 1) throw DomainError("solve requires n_basis >= 1");
    const auto even = assemble(Parity::Even, mu, n_basis, q);
    const auto odd = assemble(Parity::Odd, mu, n_basis, q);
    return merge_sectors(mu, n_basis, q, eigh(even.entries), eigh(odd.entries));
}

/// Truncated series value at a point of [-1, 1].
inline double eval_eigenfunction(const Eigenfunction& f, const EvalPoint& p)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < f.coefficients.size(); ++k) {
        sum += f.coefficients[k] * basis_eval(sector_basis(f.parity, static_cast<int>(k)), p);
    }
    return sum;
}

inline double eval_eigenfunction(const Spectrum& s, int label, double x)
{
    return eval_eigenfunction(s.state(label), EvalPoint(x));
}

/// Sign changes on a uniform grid over [-1 + 1e-4, 1 - 1e-4].
inline int count_nodes(const Spectrum& s, int label, int grid_size = 4001)
{
    if (grid_size < 101) throw DomainError("count_nodes requires grid_size >= 101");
    const auto& f = s.state(label);
    constexpr double delta = 1e-4;
    const double step = (2.0 - 2.0 * delta) / (grid_size - 1);
    int changes = 0;
    int previous = 0;
    for (int j = 0; j < grid_size; ++j) {
        const double x = (j + 1 == grid_size) ? 1.0 - delta : -1.0 + delta + j * step;
        const double v = eval_eigenfunction(f, EvalPoint(x));
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign == 0) continue;
        if (previous != 0 && sign != previous) ++changes;
        previous = sign;
    }
    return changes;
}

/// E_n ~ [n pi / 2 - (2 - mu) pi / 8]^mu.
inline double asymptotic_energy(int n, LevyIndex mu)
{
    if (n < 1) throw DomainError("asymptotic_energy requires n >= 1");
    const double m = mu.value();
    return std::pow(n * std::numbers::pi / 2.0 - (2.0 - m) * std::numbers::pi / 8.0, m);
}

/// Exact spectrum of the classical infinite well (mu = 2): pi^2 n^2 / 4.
inline double ordinary_spectrum(int n)
{
    if (n < 1) throw DomainError("ordinary_spectrum requires n >= 1");
    return std::numbers::pi * std::numbers::pi * n * n / 4.0;
}

/// Closed-form approximation of the mu = 1 ground state,
/// 0.921749 sqrt((1 - x^2) cos(alpha x)) with alpha = 1443 pi / 4096.
inline double zg_reference(double x)
{
    if (!(std::abs(x) <= 1.0)) throw DomainError("zg_reference requires |x| <= 1");
    const double alpha = 1443.0 * std::numbers::pi / 4096.0;
    return 0.921749 * std::sqrt((1.0 - x * x) * std::cos(alpha * x));
}

struct BoundaryFit {
    double slope;
    /// Root-mean-square residual of the log-log fit.
    double residual;
    int samples;
};

/// Least-squares slope of log|psi(-1 + t)| against log t for `samples`
/// log-spaced t in [t_min, t_max].
inline BoundaryFit boundary_exponent(const Spectrum& s, int label, double t_min = 0.01, double t_max = 0.1,
                                     int samples = 20)
{
    if (!(t_min > 0.0 && t_max > t_min && t_max < 1.0) || samples < 2) {
        throw DomainError("boundary_exponent: invalid fit window");
    }
    const auto& f = s.state(label);
    std::vector<double> xs, ys;
    for (int j = 0; j < samples; ++j) {
        const double t = t_min * std::pow(t_max / t_min, static_cast<double>(j) / (samples - 1));
        const double v = eval_eigenfunction(f, EvalPoint::from_left_wall(t));
        if (v == 0.0) continue;
        xs.push_back(std::log(t));
        ys.push_back(std::log(std::abs(v)));
    }
    if (xs.size() < 10) {
        throw DomainError("boundary_exponent: only " + std::to_string(xs.size()) + " nonzero samples");
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (my + slope * (xs[i] - mx));
        ss += r * r;
    }
    return {slope, std::sqrt(ss / count), static_cast<int>(xs.size())};
}

/// Largest |x| at which the truncated operator image is reported.
inline constexpr double kResidualCutoff = 1.0 - 1e-6;

/// The operator applied termwise to the truncated series of one state.
inline double apply_operator(const Spectrum& s, int label, const EvalPoint& p)
{
    if (!(std::abs(p.x()) < kResidualCutoff)) {
        throw DomainError("apply_operator requires |x| < 1 - 1e-6, got " + std::to_string(p.x()));
    }
    const auto& f = s.state(label);
    double sum = 0.0;
    for (std::size_t k = 0; k < f.coefficients.size(); ++k) {
        sum += f.coefficients[k] * apply_to_basis(sector_basis(f.parity, static_cast<int>(k)), s.mu, p);
    }
    return sum;
}

inline double apply_operator(const Spectrum& s, int label, double x) { return apply_operator(s, label, EvalPoint(x)); }

/// |operator psi - E psi| at x.
inline double residual(const Spectrum& s, int label, double x)
{
    const auto& f = s.state(label);
    return std::abs(apply_operator(s, label, x) - f.energy * eval_eigenfunction(f, EvalPoint(x)));
}

} // namespace fracwell
