#pragma once

// Galerkin matrix elements
//
//   gamma_ki = int_{-1}^{1} f_k(x) cos(lambda_i x) dx     (even sector)
//   eta_ki   = int_{-1}^{1} g_k(x) sin(b_i x) dx          (odd sector)
//
// Both integrands are even in x, so every element is 2 int_0^1, integrated in
// the wall distance s = 1 - x. The integrand behaves like s^{2-mu} (times a
// logarithm at mu = 1) at the wall, which geometric refinement toward s = 0
// resolves.

#include "fracwell/errors.hpp"
#include "fracwell/kernel.hpp"
#include "fracwell/matrix.hpp"
#include "fracwell/parallel.hpp"
#include "fracwell/quadrature.hpp"
#include "fracwell/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace fracwell {

/// Basis function behind row/column `position` (0-based) of a sector matrix.
inline BasisIndex sector_basis(Parity parity, int position)
{
    return parity == Parity::Even ? BasisIndex::even(position) : BasisIndex::odd(position + 1);
}

/// Dense symmetric matrix of one parity sector at fixed mu.
struct GalerkinMatrix {
    Parity parity;
    LevyIndex mu;
    QuadratureSpec quadrature;
    DenseMatrix entries;
    /// Largest per-entry quadrature error estimate.
    double error_estimate = 0.0;

    int order() const { return static_cast<int>(entries.order()); }
};

namespace detail {

/// Smallest relative error an assembled entry can claim.
inline constexpr double kRoundoffFloor = 50.0 * std::numeric_limits<double>::epsilon();

/// Panels per period of the fastest oscillation in an integrand.
inline constexpr double kPanelsPerPeriod = 4.0;

inline int panels_for_wavenumber(double wavenumber)
{
    const double periods = wavenumber / (2.0 * std::numbers::pi);
    return std::max(1, static_cast<int>(std::ceil(kPanelsPerPeriod * periods)));
}

} // namespace detail

/// One matrix element by adaptive GK15. `k` and `i` are basis labels
/// (even: k >= 0, odd: k >= 1).
inline double element(Parity parity, int k, int i, LevyIndex mu, const QuadratureSpec& q = {})
{
    q.validate();
    const BasisIndex row(parity, k);
    const BasisIndex col(parity, i);
    auto integrand = [&](double s) {
        const auto p = EvalPoint::from_right_wall(s);
        return apply_to_basis(row, mu, p) * basis_eval(col, p);
    };
    QuadratureSpec half = q;
    half.abs_tol = q.abs_tol / 2.0;
    const int panels = detail::panels_for_wavenumber(row.wavenumber() + col.wavenumber());
    try {
        return 2.0 * integrate(integrand, q.wall_offset, 1.0, half, panels).value;
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string(to_string(parity)) + " element (" + std::to_string(k) + ", " +
                                   std::to_string(i) + ") did not converge",
                               2.0 * e.estimate());
    }
}

/// Analytic diagonal at mu = 1: even -2/pi + (2k+1) Si((2k+1) pi), odd 2k Si(2k pi).
inline double diagonal_closed_form(Parity parity, int k, LevyIndex mu = LevyIndex(1.0))
{
    if (!mu.is_cauchy()) throw DomainError("diagonal_closed_form is only available at mu = 1");
    const BasisIndex b(parity, k);
    if (parity == Parity::Even) {
        const double m = 2.0 * k + 1.0;
        return -2.0 / std::numbers::pi + m * si(std::numbers::pi * m);
    }
    return 2.0 * k * si(2.0 * k * std::numbers::pi);
}

namespace detail {

/// Entry sums of one sweep over a composite rule: Kronrod value and the
/// embedded Gauss value for every upper-triangle entry.
struct SweepResult {
    std::vector<double> kronrod;
    std::vector<double> gauss;
};

/// Dot product with a fixed summation order (four interleaved partial sums),
/// so the result never depends on buffer alignment.
inline double dot(const double* a, const double* b, std::size_t n)
{
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        s0 += a[j] * b[j];
        s1 += a[j + 1] * b[j + 1];
        s2 += a[j + 2] * b[j + 2];
        s3 += a[j + 3] * b[j + 3];
    }
    for (; j < n; ++j) s0 += a[j] * b[j];
    return (s0 + s1) + (s2 + s3);
}

inline SweepResult sweep(Parity parity, LevyIndex mu, int n, const std::vector<double>& s_nodes,
                         const std::vector<double>& kronrod_w, const std::vector<double>& gauss_w)
{
    const std::size_t order = static_cast<std::size_t>(n);
    SweepResult out{std::vector<double>(order * order, 0.0), std::vector<double>(order * order, 0.0)};

    std::vector<BasisIndex> basis;
    basis.reserve(order);
    for (int r = 0; r < n; ++r) basis.push_back(sector_basis(parity, r));

    constexpr std::size_t chunk = 480;  // multiple of 15: panels stay whole
    std::vector<double> fk(order * chunk), bk(order * chunk), fg(order * chunk), bg(order * chunk);

    for (std::size_t start = 0; start < s_nodes.size(); start += chunk) {
        const std::size_t stop = std::min(s_nodes.size(), start + chunk);
        const std::size_t width = stop - start;

        std::vector<std::size_t> gauss_nodes;
        for (std::size_t j = start; j < stop; ++j) {
            if (gauss_w[j] != 0.0) gauss_nodes.push_back(j);
        }
        const std::size_t gwidth = gauss_nodes.size();

        parallel_for(0, order, [&](std::size_t r) {
            double* f_row = fk.data() + r * chunk;
            double* b_row = bk.data() + r * chunk;
            double* fg_row = fg.data() + r * chunk;
            double* bg_row = bg.data() + r * chunk;
            std::size_t g = 0;
            for (std::size_t j = start; j < stop; ++j) {
                const auto p = EvalPoint::from_right_wall(s_nodes[j]);
                const double fv = apply_to_basis(basis[r], mu, p);
                const double bv = basis_eval(basis[r], p);
                f_row[j - start] = fv * kronrod_w[j];
                b_row[j - start] = bv;
                if (gauss_w[j] != 0.0) {
                    fg_row[g] = fv * gauss_w[j];
                    bg_row[g] = bv;
                    ++g;
                }
            }
        });

        // Rows r and n-1-r share a work item so the triangle splits evenly.
        auto accumulate_row = [&](std::size_t r) {
            for (std::size_t c = r; c < order; ++c) {
                out.kronrod[r * order + c] += dot(fk.data() + r * chunk, bk.data() + c * chunk, width);
                out.gauss[r * order + c] += dot(fg.data() + r * chunk, bg.data() + c * chunk, gwidth);
            }
        };
        parallel_for(0, (order + 1) / 2, [&](std::size_t item) {
            accumulate_row(item);
            if (order - 1 - item != item) accumulate_row(order - 1 - item);
        });
    }
    return out;
}

} // namespace detail

/// Assembles the n x n matrix of one parity sector on a shared composite GK15
/// grid. Every kernel value is computed once per (row, node); each entry's
/// error estimate is its |K15 - G7| difference. The uniform panel count starts
/// at four per period of the fastest integrand and doubles until every entry
/// meets q; the panel budget is max(q.max_subdivisions, 64 n).
inline GalerkinMatrix assemble(Parity parity, LevyIndex mu, int n, const QuadratureSpec& q = {})
{
    if (n < 1) throw DomainError("assemble requires n >= 1");
    q.validate();

    const double fastest = 2.0 * sector_basis(parity, n - 1).wavenumber();
    int panels = std::max(8, detail::panels_for_wavenumber(fastest));
    const int budget = std::max(q.max_subdivisions, 64 * n);
    const double lo = q.wall_offset;
    const double span = 1.0 - lo;
    const std::size_t order = static_cast<std::size_t>(n);

    for (;;) {
        const double min_width = 1e-15 / span;
        const auto rule = composite_rule(graded_breakpoints(panels, min_width));
        std::vector<double> s(rule.size()), wk(rule.size()), wg(rule.size());
        for (std::size_t j = 0; j < rule.size(); ++j) {
            s[j] = lo + span * rule.nodes[j];
            wk[j] = span * rule.kronrod_weights[j];
            wg[j] = span * rule.gauss_weights[j];
        }
        const auto sums = detail::sweep(parity, mu, n, s, wk, wg);

        GalerkinMatrix result{parity, mu, q, DenseMatrix(order), 0.0};
        bool converged = true;
        for (std::size_t r = 0; r < order; ++r) {
            for (std::size_t c = r; c < order; ++c) {
                const double value = 2.0 * sums.kronrod[r * order + c];
                // Roundoff floor as in QUADPACK: |K - G| alone can reach 0.
                const double error = std::max(2.0 * std::abs(sums.kronrod[r * order + c] - sums.gauss[r * order + c]),
                                              detail::kRoundoffFloor * std::abs(value));
                result.entries(r, c) = value;
                result.entries(c, r) = value;
                result.error_estimate = std::max(result.error_estimate, error);
                if (error > q.tolerance_for(value)) converged = false;
            }
        }
        if (converged) return result;
        if (2 * panels > budget) {
            throw ConvergenceError(std::string(to_string(parity)) + " assembly at n = " + std::to_string(n) +
                                       " exceeded the panel budget",
                                   result.error_estimate);
        }
        panels *= 2;
    }
}

} // namespace fracwell
