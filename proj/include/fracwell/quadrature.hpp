#pragma once

// Gauss-Kronrod (7, 15) quadrature: a globally adaptive integrator in the
// QUADPACK qag style, and a fixed composite rule on a panel list for
// evaluating many integrals against shared nodes.

#include "fracwell/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace fracwell {

/// Tolerances and subdivision policy for every outer integral.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    /// Distance from the wall at which integration is truncated; 0 means the
    /// endpoint singularity is resolved by subdivision instead.
    double wall_offset = 0.0;

    void validate() const
    {
        if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
        if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
        if (max_subdivisions < 50) throw DomainError("QuadratureSpec: max_subdivisions must be >= 50");
        if (!(wall_offset >= 0.0 && wall_offset < 0.5)) {
            throw DomainError("QuadratureSpec: wall_offset must lie in [0, 0.5)");
        }
    }

    double tolerance_for(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }
};

namespace gk15 {

// Abscissae on [0, 1) of the symmetric rule; odd indices are the Gauss points.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

// Weights of the embedded 7-point Gauss rule at kNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct PanelResult {
    double value;
    double error;
};

/// One GK15 application on [a, b]; the error estimate is |K15 - G7|.
template <class F>
PanelResult apply(F&& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace gk15

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive GK15 on [a, b], starting from `initial_panels` equal
/// pieces and bisecting the panel with the largest error estimate.
template <class F>
IntegrationResult integrate(F&& f, double a, double b, const QuadratureSpec& spec, int initial_panels = 1)
{
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& other) const { return error < other.error; }
    };

    std::priority_queue<Panel> queue;
    double total = 0.0;
    double total_error = 0.0;
    const int start = std::max(1, initial_panels);
    const double width = (b - a) / start;
    for (int i = 0; i < start; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == start) ? b : a + (i + 1) * width;
        const auto r = gk15::apply(f, lo, hi);
        queue.push({lo, hi, r.value, r.error});
        total += r.value;
        total_error += r.error;
    }

    int subdivisions = start;
    while (total_error > spec.tolerance_for(total)) {
        if (subdivisions >= std::max(spec.max_subdivisions, start + 1)) {
            throw ConvergenceError("adaptive quadrature exceeded " + std::to_string(spec.max_subdivisions) +
                                       " subdivisions",
                                   total_error);
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("adaptive quadrature reached machine resolution", total_error);
        }
        const auto left = gk15::apply(f, worst.a, mid);
        const auto right = gk15::apply(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        ++subdivisions;
    }

    // Re-sum from the panels so roundoff from the running updates does not accumulate.
    double value = 0.0;
    double error = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {value, error, subdivisions};
}

/// Nodes and weights of a composite GK15 rule. Each node carries both its
/// Kronrod weight and (for Gauss nodes) its G7 weight, so a single sweep of
/// function values yields an integral and its error estimate.
struct CompositeRule {
    std::vector<double> nodes;
    std::vector<double> kronrod_weights;
    std::vector<double> gauss_weights;

    std::size_t size() const { return nodes.size(); }
};

/// Composite rule over panels given by ascending breakpoints.
inline CompositeRule composite_rule(const std::vector<double>& breakpoints)
{
    CompositeRule rule;
    const std::size_t panels = breakpoints.size() - 1;
    rule.nodes.reserve(15 * panels);
    rule.kronrod_weights.reserve(15 * panels);
    rule.gauss_weights.reserve(15 * panels);
    auto push = [&](double x, double wk, double wg) {
        rule.nodes.push_back(x);
        rule.kronrod_weights.push_back(wk);
        rule.gauss_weights.push_back(wg);
    };
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = breakpoints[p];
        const double b = breakpoints[p + 1];
        const double center = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (int j = 0; j < 7; ++j) {
            const double wg = (j % 2 == 1) ? gk15::kGaussWeights[j / 2] * half : 0.0;
            push(center - half * gk15::kNodes[j], gk15::kKronrodWeights[j] * half, wg);
        }
        push(center, gk15::kKronrodWeights[7] * half, gk15::kGaussWeights[3] * half);
        for (int j = 6; j >= 0; --j) {
            const double wg = (j % 2 == 1) ? gk15::kGaussWeights[j / 2] * half : 0.0;
            push(center + half * gk15::kNodes[j], gk15::kKronrodWeights[j] * half, wg);
        }
    }
    return rule;
}

/// Breakpoints on [0, 1]: `uniform_panels` equal panels, with the panel
/// touching 0 split geometrically (ratio 1/2) down to `min_width`.
inline std::vector<double> graded_breakpoints(int uniform_panels, double min_width)
{
    std::vector<double> points;
    const double width = 1.0 / uniform_panels;
    points.push_back(0.0);
    std::vector<double> graded;
    for (double w = width / 2.0; w > min_width; w /= 2.0) graded.push_back(w);
    for (auto it = graded.rbegin(); it != graded.rend(); ++it) points.push_back(*it);
    for (int i = 1; i <= uniform_panels; ++i) points.push_back(i == uniform_panels ? 1.0 : i * width);
    return points;
}

} // namespace fracwell
