#pragma once

// Export formats. Every CSV file starts with a "# fracwell ..." stamp line;
// JSON documents carry the same text under "stamp".

#include "fracwell/galerkin.hpp"
#include "fracwell/quadrature.hpp"
#include "fracwell/specfun.hpp"
#include "fracwell/spectrum.hpp"
#include "fracwell/version.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fracwell {

/// printf-style formatting of one double.
inline std::string format_double(double v, const char* spec = "%.9g")
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, spec, v);
    return buffer;
}

/// Reproducibility stamp: tool version, mu, basis size and tolerances.
inline std::string stamp(LevyIndex mu, int n_basis, const QuadratureSpec& q)
{
    return std::string("fracwell ") + kVersion + " mu=" + format_double(mu.value(), "%.17g") +
           " n_basis=" + std::to_string(n_basis) + " abs_tol=" + format_double(q.abs_tol, "%.3g") +
           " rel_tol=" + format_double(q.rel_tol, "%.3g");
}

inline void write_matrix_csv(std::ostream& out, const GalerkinMatrix& m)
{
    out << "# " << stamp(m.mu, m.order(), m.quadrature) << " parity=" << to_string(m.parity) << '\n';
    const auto n = static_cast<std::size_t>(m.order());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (c) out << ',';
            out << format_double(m.entries(r, c), "%.17g");
        }
        out << '\n';
    }
}

inline nlohmann::json matrix_json(const GalerkinMatrix& m)
{
    const auto n = static_cast<std::size_t>(m.order());
    auto entries = nlohmann::json::array();
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = m.entries.row(r);
        entries.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return {{"stamp", stamp(m.mu, m.order(), m.quadrature)},
            {"parity", to_string(m.parity)},
            {"mu", m.mu.value()},
            {"n", m.order()},
            {"entries", std::move(entries)}};
}

/// Spectrum document with the lowest `report` states (all when report <= 0).
inline nlohmann::json spectrum_json(const Spectrum& s, int report = 0)
{
    const std::size_t count =
        report > 0 ? std::min(s.merged.size(), static_cast<std::size_t>(report)) : s.merged.size();
    auto states = nlohmann::json::array();
    for (std::size_t j = 0; j < count; ++j) {
        const auto& f = s.merged[j];
        states.push_back({{"label", f.label},
                          {"parity", to_string(f.parity)},
                          {"energy", f.energy},
                          {"coefficients", f.coefficients}});
    }
    return {{"stamp", stamp(s.mu, s.n_basis, s.quadrature)},
            {"mu", s.mu.value()},
            {"n_basis", s.n_basis},
            {"degenerate", s.degenerate},
            {"states", std::move(states)}};
}

/// One state sampled on a grid: x, psi, operator_psi, residual. Operator
/// columns are "nan" where |x| >= 1 - 1e-6.
inline void write_eigenfunction_csv(std::ostream& out, const Spectrum& s, int label, const std::vector<double>& xs)
{
    const auto& f = s.state(label);
    out << "# " << stamp(s.mu, s.n_basis, s.quadrature) << " label=" << label << " parity=" << to_string(f.parity)
        << " energy=" << format_double(f.energy) << '\n';
    out << "x,psi,operator_psi,residual\n";
    for (double x : xs) {
        const double psi = eval_eigenfunction(f, EvalPoint(x));
        out << format_double(x) << ',' << format_double(psi) << ',';
        if (std::abs(x) < kResidualCutoff) {
            const double op = apply_operator(s, label, x);
            out << format_double(op) << ',' << format_double(std::abs(op - f.energy * psi));
        } else {
            out << "nan,nan";
        }
        out << '\n';
    }
}

} // namespace fracwell
