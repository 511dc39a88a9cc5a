#pragma once

// Command-line front end. `run` is the whole program; tools/fracwell.cpp only
// forwards argv and the standard streams.
//
// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.

#include "fracwell/eigensolver.hpp"
#include "fracwell/errors.hpp"
#include "fracwell/galerkin.hpp"
#include "fracwell/io.hpp"
#include "fracwell/spectrum.hpp"
#include "fracwell/version.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fracwell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

enum class Command { Solve, Converge, Asymptotic, Eigenfunction, Matrix };
enum class Format { Csv, Json };
/// Which states a table reports: both sectors merged by energy, or one sector.
enum class Sector { Merged, Even, Odd };

struct RunConfig {
    Command command = Command::Solve;
    double mu = 1.0;
    std::optional<int> n_basis;
    std::optional<int> report;
    std::vector<int> sizes;
    std::vector<int> labels{1};
    int grid = 201;
    Format format = Format::Csv;
    std::string output_path;
    QuadratureSpec quadrature;
    Sector sector = Sector::Merged;
    bool compare_zg = false;
    bool boundary_fit = false;

    int basis() const
    {
        if (n_basis) return *n_basis;
        return command == Command::Asymptotic ? 1000 : 100;
    }

    /// Rejects every bad input before any computation starts.
    void validate() const
    {
        LevyIndex{mu};
        quadrature.validate();
        if (basis() < 1) throw DomainError("--n must be >= 1");
        if (report && *report < 1) throw DomainError("--report must be >= 1");
        if (grid < 2) throw DomainError("--grid must be >= 2");
        switch (command) {
        case Command::Converge:
            if (sizes.empty()) throw DomainError("converge requires --sizes");
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                if (sizes[i] < 1) throw DomainError("--sizes entries must be >= 1");
                if (i > 0 && sizes[i] <= sizes[i - 1]) throw DomainError("--sizes must be strictly ascending");
            }
            break;
        case Command::Eigenfunction:
            if (labels.empty()) throw DomainError("--labels must not be empty");
            for (int label : labels) {
                if (label < 1 || label > 2 * basis()) {
                    throw DomainError("--labels entries must lie in 1.." + std::to_string(2 * basis()));
                }
            }
            break;
        case Command::Matrix:
            if (sector == Sector::Merged) throw DomainError("matrix requires --sector even or odd");
            break;
        default:
            break;
        }
    }
};

namespace detail {

inline const char* to_string(Sector s)
{
    switch (s) {
    case Sector::Even: return "even";
    case Sector::Odd: return "odd";
    default: return "merged";
    }
}

inline std::string degeneracy_note()
{
    return "mu = 0: every energy equals 1; the spectrum is fully degenerate and states are listed "
           "even/odd interleaved instead of energy-sorted";
}

/// Lowest `count` states of the chosen sector(s) from the leading block of
/// already assembled sector matrices.
inline std::vector<Eigenfunction> lowest_states(const DenseMatrix* even, const DenseMatrix* odd, LevyIndex mu,
                                                std::size_t size, std::size_t count, Sector sector,
                                                const QuadratureSpec& q)
{
    auto lowest = [&](const DenseMatrix* m) {
        const auto block = m->order() == size ? *m : m->leading_block(size);
        return eigh_lowest(block, std::min(count, size));
    };
    EigenDecomposition e, o;
    if (sector != Sector::Odd) e = lowest(even);
    if (sector != Sector::Even) o = lowest(odd);
    auto s = merge_sectors(mu, static_cast<int>(size), q, std::move(e), std::move(o));
    if (s.merged.size() > count) s.merged.resize(count);
    return s.merged;
}

struct SectorMatrices {
    std::optional<GalerkinMatrix> even;
    std::optional<GalerkinMatrix> odd;
};

inline SectorMatrices assemble_sectors(LevyIndex mu, int n, Sector sector, const QuadratureSpec& q)
{
    SectorMatrices m;
    if (sector != Sector::Odd) m.even = assemble(Parity::Even, mu, n, q);
    if (sector != Sector::Even) m.odd = assemble(Parity::Odd, mu, n, q);
    return m;
}

inline std::vector<Eigenfunction> lowest_states(const SectorMatrices& m, LevyIndex mu, std::size_t size,
                                                std::size_t count, Sector sector, const QuadratureSpec& q)
{
    return lowest_states(m.even ? &m.even->entries : nullptr, m.odd ? &m.odd->entries : nullptr, mu, size, count,
                         sector, q);
}

inline void cmd_solve(const RunConfig& c, std::ostream& out)
{
    const LevyIndex mu(c.mu);
    const int n = c.basis();
    const auto s = solve(mu, n, c.quadrature);
    const int report = std::min(c.report.value_or(n), static_cast<int>(s.merged.size()));
    if (c.format == Format::Json) {
        auto doc = spectrum_json(s, report);
        if (s.degenerate) doc["note"] = degeneracy_note();
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# " << stamp(mu, n, c.quadrature) << '\n';
    if (s.degenerate) out << "# note: " << degeneracy_note() << '\n';
    out << "label,parity,energy\n";
    for (int j = 0; j < report; ++j) {
        const auto& f = s.merged[static_cast<std::size_t>(j)];
        out << f.label << ',' << fracwell::to_string(f.parity) << ',' << format_double(f.energy) << '\n';
    }
}

inline void cmd_converge(const RunConfig& c, std::ostream& out)
{
    const LevyIndex mu(c.mu);
    const std::size_t report = static_cast<std::size_t>(c.report.value_or(6));
    const int largest = c.sizes.back();
    // Every smaller size is a leading principal block of the largest matrix.
    const auto matrices = assemble_sectors(mu, largest, c.sector, c.quadrature);

    std::vector<std::vector<double>> rows;
    for (int size : c.sizes) {
        std::vector<double> energies;
        for (const auto& f : lowest_states(matrices, mu, static_cast<std::size_t>(size), report, c.sector,
                                           c.quadrature)) {
            energies.push_back(f.energy);
        }
        rows.push_back(std::move(energies));
    }

    bool monotone = true;
    std::string violation;
    for (std::size_t r = 1; r < rows.size() && !mu.is_zero_limit(); ++r) {
        for (std::size_t j = 0; j < std::min(rows[r].size(), rows[r - 1].size()); ++j) {
            if (rows[r][j] > rows[r - 1][j] + kDegeneracyTolerance) {
                if (monotone) {
                    violation = "E" + std::to_string(j + 1) + " increases from n=" + std::to_string(c.sizes[r - 1]) +
                                " to n=" + std::to_string(c.sizes[r]);
                }
                monotone = false;
            }
        }
    }

    if (c.format == Format::Json) {
        nlohmann::json table = nlohmann::json::array();
        for (std::size_t r = 0; r < rows.size(); ++r) table.push_back({{"n", c.sizes[r]}, {"energies", rows[r]}});
        nlohmann::json doc{{"stamp", stamp(mu, largest, c.quadrature)},
                           {"mu", mu.value()},
                           {"sector", to_string(c.sector)},
                           {"rows", std::move(table)},
                           {"monotone", monotone}};
        if (!monotone) doc["violation"] = violation;
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# " << stamp(mu, largest, c.quadrature) << " sector=" << to_string(c.sector) << '\n';
    out << "n";
    for (std::size_t j = 0; j < report; ++j) out << ",E" << j + 1;
    out << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << c.sizes[r];
        for (double e : rows[r]) out << ',' << format_double(e);
        out << '\n';
    }
    out << "# monotone=" << (monotone ? "true" : "false");
    if (!monotone) out << " (" << violation << ')';
    out << '\n';
}

inline void cmd_asymptotic(const RunConfig& c, std::ostream& out)
{
    const LevyIndex mu(c.mu);
    const int n = c.basis();
    const std::size_t n_max = static_cast<std::size_t>(c.report.value_or(20));
    const auto matrices = assemble_sectors(mu, n, Sector::Merged, c.quadrature);
    const auto states = lowest_states(matrices, mu, static_cast<std::size_t>(n), n_max, Sector::Merged, c.quadrature);

    struct Row {
        int n;
        double computed, formula, percent;
    };
    std::vector<Row> rows;
    for (const auto& f : states) {
        const double formula = asymptotic_energy(f.label, mu);
        rows.push_back({f.label, f.energy, formula, 100.0 * std::abs(f.energy - formula) / f.energy});
    }
    const std::string caption = "computed column uses n_basis=" + std::to_string(n) +
                                "; deviations include truncation error in n_basis";
    if (c.format == Format::Json) {
        nlohmann::json table = nlohmann::json::array();
        for (const auto& r : rows) {
            table.push_back({{"n", r.n}, {"computed", r.computed}, {"formula", r.formula}, {"rel_error_percent", r.percent}});
        }
        out << nlohmann::json{{"stamp", stamp(mu, n, c.quadrature)},
                              {"mu", mu.value()},
                              {"caption", caption},
                              {"rows", std::move(table)}}
                   .dump(2)
            << '\n';
        return;
    }
    out << "# " << stamp(mu, n, c.quadrature) << '\n';
    out << "# " << caption << '\n';
    out << "n,E_computed,E_formula,rel_error_percent\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.computed) << ',' << format_double(r.formula) << ','
            << format_double(r.percent, "%.4g") << '\n';
    }
}

inline void cmd_eigenfunction(const RunConfig& c, std::ostream& out)
{
    const LevyIndex mu(c.mu);
    const int n = c.basis();
    const auto s = solve(mu, n, c.quadrature);

    std::vector<double> xs(static_cast<std::size_t>(c.grid));
    for (int j = 0; j < c.grid; ++j) {
        xs[static_cast<std::size_t>(j)] = (j + 1 == c.grid) ? 1.0 : -1.0 + 2.0 * j / (c.grid - 1);
    }

    std::vector<std::string> names{"x"};
    std::vector<std::vector<double>> columns{xs};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int label : c.labels) {
        const auto& f = s.state(label);
        std::vector<double> psi, op, res;
        for (double x : xs) {
            const double v = eval_eigenfunction(f, EvalPoint(x));
            psi.push_back(v);
            if (std::abs(x) < kResidualCutoff) {
                const double w = apply_operator(s, label, x);
                op.push_back(w);
                res.push_back(std::abs(w - f.energy * v));
            } else {
                op.push_back(nan);
                res.push_back(nan);
            }
        }
        const std::string tag = "_" + std::to_string(label);
        names.insert(names.end(), {"psi" + tag, "operator_psi" + tag, "residual" + tag});
        columns.push_back(std::move(psi));
        columns.push_back(std::move(op));
        columns.push_back(std::move(res));
    }

    std::optional<double> zg_max;
    if (c.compare_zg) {
        const auto& ground = s.state(1);
        std::vector<double> zg, diff;
        for (double x : xs) {
            const double z = zg_reference(x);
            zg.push_back(z);
            diff.push_back(std::abs(eval_eigenfunction(ground, EvalPoint(x)) - z));
        }
        names.insert(names.end(), {"zg_reference", "zg_deviation"});
        columns.push_back(std::move(zg));
        columns.push_back(std::move(diff));
        // Maximum over a fixed fine grid on |x| <= 0.95, independent of --grid.
        double worst = 0.0;
        for (int j = 0; j <= 1900; ++j) {
            const double x = -0.95 + j * 0.001;
            worst = std::max(worst, std::abs(eval_eigenfunction(ground, EvalPoint(x)) - zg_reference(x)));
        }
        zg_max = worst;
    }

    std::vector<std::pair<int, BoundaryFit>> fits;
    if (c.boundary_fit) {
        for (int label : c.labels) fits.emplace_back(label, boundary_exponent(s, label));
    }

    if (c.format == Format::Json) {
        nlohmann::json cols = nlohmann::json::object();
        for (std::size_t i = 0; i < names.size(); ++i) {
            auto arr = nlohmann::json::array();
            for (double v : columns[i]) arr.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
            cols[names[i]] = std::move(arr);
        }
        nlohmann::json doc{{"stamp", stamp(mu, n, c.quadrature)}, {"mu", mu.value()}, {"n_basis", n},
                           {"labels", c.labels},                  {"columns", std::move(cols)}};
        if (zg_max) doc["zg_max_deviation"] = *zg_max;
        if (!fits.empty()) {
            auto arr = nlohmann::json::array();
            for (const auto& [label, fit] : fits) {
                arr.push_back({{"label", label}, {"slope", fit.slope}, {"residual", fit.residual}, {"expected", mu.value() / 2.0}});
            }
            doc["boundary_fit"] = std::move(arr);
        }
        out << doc.dump(2) << '\n';
        return;
    }

    out << "# " << stamp(mu, n, c.quadrature) << '\n';
    for (int label : c.labels) {
        const auto& f = s.state(label);
        out << "# label=" << label << " parity=" << fracwell::to_string(f.parity) << " energy=" << format_double(f.energy)
            << '\n';
    }
    if (zg_max) out << "# zg_max_deviation(|x|<=0.95)=" << format_double(*zg_max) << '\n';
    for (const auto& [label, fit] : fits) {
        out << "# boundary_fit label=" << label << " slope=" << format_double(fit.slope)
            << " residual=" << format_double(fit.residual) << " expected=" << format_double(mu.value() / 2.0) << '\n';
    }
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << '\n';
    for (std::size_t r = 0; r < xs.size(); ++r) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const double v = columns[i][r];
            out << (i ? "," : "") << (std::isnan(v) ? std::string("nan") : format_double(v));
        }
        out << '\n';
    }
}

inline void cmd_matrix(const RunConfig& c, std::ostream& out)
{
    const auto parity = c.sector == Sector::Even ? Parity::Even : Parity::Odd;
    const auto m = assemble(parity, LevyIndex(c.mu), c.basis(), c.quadrature);
    if (c.format == Format::Json) {
        out << matrix_json(m).dump(2) << '\n';
    } else {
        write_matrix_csv(out, m);
    }
}

inline void execute(const RunConfig& c, std::ostream& out)
{
    switch (c.command) {
    case Command::Solve: cmd_solve(c, out); break;
    case Command::Converge: cmd_converge(c, out); break;
    case Command::Asymptotic: cmd_asymptotic(c, out); break;
    case Command::Eigenfunction: cmd_eigenfunction(c, out); break;
    case Command::Matrix: cmd_matrix(c, out); break;
    }
}

} // namespace detail

/// Parses argv into a RunConfig, or returns the exit code when parsing ends
/// the run (help, version, usage error). Messages go to out / err.
inline std::variant<RunConfig, int> parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Eigenvalues and eigenfunctions of the fractional Laplacian in the infinite well [-1, 1]", "fracwell"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig c;
    int n_basis = 0;
    int report = 0;
    std::string converge_sector = "merged";
    std::string matrix_sector = "even";

    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
    const std::map<std::string, Command> commands{{"solve", Command::Solve},
                                                  {"converge", Command::Converge},
                                                  {"asymptotic", Command::Asymptotic},
                                                  {"eigenfunction", Command::Eigenfunction},
                                                  {"matrix", Command::Matrix}};
    const std::map<std::string, std::string> help{
        {"solve", "Lowest merged energies with parity tags"},
        {"converge", "Lowest energies against basis size (leading blocks of the largest matrix)"},
        {"asymptotic", "Computed energies against the large-n formula"},
        {"eigenfunction", "Eigenfunction samples with operator image and residual"},
        {"matrix", "Galerkin matrix of one parity sector"}};

    std::vector<CLI::App*> subs;
    for (const auto& [name, command] : commands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        subs.push_back(sub);
        sub->add_option("--mu", c.mu, "Stability index in [0, 2]")->required();
        sub->add_option("--n", n_basis, "Basis functions per parity sector");
        sub->add_option("--format", c.format, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--out", c.output_path, "Output file (default: standard output)");
        sub->add_option("--abs-tol", c.quadrature.abs_tol, "Absolute quadrature tolerance");
        sub->add_option("--rel-tol", c.quadrature.rel_tol, "Relative quadrature tolerance");
        switch (command) {
        case Command::Solve:
            sub->add_option("--report", report, "Number of states to report (default: n)");
            break;
        case Command::Converge:
            sub->add_option("--sizes", c.sizes, "Ascending basis sizes")->delimiter(',')->required();
            sub->add_option("--report", report, "Energies per row (default 6)");
            sub->add_option("--sector", converge_sector, "merged, even or odd")
                ->check(CLI::IsMember({"merged", "even", "odd"}, CLI::ignore_case));
            break;
        case Command::Asymptotic:
            sub->add_option("--report", report, "Largest state label n_max (default 20)");
            break;
        case Command::Eigenfunction:
            sub->add_option("--labels", c.labels, "State labels, 1-based")->delimiter(',');
            sub->add_option("--grid", c.grid, "Uniform grid points on [-1, 1]");
            sub->add_flag("--compare-zg", c.compare_zg, "Add the closed-form ground-state approximation");
            sub->add_flag("--boundary-fit", c.boundary_fit, "Fit the exponent of psi near x = -1");
            break;
        case Command::Matrix:
            sub->add_option("--sector", matrix_sector, "even or odd")
                ->check(CLI::IsMember({"even", "odd"}, CLI::ignore_case));
            break;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (auto* sub : subs) {
        if (!sub->parsed()) continue;
        c.command = commands.at(sub->get_name());
        if (sub->count("--n")) c.n_basis = n_basis;
        if (sub->get_option_no_throw("--report") && sub->count("--report")) c.report = report;
    }
    std::string sector_name = c.command == Command::Matrix     ? matrix_sector
                              : c.command == Command::Converge ? converge_sector
                                                               : std::string("merged");
    std::transform(sector_name.begin(), sector_name.end(), sector_name.begin(), ::tolower);
    c.sector = sector_name == "even" ? Sector::Even : sector_name == "odd" ? Sector::Odd : Sector::Merged;
    return c;
}

/// Runs one invocation and returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    auto parsed = parse(argc, argv, out, err);
    if (const int* code = std::get_if<int>(&parsed)) return *code;
    const RunConfig& config = std::get<RunConfig>(parsed);
    try {
        config.validate();
    } catch (const DomainError& e) {
        err << "fracwell: invalid input: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream buffer;
    try {
        detail::execute(config, buffer);
    } catch (const DomainError& e) {
        err << "fracwell: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::runtime_error& e) {
        err << "fracwell: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }

    if (config.output_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(config.output_path, std::ios::binary);
        if (!file) {
            err << "fracwell: cannot open " << config.output_path << " for writing\n";
            return kExitUsage;
        }
        file << buffer.str();
    }
    return kExitOk;
}

} // namespace fracwell::cli
