// sweeps.cpp — parameter scans and figure bundles

#include "flr4/sweeps.hpp"

#include "flr4/correlation.hpp"
#include "flr4/error.hpp"
#include "flr4/parallel.hpp"
#include "flr4/steady_state.hpp"

#include <cmath>
#include <stdexcept>

namespace flr4 {

const std::vector<double>& SweepTable::column(std::string_view name) const
{
    for (const auto& [key, values] : columns) {
        if (key == name) return values;
    }
    throw std::out_of_range("SweepTable: no column named " + std::string(name));
}

GridSpec default_delta1_grid()
{
    return GridSpec{-20.0, 20.0, 801, Spacing::Linear, 0.0};
}

GridSpec default_omega3_grid()
{
    return GridSpec{0.25, 50.0, 100, Spacing::Log, 0.0};
}

SweepTable populations_vs_detuning(const SystemParams& p, const std::vector<double>& delta1)
{
    validate_params(p);
    struct Row {
        bool ok = false;
        double rho22 = 0.0, rho33 = 0.0, rho44 = 0.0;
    };
    std::vector<Row> rows(delta1.size());
    parallel_for(delta1.size(), [&](std::size_t k) {
        SystemParams q = p;
        q.delta[0] = delta1[k];
        try {
            const StateVector s = steady_state(build_liouvillian(q));
            rows[k] = {true, s.population(2), s.population(3), s.population(4)};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularLiouvillian) throw;
        }
    });

    SweepTable table;
    table.axis_name = "delta1";
    table.columns = {{"rho22", {}}, {"rho33", {}}, {"rho44", {}}};
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!rows[k].ok) {
            table.missing.push_back(delta1[k]);
            continue;
        }
        table.axis_values.push_back(delta1[k]);
        table.columns[0].second.push_back(rows[k].rho22);
        table.columns[1].second.push_back(rows[k].rho33);
        table.columns[2].second.push_back(rows[k].rho44);
    }
    return table;
}

Peak find_peak(const std::vector<double>& nu, const std::vector<double>& s)
{
    if (nu.empty() || nu.size() != s.size()) throw Error(ErrorCode::InvalidGrid, "find_peak: empty or mismatched series");
    Peak best{s[0], nu[0]};
    for (std::size_t k = 1; k < nu.size(); ++k) {
        const bool higher = s[k] > best.value;
        const bool tie_closer = s[k] == best.value &&
            (std::abs(nu[k]) < std::abs(best.nu) ||
             (std::abs(nu[k]) == std::abs(best.nu) && nu[k] < best.nu));
        if (higher || tie_closer) best = {s[k], nu[k]};
    }
    return best;
}

Peak line_center_sample(const std::vector<double>& nu, const std::vector<double>& s)
{
    if (nu.empty() || nu.size() != s.size()) throw Error(ErrorCode::InvalidGrid, "line_center_sample: empty or mismatched series");
    std::size_t best = 0;
    for (std::size_t k = 1; k < nu.size(); ++k) {
        const double a = std::abs(nu[k]);
        const double b = std::abs(nu[best]);
        if (a < b || (a == b && nu[k] < nu[best])) best = k;
    }
    return {s[best], nu[best]};
}

SpectrumSeries compute_spectrum(const SystemParams& p, const std::vector<double>& nu,
                                SpectrumMethod method)
{
    switch (method) {
    case SpectrumMethod::Eq10: return spectrum_eq10(p, nu);
    case SpectrumMethod::QrtConsistent: return spectrum_consistent(p, nu);
    case SpectrumMethod::TimeDomain: return spectrum_timedomain(p, nu);
    }
    throw std::logic_error("compute_spectrum: unknown method");
}

SweepTable peak_vs_omega3(const SystemParams& p, const std::vector<double>& omega3,
                          const PeakSweepOptions& options)
{
    validate_params(p);
    struct Row {
        bool ok = false;
        std::array<Peak, 3> peak{};
        std::array<Peak, 3> center{};
    };
    std::vector<Row> rows(omega3.size());
    parallel_for(omega3.size(), [&](std::size_t k) {
        SystemParams q = p;
        q.omega[2] = omega3[k];
        const auto nu = (options.nu_grid ? *options.nu_grid : default_nu_grid(q)).values();
        try {
            const auto series = compute_spectrum(q, nu, options.method);
            Row row;
            row.ok = true;
            for (std::size_t i = 0; i < 3; ++i) {
                row.peak[i] = find_peak(series.nu, series.s[i]);
                row.center[i] = line_center_sample(series.nu, series.s[i]);
            }
            rows[k] = row;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularLiouvillian) throw;
        }
    });

    SweepTable table;
    table.axis_name = "omega3";
    for (const char* prefix : {"peak_S", "argpeak_nu_S", "center_S"}) {
        for (int i = 1; i <= 3; ++i) table.columns.push_back({prefix + std::to_string(i), {}});
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!rows[k].ok) {
            table.missing.push_back(omega3[k]);
            continue;
        }
        table.axis_values.push_back(omega3[k]);
        for (std::size_t i = 0; i < 3; ++i) {
            table.columns[i].second.push_back(rows[k].peak[i].value);
            table.columns[3 + i].second.push_back(rows[k].peak[i].nu);
            table.columns[6 + i].second.push_back(rows[k].center[i].value);
        }
    }
    return table;
}

FigureBundle figure_bundle(std::string_view name)
{
    FigureBundle b;
    b.name = std::string(name);
    if (name == "fig2a" || name == "fig3a") {
        b.params = SystemParams::figure_rates({7.0, 4.0, 1.0});
    } else if (name == "fig2b" || name == "fig3b") {
        b.params = SystemParams::figure_rates({7.0, 4.0, 50.0});
    } else if (name == "fig4") {
        b.params = SystemParams::figure_rates({7.0, 4.0, 1.0});
    } else {
        throw Error(ErrorCode::UnknownPoint, "unknown figure point '" + std::string(name) + "'");
    }

    if (name.starts_with("fig2")) {
        b.nu_grid = default_nu_grid(b.params);
        b.spectrum = compute_spectrum(b.params, b.nu_grid->values(), b.method);
    }
    if (name.starts_with("fig2") || name.starts_with("fig3")) {
        b.delta1_grid = default_delta1_grid();
        b.populations = populations_vs_detuning(b.params, b.delta1_grid->values());
    }
    if (name == "fig4") {
        b.omega3_grid = default_omega3_grid();
        b.peaks = peak_vs_omega3(b.params, b.omega3_grid->values(), PeakSweepOptions{b.method, {}});
    }
    return b;
}

} // namespace flr4
