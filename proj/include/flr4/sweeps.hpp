// sweeps.hpp — parameter scans behind the published figure datasets:
// populations against Δ1, peak line intensity against Ω3, and named
// reproduction bundles.

#pragma once

#include "flr4/grid.hpp"
#include "flr4/model.hpp"
#include "flr4/spectrum.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flr4 {

struct SweepTable {
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    // Axis values dropped because the generator was singular there.
    std::vector<double> missing;

    // Throws std::out_of_range for an unknown column.
    const std::vector<double>& column(std::string_view name) const;
};

GridSpec default_delta1_grid();
GridSpec default_omega3_grid();

// Steady ρ22, ρ33, ρ44 for each Δ1, other parameters as in p.
SweepTable populations_vs_detuning(const SystemParams& p, const std::vector<double>& delta1);

struct Peak {
    double value = 0.0;
    double nu = 0.0;
};

// Global maximum; ties go to the smaller |ν|, then to the smaller ν.
Peak find_peak(const std::vector<double>& nu, const std::vector<double>& s);
// Sample nearest the line center (smallest |ν|, then smaller ν).
Peak line_center_sample(const std::vector<double>& nu, const std::vector<double>& s);

struct PeakSweepOptions {
    SpectrumMethod method = SpectrumMethod::Eq10;
    // When unset, each Ω3 point uses default_nu_grid for its own parameters.
    std::optional<GridSpec> nu_grid;
};

// Per Ω3: peak_S{i}, argpeak_nu_S{i}, center_S{i} for i = 1..3.
SweepTable peak_vs_omega3(const SystemParams& p, const std::vector<double>& omega3,
                          const PeakSweepOptions& options = {});

SpectrumSeries compute_spectrum(const SystemParams& p, const std::vector<double>& nu,
                                SpectrumMethod method);

struct FigureBundle {
    std::string name;
    SystemParams params;
    SpectrumMethod method = SpectrumMethod::Eq10;

    std::optional<GridSpec> nu_grid;
    std::optional<SpectrumSeries> spectrum;

    std::optional<GridSpec> delta1_grid;
    std::optional<SweepTable> populations;

    std::optional<GridSpec> omega3_grid;
    std::optional<SweepTable> peaks;
};

inline constexpr std::array<std::string_view, 5> kFigureNames{"fig2a", "fig2b", "fig3a", "fig3b",
                                                               "fig4"};

// fig2a/fig2b: spectra plus population scan at Ω = (7,4,1) / (7,4,50).
// fig3a/fig3b: population scans at the same points.
// fig4: peak intensities over the default Ω3 grid at Ω1 = 7, Ω2 = 4.
// Throws Error{UnknownPoint} for any other name.
FigureBundle figure_bundle(std::string_view name);

} // namespace flr4
