// grid.hpp — 1-D sampling grids for frequencies, detunings and drive strengths

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace flr4 {

enum class Spacing { Linear, Log };

std::string_view to_string(Spacing s) noexcept;

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;
    Spacing spacing = Spacing::Linear;
    // Points with |x| < exclude_below are dropped (0 keeps everything).
    double exclude_below = 0.0;

    // Throws Error{InvalidGrid} on an empty or reversed range.
    std::vector<double> values() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Points placed as (min·(n−1−k) + max·k)/(n−1), so a symmetric range gives
// exactly mirrored values.
std::vector<double> linspace(double min, double max, std::size_t n);
std::vector<double> logspace(double min, double max, std::size_t n);

} // namespace flr4
