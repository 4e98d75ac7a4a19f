// grid.cpp — grid construction

#include "flr4/grid.hpp"

#include "flr4/error.hpp"

#include <cmath>
#include <sstream>

namespace flr4 {

std::string_view to_string(Spacing s) noexcept
{
    return s == Spacing::Log ? "log" : "linear";
}

std::vector<double> linspace(double min, double max, std::size_t n)
{
    if (n == 0) return {};
    if (n == 1) return {min};
    std::vector<double> out(n);
    const double last = static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        out[k] = (min * (last - kk) + max * kk) / last;
    }
    out.front() = min;
    out.back() = max;
    return out;
}

std::vector<double> logspace(double min, double max, std::size_t n)
{
    if (!(min > 0.0) || !(max > 0.0)) {
        throw Error(ErrorCode::InvalidGrid, "log spacing needs a positive range");
    }
    auto out = linspace(std::log(min), std::log(max), n);
    for (auto& x : out) x = std::exp(x);
    if (!out.empty()) {
        out.front() = min;
        out.back() = max;
    }
    return out;
}

std::vector<double> GridSpec::values() const
{
    if (points == 0 || !std::isfinite(min) || !std::isfinite(max) || max < min ||
        (points > 1 && max == min)) {
        std::ostringstream msg;
        msg << "invalid grid [" << min << ", " << max << "] with " << points << " points";
        throw Error(ErrorCode::InvalidGrid, msg.str());
    }
    auto raw = spacing == Spacing::Log ? logspace(min, max, points) : linspace(min, max, points);
    if (exclude_below <= 0.0) return raw;
    std::vector<double> kept;
    kept.reserve(raw.size());
    for (double x : raw) {
        if (std::abs(x) >= exclude_below) kept.push_back(x);
    }
    if (kept.empty()) throw Error(ErrorCode::InvalidGrid, "every grid point falls inside the excluded band");
    return kept;
}

} // namespace flr4
