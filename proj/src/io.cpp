// io.cpp — parameter files and output helpers

#include "flr4/io.hpp"

#include "flr4/error.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace flr4::io {

using nlohmann::json;

namespace {

std::array<double, 3> triple(const json& j, std::string_view key)
{
    if (!j.is_array() || j.size() != 3) {
        throw Error(ErrorCode::ConfigError, "'" + std::string(key) + "' must be an array of 3 numbers");
    }
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_number()) {
            throw Error(ErrorCode::ConfigError, "'" + std::string(key) + "' must contain only numbers");
        }
        out[i] = j[i].get<double>();
    }
    return out;
}

} // namespace

SystemParams params_from_json(const json& j)
{
    if (!j.is_object()) throw Error(ErrorCode::ConfigError, "parameter file must hold a JSON object");
    SystemParams p;
    for (const auto& [key, value] : j.items()) {
        if (key == "omega") p.omega = triple(value, key);
        else if (key == "delta") p.delta = triple(value, key);
        else if (key == "gamma_level") p.gamma_level = triple(value, key);
        else if (key == "gamma_branch") p.gamma_branch = triple(value, key);
        else if (key == "mu") p.mu = triple(value, key);
        else if (key == "allow_open_system") {
            if (!value.is_boolean()) throw Error(ErrorCode::ConfigError, "'allow_open_system' must be a boolean");
            p.allow_open_system = value.get<bool>();
        } else {
            throw Error(ErrorCode::ConfigError, "unknown parameter key '" + key + "'");
        }
    }
    return p;
}

json params_to_json(const SystemParams& p)
{
    return json{
        {"omega", p.omega},
        {"delta", p.delta},
        {"gamma_level", p.gamma_level},
        {"gamma_branch", p.gamma_branch},
        {"mu", p.mu},
        {"allow_open_system", p.allow_open_system},
    };
}

SystemParams load_params(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
    }
    return params_from_json(j);
}

json grid_to_json(const GridSpec& g)
{
    return json{
        {"min", g.min},
        {"max", g.max},
        {"points", g.points},
        {"spacing", std::string(to_string(g.spacing))},
        {"exclude_below", g.exclude_below},
    };
}

GridSpec grid_from_json(const json& j)
{
    try {
        GridSpec g;
        g.min = j.at("min").get<double>();
        g.max = j.at("max").get<double>();
        g.points = j.at("points").get<std::size_t>();
        const auto spacing = j.at("spacing").get<std::string>();
        if (spacing == "log") g.spacing = Spacing::Log;
        else if (spacing == "linear") g.spacing = Spacing::Linear;
        else throw Error(ErrorCode::ConfigError, "unknown grid spacing '" + spacing + "'");
        g.exclude_below = j.value("exclude_below", 0.0);
        return g;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("malformed grid: ") + e.what());
    }
}

std::string format_number(double x)
{
    if (x == 0.0) x = 0.0; // drop the sign of negative zero
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

std::string dump_line(const json& j)
{
    return j.dump();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    const auto tmp = std::filesystem::path(path.string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot move output into place at " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace flr4::io
