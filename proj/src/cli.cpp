// cli.cpp — subcommand dispatch, manifests and dataset serialization

#include "flr4/cli.hpp"

#include "flr4/correlation.hpp"
#include "flr4/error.hpp"
#include "flr4/io.hpp"
#include "flr4/spectrum.hpp"
#include "flr4/steady_state.hpp"
#include "flr4/sweeps.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace flr4::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Everything that determines a command's output. Serialized as the manifest.
struct Request {
    std::string command;
    SystemParams params;
    std::string format = "csv";
    SpectrumMethod method = SpectrumMethod::Eq10;
    int transition = 0; // 0 = all three lines
    CorrelationMode correlation_mode = CorrelationMode::Truncated;
    std::optional<GridSpec> nu_grid;
    std::optional<GridSpec> delta1_grid;
    std::optional<GridSpec> omega3_grid;
    std::string figure;
};

struct Output {
    std::string name; // file name inside --out-dir; empty for single-output commands
    std::string content;
};

SpectrumMethod parse_method(const std::string& s)
{
    if (s == "eq10") return SpectrumMethod::Eq10;
    if (s == "qrt" || s == "qrt-consistent") return SpectrumMethod::QrtConsistent;
    if (s == "timedomain") return SpectrumMethod::TimeDomain;
    throw Error(ErrorCode::ConfigError, "unknown spectrum method '" + s + "'");
}

CorrelationMode parse_mode(const std::string& s)
{
    if (s == "truncated") return CorrelationMode::Truncated;
    if (s == "full") return CorrelationMode::Full;
    throw Error(ErrorCode::ConfigError, "unknown correlation mode '" + s + "'");
}

bool uses_spectrum(const Request& r)
{
    return r.command == "spectrum" || r.command == "sweep-omega3" || r.command == "figure";
}

json manifest_of(const Request& r)
{
    json m;
    m["tool"] = std::string(io::kToolName);
    m["version"] = std::string(io::kToolVersion);
    m["command"] = r.command;
    m["params"] = io::params_to_json(r.params);
    m["units"] = "gamma=1";
    m["index_base"] = 1;
    m["c_sign"] = resolve_c_sign().label;
    if (r.command == "steady") m["format"] = r.format;
    if (r.command == "figure") m["figure"] = r.figure;
    if (uses_spectrum(r)) {
        m["method"] = std::string(to_string(r.method));
        m["pole_guard"] = kPoleGuard;
        if (r.method == SpectrumMethod::TimeDomain) {
            m["correlation_mode"] = std::string(to_string(r.correlation_mode));
            m["tau_max"] = kDefaultTauMax;
        }
    }
    if (r.command == "spectrum") m["transition"] = r.transition == 0 ? json("all") : json(r.transition);
    json grids = json::object();
    if (r.nu_grid) grids["nu"] = io::grid_to_json(*r.nu_grid);
    else if (r.command == "sweep-omega3" || r.figure == "fig4") grids["nu"] = "auto";
    if (r.delta1_grid) grids["delta1"] = io::grid_to_json(*r.delta1_grid);
    if (r.omega3_grid) grids["omega3"] = io::grid_to_json(*r.omega3_grid);
    if (!grids.empty()) m["grids"] = grids;
    return m;
}

Request request_from_manifest(const json& m)
{
    try {
        if (m.at("tool").get<std::string>() != io::kToolName) {
            throw Error(ErrorCode::ConfigError, "manifest was not written by " + std::string(io::kToolName));
        }
        Request r;
        r.command = m.at("command").get<std::string>();
        r.params = io::params_from_json(m.at("params"));
        r.format = m.value("format", std::string("csv"));
        r.figure = m.value("figure", std::string());
        if (m.contains("method")) r.method = parse_method(m.at("method").get<std::string>());
        if (m.contains("correlation_mode")) r.correlation_mode = parse_mode(m.at("correlation_mode").get<std::string>());
        if (m.contains("transition") && m.at("transition").is_number_integer()) r.transition = m.at("transition").get<int>();
        if (m.contains("grids")) {
            const auto& g = m.at("grids");
            if (g.contains("nu") && g.at("nu").is_object()) r.nu_grid = io::grid_from_json(g.at("nu"));
            if (g.contains("delta1")) r.delta1_grid = io::grid_from_json(g.at("delta1"));
            if (g.contains("omega3")) r.omega3_grid = io::grid_from_json(g.at("omega3"));
        }
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("malformed manifest: ") + e.what());
    }
}

std::string csv_table(const json& manifest, const std::vector<std::string>& header,
                      const std::vector<const std::vector<double>*>& columns)
{
    std::string out = "# manifest: " + io::dump_line(manifest) + "\n";
    for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
    out += "\n";
    const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    for (std::size_t k = 0; k < rows; ++k) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += io::format_number((*columns[c])[k]);
        }
        out += "\n";
    }
    return out;
}

std::string sweep_csv(const json& manifest, const SweepTable& t)
{
    std::vector<std::string> header{t.axis_name};
    std::vector<const std::vector<double>*> cols{&t.axis_values};
    for (const auto& [name, values] : t.columns) {
        header.push_back(name);
        cols.push_back(&values);
    }
    return csv_table(manifest, header, cols);
}

std::string spectrum_csv(const json& manifest, const SpectrumSeries& s, int transition)
{
    std::vector<std::string> header{"nu"};
    std::vector<const std::vector<double>*> cols{&s.nu};
    for (int i = 1; i <= 3; ++i) {
        if (transition != 0 && transition != i) continue;
        header.push_back("S" + std::to_string(i));
        cols.push_back(&s.s[static_cast<std::size_t>(i - 1)]);
    }
    return csv_table(manifest, header, cols);
}

json results_of(const SpectrumSeries& s)
{
    return json{{"coherent_weight", s.coherent_weight}};
}

GridSpec nu_grid_for(const Request& r)
{
    return r.nu_grid ? *r.nu_grid : default_nu_grid(r.params);
}

SpectrumSeries run_spectrum(const Request& r, const std::vector<double>& nu)
{
    if (r.method == SpectrumMethod::TimeDomain) return spectrum_timedomain(r.params, nu, r.correlation_mode);
    return compute_spectrum(r.params, nu, r.method);
}

std::vector<Output> execute(const Request& r)
{
    json manifest = manifest_of(r);

    if (r.command == "steady") {
        const StateVector s = steady_state(build_liouvillian(r.params));
        if (r.format == "json") {
            json psi = json::array();
            for (int k = 1; k <= kStateDim; ++k) {
                psi.push_back({{"index", k}, {"name", "psi" + std::to_string(k)},
                               {"element", component_label(k)},
                               {"re", s.at(k).real()}, {"im", s.at(k).imag()}});
            }
            const json doc{{"manifest", manifest}, {"psi", psi}, {"rho11", s.rho11()}};
            return {{"", doc.dump(2) + "\n"}};
        }
        std::string out = "# manifest: " + io::dump_line(manifest) + "\nname,re,im,element\n";
        for (int k = 1; k <= kStateDim; ++k) {
            out += "psi" + std::to_string(k) + "," + io::format_number(s.at(k).real()) + "," +
                   io::format_number(s.at(k).imag()) + "," + component_label(k) + "\n";
        }
        out += "rho11," + io::format_number(s.rho11()) + ",0,rho11\n";
        return {{"", out}};
    }

    if (r.command == "eigs") {
        const auto eigs = stability_eigs(build_liouvillian(r.params));
        std::vector<double> index, re, im;
        for (std::size_t k = 0; k < eigs.size(); ++k) {
            index.push_back(static_cast<double>(k + 1));
            re.push_back(eigs[k].real());
            im.push_back(eigs[k].imag());
        }
        return {{"", csv_table(manifest, {"k", "re", "im"}, {&index, &re, &im})}};
    }

    if (r.command == "spectrum") {
        const auto series = run_spectrum(r, nu_grid_for(r).values());
        manifest["results"] = results_of(series);
        return {{"", spectrum_csv(manifest, series, r.transition)}};
    }

    if (r.command == "populations") {
        const auto table = populations_vs_detuning(r.params, r.delta1_grid.value().values());
        manifest["results"] = json{{"missing", table.missing}};
        return {{"", sweep_csv(manifest, table)}};
    }

    if (r.command == "sweep-omega3") {
        PeakSweepOptions opts;
        opts.method = r.method;
        opts.nu_grid = r.nu_grid;
        const auto table = peak_vs_omega3(r.params, r.omega3_grid.value().values(), opts);
        manifest["results"] = json{{"missing", table.missing}};
        return {{"", sweep_csv(manifest, table)}};
    }

    if (r.command == "figure") {
        const FigureBundle b = figure_bundle(r.figure);
        Request described;
        described.command = "figure";
        described.figure = b.name;
        described.params = b.params;
        described.method = b.method;
        described.nu_grid = b.nu_grid;
        described.delta1_grid = b.delta1_grid;
        described.omega3_grid = b.omega3_grid;
        manifest = manifest_of(described);
        std::vector<Output> files;
        json results = json::object();
        if (b.spectrum) results["coherent_weight"] = b.spectrum->coherent_weight;
        if (b.populations) results["populations_missing"] = b.populations->missing;
        if (b.peaks) results["peaks_missing"] = b.peaks->missing;
        manifest["results"] = results;
        if (b.spectrum) files.push_back({b.name + "_spectrum.csv", spectrum_csv(manifest, *b.spectrum, 0)});
        if (b.populations) files.push_back({b.name + "_populations.csv", sweep_csv(manifest, *b.populations)});
        if (b.peaks) files.push_back({b.name + "_peaks.csv", sweep_csv(manifest, *b.peaks)});
        files.push_back({b.name + "_manifest.json", manifest.dump(2) + "\n"});
        return files;
    }

    throw Error(ErrorCode::ConfigError, "command '" + r.command + "' cannot be executed from a manifest");
}

void emit(const std::vector<Output>& files, const std::string& out_path, const std::string& out_dir,
          std::ostream& out)
{
    if (!out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create directory " + out_dir);
        for (const auto& f : files) {
            io::write_file_atomic(fs::path(out_dir) / (f.name.empty() ? "output.csv" : f.name), f.content);
        }
        return;
    }
    for (const auto& f : files) {
        if (out_path.empty()) out << f.content;
        else io::write_file_atomic(out_path, f.content);
    }
}

json load_manifest(const std::string& path)
{
    const std::string text = io::read_file(path);
    constexpr std::string_view prefix = "# manifest: ";
    try {
        if (text.starts_with(prefix)) {
            const auto end = text.find('\n');
            return json::parse(text.substr(prefix.size(), end - prefix.size()));
        }
        const json doc = json::parse(text);
        return doc.contains("manifest") ? doc.at("manifest") : doc;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, path + ": " + e.what());
    }
}

int validate_command(const std::string& config, std::ostream& out)
{
    const auto checked = validate_params(io::load_params(config));
    out << "status: valid\n";
    for (const auto& c : checked.checks()) {
        out << "check: " << c.name << ": lhs=" << io::format_number(c.lhs)
            << " rhs=" << io::format_number(c.rhs) << " residual=" << io::format_number(c.residual)
            << (c.satisfied ? " ok" : (c.enforced ? " violated" : " waived (open system)")) << "\n";
    }
    out << "params: " << io::dump_line(io::params_to_json(checked.params())) << "\n";
    return 0;
}

struct GridFlags {
    CLI::Option* min = nullptr;
    CLI::Option* max = nullptr;
    CLI::Option* points = nullptr;
    double min_value = 0.0;
    double max_value = 0.0;
    std::size_t points_value = 0;

    bool any() const { return min->count() + max->count() + points->count() > 0; }

    GridSpec apply(GridSpec g) const
    {
        if (min->count()) g.min = min_value;
        if (max->count()) g.max = max_value;
        if (points->count()) g.points = points_value;
        return g;
    }
};

GridFlags add_grid_flags(CLI::App* app, const std::string& min_flag, const std::string& max_flag,
                         const std::string& points_flag, const std::string& what)
{
    GridFlags f;
    f.min = app->add_option(min_flag, f.min_value, "lower end of the " + what + " grid");
    f.max = app->add_option(max_flag, f.max_value, "upper end of the " + what + " grid");
    f.points = app->add_option(points_flag, f.points_value, "number of " + what + " grid points")
                   ->check(CLI::PositiveNumber);
    return f;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Steady states and resonance-fluorescence spectra of a driven four-level ladder atom",
                 std::string(io::kToolName)};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::kToolVersion));

    std::string config, out_path, out_dir, format = "csv", method = "eq10", transition = "all";
    std::string correlation_mode = "truncated", figure_name, manifest_path;
    bool log_spacing = false;

    auto* validate = app.add_subcommand("validate", "check a parameter file");
    validate->add_option("--config", config, "parameter file (JSON)")->required();

    auto* steady = app.add_subcommand("steady", "steady-state vector");
    steady->add_option("--config", config, "parameter file (JSON)")->required();
    steady->add_option("--out", out_path, "output file (default: stdout)");
    steady->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* eigs = app.add_subcommand("eigs", "eigenvalues of the generator");
    eigs->add_option("--config", config, "parameter file (JSON)")->required();
    eigs->add_option("--out", out_path, "output file (default: stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "incoherent spectra of the three lines");
    spectrum->add_option("--config", config, "parameter file (JSON)")->required();
    auto spectrum_grid = add_grid_flags(spectrum, "--nu-min", "--nu-max", "--nu-points", "frequency");
    spectrum->add_option("--method", method, "eq10, qrt or timedomain")
        ->check(CLI::IsMember({"eq10", "qrt", "timedomain"}));
    spectrum->add_option("--transition", transition, "1, 2, 3 or all")
        ->check(CLI::IsMember({"1", "2", "3", "all"}));
    spectrum->add_option("--correlation-mode", correlation_mode, "truncated or full (timedomain only)")
        ->check(CLI::IsMember({"truncated", "full"}));
    spectrum->add_option("--out", out_path, "output file (default: stdout)");

    auto* populations = app.add_subcommand("populations", "steady populations against delta1");
    populations->add_option("--config", config, "parameter file (JSON)")->required();
    auto delta_grid = add_grid_flags(populations, "--delta1-min", "--delta1-max", "--points", "detuning");
    populations->add_option("--out", out_path, "output file (default: stdout)");

    auto* sweep = app.add_subcommand("sweep-omega3", "peak line intensities against Omega3");
    sweep->add_option("--config", config, "parameter file (JSON)")->required();
    auto omega_grid = add_grid_flags(sweep, "--min", "--max", "--points", "Omega3");
    sweep->add_flag("--log", log_spacing, "log-spaced Omega3 grid");
    auto sweep_nu = add_grid_flags(sweep, "--nu-min", "--nu-max", "--nu-points", "frequency");
    sweep->add_option("--method", method, "eq10, qrt or timedomain")
        ->check(CLI::IsMember({"eq10", "qrt", "timedomain"}));
    sweep->add_option("--out", out_path, "output file (default: stdout)");

    auto* figure = app.add_subcommand("figure", "canonical reproduction bundle");
    figure->add_option("name", figure_name, "fig2a, fig2b, fig3a, fig3b or fig4")->required();
    figure->add_option("--out-dir", out_dir, "output directory")->required();

    auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    replay->add_option("--manifest", manifest_path, "manifest JSON or CSV output")->required();
    replay->add_option("--out", out_path, "output file (default: stdout)");
    replay->add_option("--out-dir", out_dir, "output directory for figure bundles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return validate_command(config, out);

        if (replay->parsed()) {
            const Request r = request_from_manifest(load_manifest(manifest_path));
            if (r.command == "figure" && out_dir.empty()) {
                err << "error: Usage: replaying a figure bundle needs --out-dir\n";
                return 2;
            }
            emit(execute(r), out_path, r.command == "figure" ? out_dir : std::string(), out);
            return 0;
        }

        if (figure->parsed()) {
            Request r;
            r.command = "figure";
            r.figure = figure_name;
            emit(execute(r), "", out_dir, out);
            return 0;
        }

        Request r;
        r.params = io::load_params(config);
        r.method = parse_method(method);
        r.correlation_mode = parse_mode(correlation_mode);
        r.format = format;

        if (steady->parsed()) {
            r.command = "steady";
        } else if (eigs->parsed()) {
            r.command = "eigs";
        } else if (spectrum->parsed()) {
            r.command = "spectrum";
            r.transition = transition == "all" ? 0 : std::stoi(transition);
            GridSpec g = spectrum_grid.apply(default_nu_grid(r.params));
            g.exclude_below = kPoleGuard;
            r.nu_grid = g;
        } else if (populations->parsed()) {
            r.command = "populations";
            r.delta1_grid = delta_grid.apply(default_delta1_grid());
        } else if (sweep->parsed()) {
            r.command = "sweep-omega3";
            GridSpec g = omega_grid.apply(default_omega3_grid());
            g.spacing = log_spacing ? Spacing::Log : Spacing::Linear;
            r.omega3_grid = g;
            if (sweep_nu.any()) {
                if (!(sweep_nu.min->count() && sweep_nu.max->count() && sweep_nu.points->count())) {
                    err << "error: Usage: --nu-min, --nu-max and --nu-points must be given together\n";
                    return 2;
                }
                GridSpec nu = sweep_nu.apply(GridSpec{});
                nu.exclude_below = kPoleGuard;
                r.nu_grid = nu;
            }
        }
        emit(execute(r), out_path, "", out);
        return 0;
    } catch (const Error& e) {
        std::string msg = e.what();
        for (auto& ch : msg) {
            if (ch == '\n') ch = ' ';
        }
        err << "error: " << to_string(e.code()) << ": " << msg << "\n";
        return 1;
    }
}

} // namespace flr4::cli
