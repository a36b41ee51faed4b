#include "dkp/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dkp::io {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kKeys = {"a",    "v0",   "b0",     "b1",   "m",    "sector", "sigma",
                                        "emin", "emax", "steps",  "vmin", "vmax", "vsteps", "amin",
                                        "amax", "asteps", "nmax", "ygrid", "format", "out"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size() || errno == ERANGE || !std::isfinite(v))
        throw CliError(ExitCode::MalformedNumber, "malformed number for '" + key + "': '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    std::string_view sv = text;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (sv.empty() || ec != std::errc() || ptr != sv.data() + sv.size())
        throw CliError(ExitCode::MalformedNumber, "malformed integer for '" + key + "': '" + text + "'");
    return v;
}

void invalid(const std::string& what) { throw CliError(ExitCode::InvalidValue, what); }

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    auto num = [&](const char* key, double& slot) {
        if (auto it = kv.find(key); it != kv.end()) slot = parse_double(key, it->second);
    };
    auto integer = [&](const char* key, int& slot) {
        if (auto it = kv.find(key); it != kv.end()) slot = parse_int(key, it->second);
    };
    num("a", cfg.spec.a);
    num("v0", cfg.spec.v0);
    num("b0", cfg.spec.b0);
    num("b1", cfg.spec.b1);
    num("m", cfg.spec.m);
    num("emin", cfg.emin);
    num("emax", cfg.emax);
    integer("steps", cfg.steps);
    num("vmin", cfg.vmin);
    num("vmax", cfg.vmax);
    integer("vsteps", cfg.vsteps);
    num("amin", cfg.amin);
    num("amax", cfg.amax);
    integer("asteps", cfg.asteps);
    integer("nmax", cfg.nmax);
    integer("ygrid", cfg.ygrid);

    std::string sector = "scalar";
    if (auto it = kv.find("sector"); it != kv.end()) sector = it->second;
    int sigma = 1;
    integer("sigma", sigma);
    if (sector == "scalar") {
        cfg.sector = SectorChoice::scalar();
    } else if (sector == "vector") {
        if (sigma != 1 && sigma != -1) invalid("sigma must be +1 or -1, got " + std::to_string(sigma));
        cfg.sector = SectorChoice::vector(sigma);
    } else {
        throw CliError(ExitCode::Usage, "sector must be 'scalar' or 'vector', got '" + sector + "'");
    }

    if (auto it = kv.find("format"); it != kv.end()) {
        if (it->second == "csv")
            cfg.format = Format::Csv;
        else if (it->second == "json")
            cfg.format = Format::Json;
        else
            throw CliError(ExitCode::Usage, "format must be 'csv' or 'json', got '" + it->second + "'");
    }
    if (auto it = kv.find("out"); it != kv.end()) cfg.out = it->second;
}

void check_invariants(const RunConfig& cfg) {
    try {
        cfg.spec.validate();
    } catch (const InvalidSpec& e) {
        invalid(e.what());
    }
    if (!(cfg.emin < cfg.emax)) invalid("emin must be below emax");
    if (cfg.steps < 2) invalid("steps must be at least 2");
    if (!(cfg.vmin <= cfg.vmax)) invalid("vmin must not exceed vmax");
    if (cfg.vsteps < 1) invalid("vsteps must be at least 1");
    if (!(cfg.amin <= cfg.amax)) invalid("amin must not exceed amax");
    if (cfg.asteps < 1) invalid("asteps must be at least 1");
    if (cfg.nmax < 0) invalid("nmax must be nonnegative");
    if (cfg.ygrid < 100) invalid("ygrid must be at least 100");
    if (cfg.out && cfg.out->empty()) invalid("output path must not be empty");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(ExitCode::IoError, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_csv_preamble(std::string& s, const Metadata& meta) {
    for (const std::string& line : meta) s += "# " + line + "\n";
}

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

std::string_view to_string(Command cmd) {
    switch (cmd) {
        case Command::Scan: return "scan";
        case Command::Resonances: return "resonances";
        case Command::Bound: return "bound";
        case Command::SweepV: return "sweep-v";
        case Command::SweepA: return "sweep-a";
        case Command::Verify: return "verify";
    }
    return "unknown";
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw CliError(ExitCode::Usage, "config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            throw CliError(ExitCode::Usage, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

RunConfig parse_cli(int argc, const char* const* argv) {
    CLI::App app{"Scattering amplitudes and bound levels for a square vector potential", "dkp"};
    app.allow_extras(false);

    std::string command;
    app.add_option("command", command, "scan | resonances | bound | sweep-v | sweep-a | verify")->required();

    std::map<std::string, std::string> flags;
    std::map<std::string, CLI::Option*> opts;
    const std::map<std::string, std::string> help = {
        {"a", "half-width of the potential"},
        {"v0", "potential scale V0 (positive: well)"},
        {"b0", "time-component weight"},
        {"b1", "space-component weight"},
        {"m", "boson mass"},
        {"sector", "scalar | vector"},
        {"sigma", "vector polarization, +1 or -1"},
        {"emin", "scan lower energy"},
        {"emax", "scan upper energy"},
        {"steps", "scan grid points"},
        {"vmin", "sweep-v lower upsilon"},
        {"vmax", "sweep-v upper upsilon"},
        {"vsteps", "sweep-v points"},
        {"amin", "sweep-a lower half-width"},
        {"amax", "sweep-a upper half-width"},
        {"asteps", "sweep-a points"},
        {"nmax", "highest resonance order"},
        {"ygrid", "bound-state search grid points"},
        {"format", "csv | json"},
        {"out", "output path (stdout when omitted)"},
    };
    for (const std::string& key : kKeys) opts[key] = app.add_option("--" + key, flags[key], help.at(key));
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ExtrasError& e) {
        throw CliError(ExitCode::Usage, std::string("unknown argument: ") + e.what());
    } catch (const CLI::ParseError& e) {
        throw CliError(ExitCode::Usage, e.what());
    }

    RunConfig cfg;
    if (command == "scan")
        cfg.command = Command::Scan;
    else if (command == "resonances")
        cfg.command = Command::Resonances;
    else if (command == "bound")
        cfg.command = Command::Bound;
    else if (command == "sweep-v")
        cfg.command = Command::SweepV;
    else if (command == "sweep-a")
        cfg.command = Command::SweepA;
    else if (command == "verify")
        cfg.command = Command::Verify;
    else
        throw CliError(ExitCode::Usage, "unknown command '" + command + "'");

    std::map<std::string, std::string> merged;
    if (!config_path.empty()) merged = parse_config_text(read_file(config_path));
    for (const std::string& key : kKeys)
        if (opts[key]->count() > 0) merged[key] = flags[key];

    apply_settings(cfg, merged);
    check_invariants(cfg);
    return cfg;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_scan(std::span<const ScatteringResult> results, Format format, const Metadata& meta) {
    if (format == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const ScatteringResult& r : results) {
            const bool ok = r.flag == PointFlag::Ok;
            ordered_json o;
            o["E"] = r.E;
            o["xi_re"] = r.xi.real();
            o["xi_im"] = r.xi.imag();
            o["eta_re"] = r.eta.real();
            o["eta_im"] = r.eta.imag();
            o["r_re"] = ok ? ordered_json(r.r.real()) : ordered_json(nullptr);
            o["r_im"] = ok ? ordered_json(r.r.imag()) : ordered_json(nullptr);
            o["t_re"] = ok ? ordered_json(r.t.real()) : ordered_json(nullptr);
            o["t_im"] = ok ? ordered_json(r.t.imag()) : ordered_json(nullptr);
            o["R"] = ok ? ordered_json(r.R) : ordered_json(nullptr);
            o["T"] = ok ? ordered_json(r.T) : ordered_json(nullptr);
            o["flag"] = std::string(to_string(r.flag));
            arr.push_back(std::move(o));
        }
        return arr.dump(2) + "\n";
    }
    std::string s;
    write_csv_preamble(s, meta);
    s += "E,xi_re,xi_im,eta_re,eta_im,r_re,r_im,t_re,t_im,R,T,flag\n";
    for (const ScatteringResult& r : results) {
        s += format_number(r.E) + ',' + format_number(r.xi.real()) + ',' + format_number(r.xi.imag()) + ',' +
             format_number(r.eta.real()) + ',' + format_number(r.eta.imag()) + ',';
        if (r.flag == PointFlag::Ok) {
            s += format_number(r.r.real()) + ',' + format_number(r.r.imag()) + ',' + format_number(r.t.real()) +
                 ',' + format_number(r.t.imag()) + ',' + format_number(r.R) + ',' + format_number(r.T) + ',';
        } else {
            s += ",,,,,,";
        }
        s += std::string(to_string(r.flag)) + '\n';
    }
    return s;
}

std::string format_spectrum(const SpectrumTable& table, std::string_view param_name, Format format,
                            const Metadata& meta) {
    if (format == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const SpectrumRow& row : table.rows) {
            ordered_json o;
            o["param"] = row.param;
            o["level_index"] = row.level_index;
            o["E"] = row.E;
            arr.push_back(std::move(o));
        }
        return arr.dump(2) + "\n";
    }
    std::string s;
    write_csv_preamble(s, meta);
    s += "# param = " + std::string(param_name) + "\n";
    for (const FlaggedParam& f : table.flagged) s += "# flagged " + format_number(f.param) + ": " + f.reason + "\n";
    s += "param,level_index,E\n";
    for (const SpectrumRow& row : table.rows)
        s += format_number(row.param) + ',' + std::to_string(row.level_index) + ',' + format_number(row.E) + '\n';
    return s;
}

std::string format_bound(std::span<const BoundLevel> levels, Format format, const Metadata& meta) {
    if (format == Format::Json) {
        ordered_json arr = ordered_json::array();
        int index = 0;
        for (const BoundLevel& l : levels) {
            ordered_json o;
            o["level_index"] = index++;
            o["y"] = l.y;
            o["E_plus"] = l.E_plus;
            o["E_minus"] = l.E_minus;
            o["pole_residual"] = l.pole_residual;
            o["quantization_residual"] =
                l.quantization_residual ? number_or_null(*l.quantization_residual) : ordered_json(nullptr);
            o["oracle_gap"] = number_or_null(l.oracle_gap);
            arr.push_back(std::move(o));
        }
        return arr.dump(2) + "\n";
    }
    std::string s;
    write_csv_preamble(s, meta);
    s += "level_index,y,E_plus,E_minus,pole_residual,quantization_residual,oracle_gap\n";
    int index = 0;
    for (const BoundLevel& l : levels) {
        s += std::to_string(index++) + ',' + format_number(l.y) + ',' + format_number(l.E_plus) + ',' +
             format_number(l.E_minus) + ',' + format_number(l.pole_residual) + ',' +
             (l.quantization_residual ? format_number(*l.quantization_residual) : std::string()) + ',' +
             format_number(l.oracle_gap) + '\n';
    }
    return s;
}

std::string format_resonances(std::span<const Resonance> res, Format format, const Metadata& meta) {
    if (format == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const Resonance& r : res) {
            ordered_json o;
            o["N"] = r.order;
            o["xi"] = r.xi;
            o["E"] = r.E;
            arr.push_back(std::move(o));
        }
        return arr.dump(2) + "\n";
    }
    std::string s;
    write_csv_preamble(s, meta);
    s += "N,xi,E\n";
    for (const Resonance& r : res)
        s += std::to_string(r.order) + ',' + format_number(r.xi) + ',' + format_number(r.E) + '\n';
    return s;
}

void write_atomic(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CliError(ExitCode::IoError, "cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw CliError(ExitCode::IoError, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CliError(ExitCode::IoError, "cannot move output into place at '" + path + "'");
    }
}

void emit_scan(std::span<const ScatteringResult> results, Format format, const std::string& path,
               const Metadata& meta) {
    write_atomic(path, format_scan(results, format, meta));
}

Metadata run_metadata(const RunConfig& cfg) {
    const PotentialSpec& s = cfg.spec;
    Metadata meta;
    meta.push_back("dkp " + std::string(to_string(cfg.command)));
    meta.push_back("a=" + format_number(s.a) + " m=" + format_number(s.m) + " v0=" + format_number(s.v0) +
                   " b0=" + format_number(s.b0) + " b1=" + format_number(s.b1));
    meta.push_back("upsilon=" + format_number(s.upsilon()) + " j=" + format_number(s.j()));
    meta.push_back(std::string("sector=") + (cfg.sector.is_vector() ? "vector" : "scalar") +
                   " sigma=" + std::to_string(cfg.sector.sigma()));
    return meta;
}

}  // namespace dkp::io
