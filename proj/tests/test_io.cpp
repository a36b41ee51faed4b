#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkp/io.hpp"

using namespace dkp;
using namespace dkp::io;
namespace fs = std::filesystem;

namespace {

std::vector<const char*> argv_of(std::initializer_list<const char*> args) {
    std::vector<const char*> v = {"dkp"};
    v.insert(v.end(), args);
    return v;
}

RunConfig parse(std::initializer_list<const char*> args) {
    const auto v = argv_of(args);
    return parse_cli(static_cast<int>(v.size()), v.data());
}

ExitCode parse_code(std::initializer_list<const char*> args) {
    try {
        parse(args);
    } catch (const CliError& e) {
        return e.code();
    }
    return ExitCode::Success;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("dkp_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const PotentialSpec barrier{1.0, 2.0, 0.0, 1.0, 1.0};

}  // namespace

TEST_CASE("parse_cli: defaults") {
    const RunConfig cfg = parse({"scan"});
    CHECK(cfg.command == Command::Scan);
    CHECK(cfg.spec.a == 1.0);
    CHECK(cfg.spec.v0 == 2.0);
    CHECK(cfg.spec.b0 == 0.0);
    CHECK(cfg.spec.b1 == 1.0);
    CHECK(cfg.spec.m == 1.0);
    CHECK(cfg.steps == 2000);
    CHECK(cfg.format == Format::Csv);
    CHECK_FALSE(cfg.out.has_value());
    CHECK(cfg.sector == SectorChoice::scalar());
}

TEST_CASE("parse_cli: negative values and short keys") {
    const RunConfig cfg = parse({"scan", "--sector", "vector", "--sigma", "-1", "--emin", "-10", "--emax",
                                 "-1.5", "--a", "0.5", "--m", "2", "--v0=-3"});
    CHECK(cfg.sector == SectorChoice::vector(-1));
    CHECK(cfg.emin == -10.0);
    CHECK(cfg.emax == -1.5);
    CHECK(cfg.spec.a == 0.5);
    CHECK(cfg.spec.m == 2.0);
    CHECK(cfg.spec.v0 == -3.0);
}

TEST_CASE("parse_cli: flag beats config beats default") {
    TempDir dir;
    const std::string conf = dir.file("run.conf");
    {
        std::ofstream f(conf);
        f << "# comment\n  a = 0.25\nv0=4\n\nformat = json  # trailing\nsteps=10\n";
    }
    const RunConfig cfg = parse({"scan", "--config", conf.c_str(), "--v0", "3"});
    CHECK(cfg.spec.a == 0.25);
    CHECK(cfg.spec.v0 == 3.0);
    CHECK(cfg.format == Format::Json);
    CHECK(cfg.steps == 10);
    CHECK(cfg.spec.m == 1.0);
}

TEST_CASE("parse_config_text") {
    const auto kv = parse_config_text("a=1\n# x\nb1 = -2 # y\n");
    CHECK(kv.size() == 2);
    CHECK(kv.at("b1") == "-2");
    try {
        parse_config_text("bogus=1\n");
        FAIL("expected error");
    } catch (const CliError& e) {
        CHECK(e.code() == ExitCode::Usage);
    }
    try {
        parse_config_text("a 1\n");
        FAIL("expected error");
    } catch (const CliError& e) {
        CHECK(e.code() == ExitCode::Usage);
    }
}

TEST_CASE("parse_cli: exit codes") {
    CHECK(parse_code({}) == ExitCode::Usage);
    CHECK(parse_code({"fly"}) == ExitCode::Usage);
    CHECK(parse_code({"scan", "--nope", "1"}) == ExitCode::Usage);
    CHECK(parse_code({"scan", "--format", "xml"}) == ExitCode::Usage);
    CHECK(parse_code({"scan", "--sector", "tensor"}) == ExitCode::Usage);
    CHECK(parse_code({"scan", "--config", "/nonexistent/dir/x.conf"}) == ExitCode::IoError);
    CHECK(parse_code({"scan", "--a", "abc"}) == ExitCode::MalformedNumber);
    CHECK(parse_code({"scan", "--a", "1.0x"}) == ExitCode::MalformedNumber);
    CHECK(parse_code({"scan", "--steps", "2.5"}) == ExitCode::MalformedNumber);
    CHECK(parse_code({"scan", "--a", "nan"}) == ExitCode::MalformedNumber);
    CHECK(parse_code({"scan", "--a", "0"}) == ExitCode::InvalidValue);
    CHECK(parse_code({"scan", "--m", "-1"}) == ExitCode::InvalidValue);
    CHECK(parse_code({"scan", "--emin", "3", "--emax", "2"}) == ExitCode::InvalidValue);
    CHECK(parse_code({"scan", "--sector", "vector", "--sigma", "2"}) == ExitCode::InvalidValue);
    CHECK(parse_code({"bound", "--ygrid", "50"}) == ExitCode::InvalidValue);
    CHECK(parse_code({"scan", "--out", ""}) == ExitCode::InvalidValue);
}

TEST_CASE("main_entry: help and errors") {
    std::ostringstream out, err;
    auto v = argv_of({"--help"});
    CHECK(main_entry(static_cast<int>(v.size()), v.data(), out, err) == 0);
    CHECK(out.str().find("--emin") != std::string::npos);

    std::ostringstream out2, err2;
    v = argv_of({"scan", "--a", "x"});
    CHECK(main_entry(static_cast<int>(v.size()), v.data(), out2, err2) == 4);
    CHECK(out2.str().empty());
    CHECK_FALSE(err2.str().empty());
}

TEST_CASE("format_scan: CSV layout") {
    const ScatteringResult ok = amplitudes(1.5, barrier, SectorChoice::scalar());
    ScatteringResult deg = ok;
    deg.flag = PointFlag::Degenerate;
    const std::vector<ScatteringResult> rows = {ok, deg};
    const std::string csv = format_scan(rows, Format::Csv);
    std::istringstream in(csv);
    std::string header, line1, line2;
    std::getline(in, header);
    std::getline(in, line1);
    std::getline(in, line2);
    CHECK(header == "E,xi_re,xi_im,eta_re,eta_im,r_re,r_im,t_re,t_im,R,T,flag");
    CHECK(line1.substr(line1.rfind(',') + 1) == "ok");
    CHECK(line2.find(",,,,,,degenerate") != std::string::npos);
    CHECK(std::count(line1.begin(), line1.end(), ',') == 11);
    CHECK(std::count(line2.begin(), line2.end(), ',') == 11);
}

TEST_CASE("format_scan: empty input is header only") {
    CHECK(format_scan({}, Format::Csv) == "E,xi_re,xi_im,eta_re,eta_im,r_re,r_im,t_re,t_im,R,T,flag\n");
    CHECK(format_scan({}, Format::Json) == "[]\n");
}

TEST_CASE("format_scan: metadata as comments") {
    const std::string csv = format_scan({}, Format::Csv, {"hello", "x=1"});
    CHECK(csv.rfind("# hello\n# x=1\nE,", 0) == 0);
}

TEST_CASE("format_scan: JSON round trip is bit exact") {
    const auto grid = energy_grid(-6.0, 6.0, 101, barrier);
    const auto rows = coefficients_scan(grid, barrier, SectorChoice::scalar());
    const auto parsed = nlohmann::json::parse(format_scan(rows, Format::Json));
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i]["E"].get<double>() == rows[i].E);
        CHECK(parsed[i]["t_re"].get<double>() == rows[i].t.real());
        CHECK(parsed[i]["t_im"].get<double>() == rows[i].t.imag());
        CHECK(parsed[i]["R"].get<double>() == rows[i].R);
        CHECK(parsed[i]["flag"] == "ok");
    }
}

TEST_CASE("format_number round trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.7326545885406632, 1e-300, 6.02e23}) {
        CHECK(std::stod(format_number(v)) == v);
    }
}

TEST_CASE("format_spectrum and format_bound") {
    SpectrumTable t;
    t.rows = {{2.0, 0, 0.5}, {2.0, 0, -0.5}};
    t.flagged = {{0.0, "a must be positive"}};
    const std::string csv = format_spectrum(t, "v", Format::Csv);
    CHECK(csv.find("param,level_index,E\n") != std::string::npos);
    CHECK(csv.find("2,0,0.5\n") != std::string::npos);
    CHECK(csv.find("2,0,-0.5\n") != std::string::npos);
    CHECK(csv.find("# param = v") != std::string::npos);
    CHECK(csv.find("# flagged") != std::string::npos);

    const auto levels = find_bound_states({1.0, 2.0, 1.4142135623730951, 1.0, 1.0}, SectorChoice::scalar(), 500);
    const std::string b = format_bound(levels, Format::Csv);
    CHECK(b.rfind("level_index,y,E_plus,E_minus,pole_residual,quantization_residual,oracle_gap\n", 0) == 0);
    const auto js = nlohmann::json::parse(format_bound(levels, Format::Json));
    REQUIRE(js.size() == levels.size());
    CHECK(js[0]["E_plus"].get<double>() == levels[0].E_plus);
}

TEST_CASE("format_resonances") {
    const auto res = resonances(1, barrier);
    const std::string csv = format_resonances(res, Format::Csv);
    CHECK(csv.rfind("N,xi,E\n0,", 0) == 0);
}

TEST_CASE("write_atomic") {
    TempDir dir;
    const std::string target = dir.file("out.csv");
    write_atomic(target, "first\n");
    write_atomic(target, "second\n");
    CHECK(slurp(target) == "second\n");
    CHECK_FALSE(fs::exists(target + ".tmp"));
    try {
        write_atomic(dir.file("missing/dir/out.csv"), "x");
        FAIL("expected error");
    } catch (const CliError& e) {
        CHECK(e.code() == ExitCode::IoError);
        CHECK(std::string(e.what()).find("missing/dir") != std::string::npos);
    }
}

TEST_CASE("run: scan output is deterministic and honours --out") {
    TempDir dir;
    const std::string target = dir.file("scan.csv");
    RunConfig cfg = parse({"scan", "--steps", "50"});
    std::ostringstream a, b, err;
    CHECK(run(cfg, a, err) == 0);
    CHECK(run(cfg, b, err) == 0);
    CHECK(a.str() == b.str());
    cfg.out = target;
    std::ostringstream c;
    CHECK(run(cfg, c, err) == 0);
    CHECK(c.str().empty());
    CHECK(slurp(target) == a.str());
}

TEST_CASE("run: sweeps and bound") {
    std::ostringstream out, err;
    RunConfig cfg = parse({"sweep-v", "--b0", "1.4142135623730951", "--vsteps", "5"});
    CHECK(run(cfg, out, err) == 0);
    CHECK(out.str().find("param,level_index,E") != std::string::npos);

    std::ostringstream out2;
    cfg = parse({"bound", "--b0", "1.4142135623730951"});
    CHECK(run(cfg, out2, err) == 0);
    CHECK(out2.str().find("0.6974447121505") != std::string::npos);

    std::ostringstream out3;
    cfg = parse({"resonances", "--nmax", "2", "--format", "json"});
    CHECK(run(cfg, out3, err) == 0);
    CHECK(nlohmann::json::parse(out3.str()).size() == 3);
}
