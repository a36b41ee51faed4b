#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dkp/bound_spectrum.hpp"
#include "dkp/errors.hpp"
#include "dkp/kinematics.hpp"
#include "dkp/scattering.hpp"

namespace dkp::io {

enum class ExitCode : int {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,  // unknown flag or key, missing/unknown command, bad choice
    IoError = 3,
    MalformedNumber = 4,
    InvalidValue = 5,  // value parses but violates an invariant
};

enum class Command { Scan, Resonances, Bound, SweepV, SweepA, Verify };
enum class Format { Csv, Json };

std::string_view to_string(Command cmd);

struct RunConfig {
    Command command = Command::Scan;
    PotentialSpec spec;  // defaults a = 1, V0 = 2, b0 = 0, b1 = 1, m = 1
    SectorChoice sector = SectorChoice::scalar();
    double emin = 1.001;
    double emax = 10.0;
    int steps = 2000;
    double vmin = 0.5;
    double vmax = 5.0;
    int vsteps = 100;
    double amin = 0.001;
    double amax = 0.2;
    int asteps = 200;
    int nmax = 5;
    int ygrid = 2000;
    Format format = Format::Csv;
    std::optional<std::string> out;  // stdout when empty
};

// Carries the process exit code for the failure.
class CliError : public Error {
public:
    CliError(ExitCode code, const std::string& what) : Error(what), code_(code) {}
    ExitCode code() const { return code_; }

private:
    ExitCode code_;
};

// Thrown by parse_cli for --help; what() is the help text.
class HelpRequested : public Error {
public:
    using Error::Error;
};

// Flat key=value text, one pair per line, '#' starts a comment.
std::map<std::string, std::string> parse_config_text(std::string_view text);

// Flags override the --config file, which overrides built-in defaults.
RunConfig parse_cli(int argc, const char* const* argv);

// Comment lines (without the leading "# ") written above the CSV header.
using Metadata = std::vector<std::string>;

std::string format_number(double v);  // 17 significant digits

std::string format_scan(std::span<const ScatteringResult> results, Format format, const Metadata& meta = {});
std::string format_spectrum(const SpectrumTable& table, std::string_view param_name, Format format,
                            const Metadata& meta = {});
std::string format_bound(std::span<const BoundLevel> levels, Format format, const Metadata& meta = {});
std::string format_resonances(std::span<const Resonance> res, Format format, const Metadata& meta = {});

// Writes via a temporary file in the target directory and renames it into
// place. Throws CliError(IoError) with the path in the message.
void write_atomic(const std::string& path, std::string_view content);

void emit_scan(std::span<const ScatteringResult> results, Format format, const std::string& path,
               const Metadata& meta = {});

Metadata run_metadata(const RunConfig& cfg);

// Executes one command, writing data to cfg.out (or `out` when unset) and
// diagnostics to `err`. Returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_cli + run with exit-code mapping; what main() calls.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dkp::io
