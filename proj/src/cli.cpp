#include <ostream>

#include "dkp/io.hpp"
#include "dkp/verification.hpp"

namespace dkp::io {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
    return v;
}

void deliver(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.out)
        write_atomic(*cfg.out, content);
    else
        out << content;
}

void report_flags(const SpectrumTable& t, std::ostream& err) {
    for (const FlaggedParam& f : t.flagged) err << "warning: skipped " << format_number(f.param) << ": " << f.reason << '\n';
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Metadata meta = run_metadata(cfg);
    switch (cfg.command) {
        case Command::Scan: {
            const auto grid = energy_grid(cfg.emin, cfg.emax, cfg.steps, cfg.spec);
            const auto results = coefficients_scan(grid, cfg.spec, cfg.sector);
            deliver(cfg, format_scan(results, cfg.format, meta), out);
            return 0;
        }
        case Command::Resonances: {
            const auto res = resonances(cfg.nmax, cfg.spec);
            deliver(cfg, format_resonances(res, cfg.format, meta), out);
            return 0;
        }
        case Command::Bound: {
            const auto levels = find_bound_states(cfg.spec, cfg.sector, cfg.ygrid);
            deliver(cfg, format_bound(levels, cfg.format, meta), out);
            return 0;
        }
        case Command::SweepV: {
            const auto vs = linspace(cfg.vmin, cfg.vmax, cfg.vsteps);
            const SpectrumTable t = sweep_v(vs, cfg.spec, cfg.sector, cfg.ygrid);
            report_flags(t, err);
            deliver(cfg, format_spectrum(t, "v", cfg.format, meta), out);
            return 0;
        }
        case Command::SweepA: {
            const auto as = linspace(cfg.amin, cfg.amax, cfg.asteps);
            const SpectrumTable t = sweep_a(as, cfg.spec.v0, cfg.spec, cfg.sector, cfg.ygrid);
            report_flags(t, err);
            deliver(cfg, format_spectrum(t, "a", cfg.format, meta), out);
            return 0;
        }
        case Command::Verify: {
            bool all = true;
            std::string report;
            for (const auto& r : verification::run_all()) {
                all = all && r.passed;
                report += verification::format_line(r) + '\n';
            }
            deliver(cfg, report, out);
            return all ? 0 : static_cast<int>(ExitCode::VerificationFailed);
        }
    }
    return static_cast<int>(ExitCode::Usage);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = parse_cli(argc, argv);
        return run(cfg, out, err);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const InvalidSpec& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::InvalidValue);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::InvalidValue);
    }
}

}  // namespace dkp::io
