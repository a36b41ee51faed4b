#include "dkp/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "dkp/bound_spectrum.hpp"
#include "dkp/io.hpp"
#include "dkp/oracle.hpp"
#include "dkp/scattering.hpp"
#include "dkp/spinor.hpp"

namespace dkp::verification {

namespace {

// Barrier/well reference: upsilon = 2, j = 1, b1 = 1, m = a = 1.
PotentialSpec barrier_spec() { return {1.0, 2.0, 0.0, 1.0, 1.0}; }

// Binding reference: upsilon = 2, j = -1, b1 = 1.
PotentialSpec binding_spec() { return {1.0, 2.0, std::numbers::sqrt2, 1.0, 1.0}; }

std::vector<double> uniform(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<double> two_branch_grid(int per_branch) {
    std::vector<double> g;
    g.reserve(2 * static_cast<std::size_t>(per_branch));
    for (double E : uniform(-10.0, -1.001, per_branch)) g.push_back(E);
    for (double E : uniform(1.001, 10.0, per_branch)) g.push_back(E);
    return g;
}

std::string sci(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

double amp_gap(const oracle::Amplitudes& a, const ScatteringResult& b) {
    return std::max(std::abs(a.r - b.r), std::abs(a.t - b.t));
}

constexpr int kBoundGrid = 2000;

}  // namespace

CheckResult check_unitarity() {
    const auto grid = two_branch_grid(1000);
    const auto res = coefficients_scan(grid, barrier_spec(), SectorChoice::scalar());
    double worst = 0.0;
    bool flagged = false;
    for (const auto& r : res) {
        if (r.flag != PointFlag::Ok) flagged = true;
        worst = std::max(worst, std::abs(r.R + r.T - 1.0));
    }
    return {1, "unitarity R+T=1", !flagged && worst < 1e-12, "max |R+T-1| = " + sci(worst) + " over 2000 points"};
}

CheckResult check_resonances() {
    const PotentialSpec spec = barrier_spec();
    const auto energies = resonance_energies(5, spec);
    bool ok = energies.size() == 6;
    double worst = 0.0;
    for (std::size_t n = 0; n < energies.size(); ++n) {
        const double half_turns = (n + 1) * std::numbers::pi / 2.0;
        const double expected = std::sqrt(1.0 + half_turns * half_turns + 4.0);
        ok = ok && std::abs(energies[n] - expected) < 1e-12;
        const double T = amplitudes(energies[n], spec, SectorChoice::scalar()).T;
        worst = std::max(worst, 1.0 - T);
    }
    ok = ok && worst <= 1e-10 && std::abs(energies.front() - 2.7327) < 5e-5;
    return {2, "transmission resonances T(E_N)=1", ok,
            "E_0 = " + io::format_number(energies.front()) + ", max 1-T = " + sci(worst)};
}

CheckResult check_symmetries() {
    const auto pos = uniform(1.001, 10.0, 1000);
    std::vector<double> neg(pos.size());
    std::transform(pos.begin(), pos.end(), neg.begin(), [](double e) { return -e; });
    const PotentialSpec spec = barrier_spec();
    PotentialSpec flipped = spec;
    flipped.b1 = -spec.b1;

    const auto s = coefficients_scan(pos, spec, SectorChoice::scalar());
    const auto sn = coefficients_scan(neg, spec, SectorChoice::scalar());
    const auto sf = coefficients_scan(pos, flipped, SectorChoice::scalar());
    const auto vp = coefficients_scan(pos, spec, SectorChoice::vector(1));
    const auto vm = coefficients_scan(pos, spec, SectorChoice::vector(-1));

    double parity = 0.0, b1_sign = 0.0, sector = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        parity = std::max({parity, std::abs(s[i].T - sn[i].T), std::abs(s[i].R - sn[i].R)});
        b1_sign = std::max(b1_sign, std::abs(s[i].T - sf[i].T));
        sector = std::max({sector, std::abs(s[i].T - vp[i].T), std::abs(s[i].R - vp[i].R),
                           std::abs(s[i].T - vm[i].T), std::abs(s[i].R - vm[i].R)});
    }
    const bool ok = parity == 0.0 && b1_sign < 1e-14 && sector < 1e-14;
    return {3, "E-parity, b1-sign and sector symmetry", ok,
            "|dT(E,-E)| = " + sci(parity) + ", |dT(b1)| = " + sci(b1_sign) + ", |d(scalar,vector)| = " + sci(sector)};
}

CheckResult check_oracle_equivalence() {
    const std::vector<PotentialSpec> specs = {
        {1.0, 2.0, 0.0, 1.0, 1.0},
        {1.0, 2.0, 0.0, -1.0, 1.0},
        {1.0, 2.0, std::numbers::sqrt2, 1.0, 1.0},
        {1.0, 2.0, std::numbers::sqrt2, -1.0, 1.0},
    };
    const auto grid = uniform(1.001, 10.0, 100);
    double tm = 0.0, ode = 0.0, coarse = 0.0, fine = 0.0;
    for (const PotentialSpec& spec : specs) {
        for (double E : grid) {
            const ScatteringResult cf = amplitudes(E, spec, SectorChoice::scalar());
            tm = std::max(tm, amp_gap(oracle::transfer_matrix_amplitudes(E, spec, SectorChoice::scalar()), cf));
            auto extracted = [&](double step) {
                const auto trace = oracle::integrate_effective(E, spec, SectorChoice::scalar(), step);
                return oracle::extract_amplitudes(trace, cf.xi.real(), spec.a);
            };
            ode = std::max(ode, amp_gap(extracted(1e-4 * spec.a), cf));
            coarse = std::max(coarse, amp_gap(extracted(spec.a / 100.0), cf));
            fine = std::max(fine, amp_gap(extracted(spec.a / 200.0), cf));
        }
    }
    const double order = std::log2(coarse / fine);
    const bool ok = tm < 1e-12 && ode < 1e-8 && order >= 3.5;
    return {4, "closed form vs transfer matrix and ODE oracles", ok,
            "transfer-matrix gap " + sci(tm) + ", ODE gap " + sci(ode) + " at step 1e-4, order " + sci(order)};
}

CheckResult check_bound_spectrum() {
    const PotentialSpec spec = binding_spec();
    const auto levels = find_bound_states(spec, SectorChoice::scalar(), kBoundGrid);
    const auto shot = oracle::shooting_bound_states(spec, SectorChoice::scalar(), 400);
    bool ok = levels.size() == 1 && shot.size() == 1;
    std::string detail = std::to_string(levels.size()) + " level(s), " + std::to_string(shot.size()) + " by shooting";
    if (ok) {
        const BoundLevel& l = levels.front();
        const double gap = std::abs(l.E_plus - shot.front().E);
        ok = gap < 1e-8 && l.oracle_gap < 1e-8 && l.E_plus == -l.E_minus && std::abs(l.E_plus - 0.699) < 5e-3;
        detail += "; E = +-" + io::format_number(l.E_plus) + ", y = " + io::format_number(l.y) +
                  ", shooting gap " + sci(gap);
    }
    return {5, "bound spectrum at upsilon=2, j=-1", ok, detail};
}

CheckResult check_ssw_symmetry() {
    const PotentialSpec tmpl = binding_spec();
    const auto vs = uniform(0.5, 5.0, 91);
    const auto as = uniform(0.001, 0.2, 200);
    const SpectrumTable v_sweep = sweep_v(vs, tmpl, SectorChoice::scalar(), kBoundGrid);
    const SpectrumTable a_sweep = sweep_a(as, 50.0 * tmpl.m, tmpl, SectorChoice::scalar(), kBoundGrid);

    auto symmetric = [&](const SpectrumTable& t) {
        std::map<double, std::vector<double>> by_param;
        for (const SpectrumRow& r : t.rows) {
            if (!(std::abs(r.E) < tmpl.m)) return false;
            by_param[r.param].push_back(r.E);
        }
        for (auto& [p, es] : by_param) {
            std::vector<double> mirrored(es.size());
            std::transform(es.begin(), es.end(), mirrored.begin(), [](double e) { return -e; });
            std::sort(es.begin(), es.end());
            std::sort(mirrored.begin(), mirrored.end());
            if (es != mirrored) return false;
        }
        return t.flagged.empty();
    };
    const bool ok = symmetric(v_sweep) && symmetric(a_sweep);
    return {6, "SSW E -> -E symmetry of swept spectra", ok,
            std::to_string(v_sweep.rows.size()) + " upsilon-sweep rows, " + std::to_string(a_sweep.rows.size()) +
                " a-sweep rows"};
}

CheckResult check_no_binding() {
    PotentialSpec j_pos = barrier_spec();                // b0 = 0, b1 = 1
    PotentialSpec j_zero{1.0, 2.0, 1.0, 1.0, 1.0};       // b0 = b1 = 1
    PotentialSpec free_case = binding_spec();
    free_case.v0 = 0.0;
    const auto n_pos = find_bound_states(j_pos, SectorChoice::scalar(), kBoundGrid).size();
    const auto n_zero = find_bound_states(j_zero, SectorChoice::scalar(), kBoundGrid).size();
    const auto n_free = find_bound_states(free_case, SectorChoice::scalar(), kBoundGrid).size();
    const bool ok = n_pos == 0 && n_zero == 0 && n_free == 0;
    return {7, "no binding for j>=0 and upsilon=0", ok,
            "levels: (b0=0,b1=1) " + std::to_string(n_pos) + ", (b0=b1=1) " + std::to_string(n_zero) +
                ", upsilon=0 " + std::to_string(n_free)};
}

CheckResult check_quantization_equivalence() {
    const PotentialSpec tmpl = binding_spec();
    double worst = 0.0;
    int checked = 0;
    std::vector<double> vs = uniform(0.5, 5.0, 91);
    vs.push_back(2.0);
    for (double v : vs) {
        PotentialSpec spec = tmpl;
        spec.v0 = v / spec.a;
        for (const BoundLevel& l : find_bound_states(spec, SectorChoice::scalar(), kBoundGrid)) {
            if (!l.quantization_residual) continue;
            worst = std::max(worst, *l.quantization_residual);
            ++checked;
        }
    }
    return {8, "quantization-condition equivalence", checked > 0 && worst < 1e-10,
            std::to_string(checked) + " roots, max residual " + sci(worst)};
}

CheckResult check_limits() {
    const PotentialSpec spec = barrier_spec();
    const double t_threshold = amplitudes(spec.m + 1e-6, spec, SectorChoice::scalar()).T;
    const double t_high = amplitudes(50.0, spec, SectorChoice::scalar()).T;
    const double t_high_neg = amplitudes(-50.0, spec, SectorChoice::scalar()).T;
    const bool ok = t_threshold < 1e-3 && t_high > 0.999 && t_high_neg > 0.999;
    return {9, "threshold and high-energy limits", ok,
            "T(m+1e-6) = " + sci(t_threshold) + ", T(+-50) = " + io::format_number(t_high)};
}

CheckResult check_current_conservation() {
    const PotentialSpec spec = barrier_spec();
    double worst = 0.0;
    for (double E : {1.2, 2.0, 5.0, -3.0}) {
        const auto tr = oracle::integrate_effective(E, spec, SectorChoice::scalar(), 1e-4 * spec.a);
        const double xi = xi_of_energy(E, spec).real();
        const double expected = xi / (spec.a * spec.m) * std::norm(tr.transmitted);
        for (std::size_t i = 0; i < tr.grid.size(); ++i) {
            const SpinorSample s{tr.grid[i], tr.values[i], tr.derivatives[i], {}, {}, SectorChoice::scalar()};
            worst = std::max(worst, std::abs(current(s, E, spec.m).J1 - expected));
        }
    }
    const PotentialSpec bspec = binding_spec();
    const auto levels = find_bound_states(bspec, SectorChoice::scalar(), kBoundGrid);
    double bound_j1 = levels.empty() ? 1.0 : 0.0;
    for (const BoundLevel& l : levels) {
        const auto tr = oracle::bound_state_trace(l.y, bspec, SectorChoice::scalar());
        for (std::size_t i = 0; i < tr.grid.size(); ++i) {
            const SpinorSample s{tr.grid[i], tr.values[i], tr.derivatives[i], {}, {}, SectorChoice::scalar()};
            bound_j1 = std::max(bound_j1, std::abs(current(s, l.E_plus, bspec.m).J1));
        }
    }
    const bool ok = worst < 1e-8 && bound_j1 == 0.0;
    return {10, "current conservation on ODE traces", ok,
            "scattering max |J1 - J1(x>a)| = " + sci(worst) + ", bound max |J1| = " + sci(bound_j1)};
}

std::vector<CheckResult> run_all() {
    const std::vector<std::function<CheckResult()>> checks = {
        check_unitarity,          check_resonances,   check_symmetries,
        check_oracle_equivalence, check_bound_spectrum, check_ssw_symmetry,
        check_no_binding,         check_quantization_equivalence,
        check_limits,             check_current_conservation,
    };
    std::vector<CheckResult> out;
    for (const auto& c : checks) out.push_back(c());
    return out;
}

std::string format_line(const CheckResult& r) {
    return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

}  // namespace dkp::verification
