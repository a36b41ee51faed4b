#include "dkp/scattering.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dkp/errors.hpp"

namespace dkp {

namespace {
constexpr cplx I{0.0, 1.0};
}

std::string_view to_string(PointFlag flag) {
    switch (flag) {
        case PointFlag::Ok: return "ok";
        case PointFlag::Degenerate: return "degenerate";
        case PointFlag::Threshold: return "threshold";
    }
    return "unknown";
}

cplx gamma_factor(cplx xi, cplx eta, double upsilon, double b1) {
    if (eta == 0.0) throw DegenerateKinematics("gamma(xi) is singular at eta = 0");
    return (upsilon * b1 + 2.0 * I * xi) / (2.0 * eta);
}

cplx f_factor(cplx xi, cplx eta, double upsilon, double b1) {
    if (eta == 0.0) throw DegenerateKinematics("f(xi) is singular at eta = 0");
    if (xi == 0.0) throw DegenerateKinematics("f(xi) is singular at xi = 0");
    return (4.0 * (xi * xi + eta * eta) + b1 * b1 * upsilon * upsilon) / (8.0 * eta * xi);
}

AmplitudeFactors amplitude_factors(cplx xi, cplx eta, double upsilon, double b1) {
    return {gamma_factor(xi, eta, upsilon, b1), f_factor(xi, eta, upsilon, b1)};
}

ScatteringResult amplitudes(double E, const PotentialSpec& spec, const SectorChoice& sector) {
    spec.validate();
    if (!(std::abs(E) > spec.m))
        throw ThresholdError("scattering amplitudes need |E| > m, got E = " + std::to_string(E));

    const Kinematics k = kinematics(E, spec);
    const double ups = spec.upsilon();
    // sigma enters only the delta-linear term (gamma); f sees b1^2
    const AmplitudeFactors fac = amplitude_factors(k.xi, k.eta, ups, sector.delta_sign() * spec.b1);

    // complex cos/sin cover the tunneling regime (imaginary eta) as well
    const cplx c2 = std::cos(2.0 * k.eta);
    const cplx s2 = std::sin(2.0 * k.eta);
    const cplx phase = std::exp(-2.0 * I * k.xi);
    const cplx denom = c2 - I * fac.f * s2;

    ScatteringResult res;
    res.E = E;
    res.xi = k.xi;
    res.eta = k.eta;
    res.t = phase / denom;
    res.r = phase * (I * fac.f - fac.gamma) * s2 / denom;
    res.R = std::norm(res.r);
    res.T = std::norm(res.t);
    return res;
}

ScatteringResult amplitudes_flagged(double E, const PotentialSpec& spec, const SectorChoice& sector) {
    try {
        return amplitudes(E, spec, sector);
    } catch (const ThresholdError&) {
        ScatteringResult res;
        res.E = E;
        res.xi = xi_of_energy(E, spec);
        res.eta = eta_of_xi(res.xi, spec.j(), spec.upsilon());
        res.flag = PointFlag::Threshold;
        return res;
    } catch (const DegenerateKinematics&) {
        ScatteringResult res;
        res.E = E;
        res.xi = xi_of_energy(E, spec);
        res.eta = eta_of_xi(res.xi, spec.j(), spec.upsilon());
        res.flag = PointFlag::Degenerate;
        return res;
    }
}

std::vector<ScatteringResult> coefficients_scan_serial(std::span<const double> energies,
                                                       const PotentialSpec& spec,
                                                       const SectorChoice& sector) {
    spec.validate();
    std::vector<ScatteringResult> out;
    out.reserve(energies.size());
    for (double E : energies) out.push_back(amplitudes_flagged(E, spec, sector));
    return out;
}

std::vector<ScatteringResult> coefficients_scan(std::span<const double> energies,
                                                const PotentialSpec& spec,
                                                const SectorChoice& sector) {
    spec.validate();
    const auto n = static_cast<std::ptrdiff_t>(energies.size());
    std::vector<ScatteringResult> out(energies.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = amplitudes_flagged(energies[i], spec, sector);
    return out;
}

std::vector<Resonance> resonances(int n_max, const PotentialSpec& spec) {
    spec.validate();
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    const double ju2 = spec.j() * spec.upsilon() * spec.upsilon();
    std::vector<Resonance> out;
    for (int n = 0; n <= n_max; ++n) {
        const double half_turns = (n + 1) * std::numbers::pi / 2.0;
        const double xi2 = half_turns * half_turns + ju2;
        if (xi2 < 0.0) continue;
        const double xi = std::sqrt(xi2);
        const double k = xi / spec.a;
        out.push_back({n, xi, std::sqrt(spec.m * spec.m + k * k)});
    }
    return out;
}

std::vector<double> resonance_energies(int n_max, const PotentialSpec& spec) {
    std::vector<double> out;
    for (const Resonance& res : resonances(n_max, spec)) out.push_back(res.E);
    return out;
}

std::vector<double> energy_grid(double emin, double emax, int steps, const PotentialSpec& spec) {
    spec.validate();
    if (!(emin < emax)) throw DomainError("energy grid needs emin < emax");
    if (steps < 2) throw DomainError("energy grid needs at least 2 steps");

    const double delta = 1e-3 * spec.m;
    const double band = spec.m + delta;
    const double spacing = (emax - emin) / (steps - 1);
    const double nudge = 1e-9 * spacing;

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double E = (i == steps - 1) ? emax : emin + i * spacing;
        if (std::abs(E) <= band) continue;
        const Kinematics k = kinematics(E, spec);
        if (k.xi == 0.0 || k.eta == 0.0) E += nudge;
        grid.push_back(E);
    }
    return grid;
}

}  // namespace dkp
