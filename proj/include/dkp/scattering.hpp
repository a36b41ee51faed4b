#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dkp/kinematics.hpp"

namespace dkp {

struct AmplitudeFactors {
    cplx gamma;
    cplx f;
};

enum class PointFlag { Ok, Degenerate, Threshold };

std::string_view to_string(PointFlag flag);

// One energy of a scattering calculation. R and T are |r|^2 and |t|^2; they
// are only meaningful when flag == Ok.
struct ScatteringResult {
    double E = 0.0;
    cplx xi;
    cplx eta;
    cplx r;
    cplx t;
    double R = 0.0;
    double T = 0.0;
    PointFlag flag = PointFlag::Ok;
};

// (upsilon*b1 + 2i xi) / (2 eta)
cplx gamma_factor(cplx xi, cplx eta, double upsilon, double b1);

// (4(xi^2 + eta^2) + b1^2 upsilon^2) / (8 eta xi)
cplx f_factor(cplx xi, cplx eta, double upsilon, double b1);

AmplitudeFactors amplitude_factors(cplx xi, cplx eta, double upsilon, double b1);

// Closed-form reflection/transmission amplitudes for a boson incident from the
// left. Throws ThresholdError for |E| <= m and DegenerateKinematics when eta or
// xi vanishes exactly.
ScatteringResult amplitudes(double E, const PotentialSpec& spec, const SectorChoice& sector);

// Same as amplitudes() but never throws: failures are recorded in the flag.
ScatteringResult amplitudes_flagged(double E, const PotentialSpec& spec, const SectorChoice& sector);

// Evaluates every grid point in input order. The OpenMP version and the serial
// reference produce identical results.
std::vector<ScatteringResult> coefficients_scan(std::span<const double> energies,
                                                const PotentialSpec& spec,
                                                const SectorChoice& sector);
std::vector<ScatteringResult> coefficients_scan_serial(std::span<const double> energies,
                                                       const PotentialSpec& spec,
                                                       const SectorChoice& sector);

struct Resonance {
    int order;  // N, with 2 eta = (N + 1) pi
    double xi;
    double E;   // positive branch; -E resonates as well
};

// Transmission resonances (sin 2eta = 0) for N = 0..n_max, skipping orders
// whose xi_N^2 would be negative. Strictly increasing in E.
std::vector<Resonance> resonances(int n_max, const PotentialSpec& spec);
std::vector<double> resonance_energies(int n_max, const PotentialSpec& spec);

// Uniform grid on [emin, emax] with the threshold band [-m-delta, m+delta]
// (delta = 1e-3 m) removed. Points where eta or xi would vanish exactly are
// nudged upward by 1e-9 of the grid spacing.
std::vector<double> energy_grid(double emin, double emax, int steps, const PotentialSpec& spec);

}  // namespace dkp
