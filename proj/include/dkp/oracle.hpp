#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dkp/kinematics.hpp"

// Independent numerical routes to the quantities the closed forms produce:
// a transfer-matrix assembly of the matching conditions, direct RK4
// integration of the effective equation with exact derivative jumps, and a
// shooting method for bound states.
namespace dkp::oracle {

// Three-region problem at one energy, in physical units.
struct RegionModel {
    std::array<double, 2> boundaries;  // (-a, +a)
    cplx interior_k2;                  // E^2 - m^2 - j V0^2
    cplx exterior_k2;                  // E^2 - m^2
    DeltaStrengths jumps;
};

RegionModel region_model(double E, const PotentialSpec& spec, const SectorChoice& sector);

// phi1 and dphi1/dx sampled on an ascending grid over [-3a, 3a]. Each border
// appears twice: first with the left-limit derivative, then with the
// right-limit one.
struct WavefunctionTrace {
    std::vector<double> grid;
    std::vector<cplx> values;
    std::vector<cplx> derivatives;
    std::array<std::size_t, 2> left_border{};   // sample indices (x=-a^-, x=-a^+)
    std::array<std::size_t, 2> right_border{};  // sample indices (x=+a^-, x=+a^+)
    cplx transmitted{1.0, 0.0};                 // seeded amplitude F
};

struct Amplitudes {
    cplx r;
    cplx t;
};

Amplitudes transfer_matrix_amplitudes(double E, const PotentialSpec& spec, const SectorChoice& sector);

// Integrates phi'' = -k^2(x) phi from x = +3a (pure transmitted wave, F = 1)
// leftward to x = -3a with classical RK4. The step actually used is
// a/ceil(a/step) so that both borders fall on grid points. Requires
// 0 < step <= a/100 and |E| > m.
WavefunctionTrace integrate_effective(double E, const PotentialSpec& spec,
                                      const SectorChoice& sector, double step);

// Reads A and B from the x <= -a part of the trace and returns r = B/A,
// t = F/A.
Amplitudes extract_amplitudes(const WavefunctionTrace& trace, double xi, double a);

struct ShootingLevel {
    double y;  // dimensionless decay constant |xi|
    double E;  // positive member of the +-E pair
};

inline constexpr int default_shooting_steps_per_a = 4000;

// Wronskian phi_L phi_R' - phi_L' phi_R at x = 0 of the solutions decaying
// to the left and to the right, for trial y.
double shooting_wronskian(double y, const PotentialSpec& spec, const SectorChoice& sector,
                          int steps_per_a = default_shooting_steps_per_a);

// Scans y over (eps, a m - eps), eps = a m 1e-6, with y_grid uniform points and
// bisects every sign change of the Wronskian.
std::vector<ShootingLevel> shooting_bound_states(const PotentialSpec& spec, const SectorChoice& sector,
                                                 int y_grid,
                                                 int steps_per_a = default_shooting_steps_per_a);

// Bisection of the Wronskian on [y_lo, y_hi]; throws DomainError if the
// bracket holds no sign change.
double shooting_refine(double y_lo, double y_hi, const PotentialSpec& spec, const SectorChoice& sector,
                       int steps_per_a = default_shooting_steps_per_a);

// Real bound-state wavefunction for decay constant y, integrated leftward from
// x = +3a. At an eigenvalue it also decays to the left.
WavefunctionTrace bound_state_trace(double y, const PotentialSpec& spec, const SectorChoice& sector,
                                    int steps_per_a = default_shooting_steps_per_a);

}  // namespace dkp::oracle
