#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dkp/kinematics.hpp"

namespace dkp {

// One bound level. Particle and antiparticle energies are emitted together,
// E_plus = -E_minus exactly.
struct BoundLevel {
    double y = 0.0;  // |xi| in (0, a m)
    double E_plus = 0.0;
    double E_minus = 0.0;
    double pole_residual = 0.0;                   // |G(y)|
    std::optional<double> quantization_residual;  // only for j = -1, b1^2 = 1, where defined
    double oracle_gap = 0.0;                      // |E - E_shooting|
};

// Pole-free form of the bound-state condition for xi = i y:
//   G(y) = 8 y C(u) - 2 [4(u - y^2) + b1^2 upsilon^2] S(u),  u = eta^2 = -y^2 - j upsilon^2,
// with the entire functions C(u) = cos(2 sqrt u), S(u) = sin(2 sqrt u)/(2 sqrt u).
// Zeros of G are the poles of t. Throws DomainError for y <= 0.
double pole_function(double y, const PotentialSpec& spec, const SectorChoice& sector);

// lhs - rhs of 8 sqrt(v^2-y^2) y / (5v^2 - 8y^2) = tan(2 sqrt(v^2 - y^2)), the
// j = -1, b1^2 = 1 quantization condition. Cross-check only: throws PoleError
// near either singularity and DomainError outside 0 < y < upsilon.
double quantization_residual(double y, double upsilon);

// True when the quantization form applies to spec (j = -1, b1^2 = 1).
bool quantization_form_applies(const PotentialSpec& spec);

// Brackets sign changes of G on a uniform grid of grid_points over
// (eps, a m - eps), eps = a m 1e-6, and bisects each. Levels sorted by y.
std::vector<BoundLevel> find_bound_states(const PotentialSpec& spec, const SectorChoice& sector,
                                          int grid_points);

struct SpectrumRow {
    double param;
    int level_index;
    double E;
};

struct FlaggedParam {
    double param;
    std::string reason;
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;
    std::vector<FlaggedParam> flagged;
};

// Bound spectrum against upsilon at fixed a, m (V0 = upsilon/a). The template
// must be a j < 0 configuration. Rows come in input order, level order, and
// +E before -E.
SpectrumTable sweep_v(std::span<const double> v_values, const PotentialSpec& spec_template,
                      const SectorChoice& sector, int grid_points);
SpectrumTable sweep_v_serial(std::span<const double> v_values, const PotentialSpec& spec_template,
                             const SectorChoice& sector, int grid_points);

// Bound spectrum against a at fixed V0 (upsilon = a V0 per point).
SpectrumTable sweep_a(std::span<const double> a_values, double v0, const PotentialSpec& spec_template,
                      const SectorChoice& sector, int grid_points);
SpectrumTable sweep_a_serial(std::span<const double> a_values, double v0, const PotentialSpec& spec_template,
                             const SectorChoice& sector, int grid_points);

}  // namespace dkp
