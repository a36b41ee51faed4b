#include "dkp/bound_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bisect.hpp"
#include "dkp/errors.hpp"
#include "dkp/oracle.hpp"

namespace dkp {

namespace {

struct EntirePair {
    double C;  // cos(2 sqrt u)
    double S;  // sin(2 sqrt u) / (2 sqrt u)
};

EntirePair entire_pair(double u) {
    if (u > 0.0) {
        const double z = 2.0 * std::sqrt(u);
        return {std::cos(z), std::sin(z) / z};
    }
    if (u < 0.0) {
        const double z = 2.0 * std::sqrt(-u);
        return {std::cosh(z), std::sinh(z) / z};
    }
    return {1.0, 1.0};
}

double energy_of_y(double y, const PotentialSpec& spec) {
    const double k = y / spec.a;
    return std::sqrt(std::max(0.0, spec.m * spec.m - k * k));
}

std::optional<double> quantization_check(double y, const PotentialSpec& spec) {
    if (!quantization_form_applies(spec)) return std::nullopt;
    try {
        return std::abs(quantization_residual(y, std::abs(spec.upsilon())));
    } catch (const Error&) {
        return std::nullopt;
    }
}

double oracle_gap(double y, double dy, double lo_limit, double hi_limit, const PotentialSpec& spec,
                  const SectorChoice& sector) {
    const double E = energy_of_y(y, spec);
    for (double width : {dy, 4.0 * dy}) {
        try {
            const double y_shoot = oracle::shooting_refine(std::max(lo_limit, y - width),
                                                           std::min(hi_limit, y + width), spec, sector);
            return std::abs(E - energy_of_y(y_shoot, spec));
        } catch (const DomainError&) {
        }
    }
    return std::numeric_limits<double>::infinity();
}

// Per-parameter evaluation shared by the serial and OpenMP sweeps.
struct SweepPoint {
    std::vector<BoundLevel> levels;
    std::string error;
};

SweepPoint sweep_point(const PotentialSpec& spec, const SectorChoice& sector, int grid_points) {
    SweepPoint p;
    try {
        p.levels = find_bound_states(spec, sector, grid_points);
    } catch (const Error& e) {
        p.error = e.what();
    }
    return p;
}

SpectrumTable assemble(std::span<const double> params, const std::vector<SweepPoint>& points) {
    SpectrumTable table;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!points[i].error.empty()) {
            table.flagged.push_back({params[i], points[i].error});
            continue;
        }
        int index = 0;
        for (const BoundLevel& lvl : points[i].levels) {
            table.rows.push_back({params[i], index, lvl.E_plus});
            table.rows.push_back({params[i], index, lvl.E_minus});
            ++index;
        }
    }
    return table;
}

void require_binding_config(const PotentialSpec& spec) {
    spec.validate();
    if (!(spec.j() < 0.0))
        throw InvalidSpec("bound-state sweeps need a j = b1^2 - b0^2 < 0 configuration");
}

PotentialSpec with_upsilon(const PotentialSpec& tmpl, double v) {
    PotentialSpec s = tmpl;
    s.v0 = v / tmpl.a;
    return s;
}

PotentialSpec with_half_width(const PotentialSpec& tmpl, double a, double v0) {
    PotentialSpec s = tmpl;
    s.a = a;
    s.v0 = v0;
    return s;
}

}  // namespace

double pole_function(double y, const PotentialSpec& spec, const SectorChoice&) {
    if (!(y > 0.0)) throw DomainError("pole_function needs y > 0");
    // b1 enters only squared, so the sector drops out
    const double ups = spec.upsilon();
    const double u = -y * y - spec.j() * ups * ups;
    const EntirePair cs = entire_pair(u);
    return 8.0 * y * cs.C - 2.0 * (4.0 * (u - y * y) + spec.b1 * spec.b1 * ups * ups) * cs.S;
}

bool quantization_form_applies(const PotentialSpec& spec) {
    return std::abs(spec.j() + 1.0) < 1e-12 && std::abs(spec.b1 * spec.b1 - 1.0) < 1e-12;
}

double quantization_residual(double y, double upsilon) {
    if (!(y > 0.0) || !(y < upsilon))
        throw DomainError("quantization residual needs 0 < y < upsilon");
    const double v2 = upsilon * upsilon;
    const double root = std::sqrt(v2 - y * y);
    const double denom = 5.0 * v2 - 8.0 * y * y;
    if (std::abs(denom) <= 1e-10 * v2) throw PoleError("quantization condition is singular at 5v^2 = 8y^2");
    const double arg = 2.0 * root;
    if (std::abs(std::cos(arg)) <= 1e-10) throw PoleError("tan is singular at this y");
    return 8.0 * root * y / denom - std::tan(arg);
}

std::vector<BoundLevel> find_bound_states(const PotentialSpec& spec, const SectorChoice& sector,
                                          int grid_points) {
    spec.validate();
    if (grid_points < 100) throw DomainError("find_bound_states needs grid_points >= 100");

    const double am = spec.a * spec.m;
    const double eps = am * 1e-6;
    const double lo_limit = eps, hi_limit = am - eps;
    const double dy = (hi_limit - lo_limit) / (grid_points - 1);

    auto G = [&](double y) { return pole_function(y, spec, sector); };

    std::vector<double> ys(static_cast<std::size_t>(grid_points)), gs(ys.size());
    for (int i = 0; i < grid_points; ++i) {
        ys[i] = (i == grid_points - 1) ? hi_limit : lo_limit + i * dy;
        gs[i] = G(ys[i]);
    }

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        if (gs[i] == 0.0) {
            roots.push_back(ys[i]);
            continue;
        }
        if (gs[i + 1] != 0.0 && std::signbit(gs[i]) != std::signbit(gs[i + 1]))
            roots.push_back(detail::bisect(G, ys[i], ys[i + 1], gs[i]));
    }
    if (gs.back() == 0.0) roots.push_back(ys.back());

    std::vector<BoundLevel> levels;
    levels.reserve(roots.size());
    for (double y : roots) {
        BoundLevel lvl;
        lvl.y = y;
        lvl.E_plus = energy_of_y(y, spec);
        lvl.E_minus = -lvl.E_plus;
        lvl.pole_residual = std::abs(G(y));
        lvl.quantization_residual = quantization_check(y, spec);
        lvl.oracle_gap = oracle_gap(y, dy, lo_limit, hi_limit, spec, sector);
        levels.push_back(lvl);
    }
    return levels;
}

SpectrumTable sweep_v_serial(std::span<const double> v_values, const PotentialSpec& spec_template,
                             const SectorChoice& sector, int grid_points) {
    require_binding_config(spec_template);
    std::vector<SweepPoint> points(v_values.size());
    for (std::size_t i = 0; i < v_values.size(); ++i) {
        if (!(v_values[i] > 0.0)) {
            points[i].error = "upsilon must be positive";
            continue;
        }
        points[i] = sweep_point(with_upsilon(spec_template, v_values[i]), sector, grid_points);
    }
    return assemble(v_values, points);
}

SpectrumTable sweep_v(std::span<const double> v_values, const PotentialSpec& spec_template,
                      const SectorChoice& sector, int grid_points) {
    require_binding_config(spec_template);
    std::vector<SweepPoint> points(v_values.size());
    const auto n = static_cast<std::ptrdiff_t>(v_values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (!(v_values[i] > 0.0)) {
            points[i].error = "upsilon must be positive";
            continue;
        }
        points[i] = sweep_point(with_upsilon(spec_template, v_values[i]), sector, grid_points);
    }
    return assemble(v_values, points);
}

SpectrumTable sweep_a_serial(std::span<const double> a_values, double v0, const PotentialSpec& spec_template,
                             const SectorChoice& sector, int grid_points) {
    require_binding_config(spec_template);
    std::vector<SweepPoint> points(a_values.size());
    for (std::size_t i = 0; i < a_values.size(); ++i) {
        if (!(a_values[i] > 0.0)) {
            points[i].error = "half-width a must be positive";
            continue;
        }
        points[i] = sweep_point(with_half_width(spec_template, a_values[i], v0), sector, grid_points);
    }
    return assemble(a_values, points);
}

SpectrumTable sweep_a(std::span<const double> a_values, double v0, const PotentialSpec& spec_template,
                      const SectorChoice& sector, int grid_points) {
    require_binding_config(spec_template);
    std::vector<SweepPoint> points(a_values.size());
    const auto n = static_cast<std::ptrdiff_t>(a_values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (!(a_values[i] > 0.0)) {
            points[i].error = "half-width a must be positive";
            continue;
        }
        points[i] = sweep_point(with_half_width(spec_template, a_values[i], v0), sector, grid_points);
    }
    return assemble(a_values, points);
}

}  // namespace dkp
