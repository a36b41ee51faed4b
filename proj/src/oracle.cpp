#include "dkp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bisect.hpp"
#include "dkp/errors.hpp"

namespace dkp::oracle {

namespace {

constexpr cplx I{0.0, 1.0};

// Fixed-step RK4 for phi'' = -k2 phi with constant k2, state (phi, dphi/ds).
template <class T>
struct Rk4 {
    T k2;
    double h;

    void step(T& phi, T& dphi) const {
        const T k1p = dphi, k1d = -k2 * phi;
        const T p2 = phi + 0.5 * h * k1p, d2 = dphi + 0.5 * h * k1d;
        const T k2p = d2, k2d = -k2 * p2;
        const T p3 = phi + 0.5 * h * k2p, d3 = dphi + 0.5 * h * k2d;
        const T k3p = d3, k3d = -k2 * p3;
        const T p4 = phi + h * k3p, d4 = dphi + h * k3d;
        const T k4p = d4, k4d = -k2 * p4;
        phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dphi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
};

// 2x2 complex matrix, row major.
struct Mat2 {
    cplx m00, m01, m10, m11;

    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
};

// Maps plane-wave coefficients (right-mover, left-mover) to (phi, dphi/ds) at s.
Mat2 plane_wave_basis(cplx k, double s) {
    const cplx ep = std::exp(I * k * s), em = std::exp(-I * k * s);
    return {ep, em, I * k * ep, -I * k * em};
}

Mat2 plane_wave_basis_inverse(cplx k, double s) {
    const cplx ep = std::exp(I * k * s), em = std::exp(-I * k * s);
    const cplx ik = I * k;
    return {0.5 * em, 0.5 * em / ik, 0.5 * ep, -0.5 * ep / ik};
}

Mat2 jump(double c) { return {1.0, 0.0, c, 1.0}; }

int steps_per_unit(double a, double step) {
    if (!(step > 0.0) || step > a / 100.0 * (1.0 + 1e-12))
        throw DomainError("integration step must satisfy 0 < step <= a/100, got " + std::to_string(step));
    return static_cast<int>(std::ceil(a / step - 1e-9));
}

void check_y(double y) {
    if (!(y > 0.0)) throw DomainError("decay constant y must be positive");
}

// Integrates from s = +3 down to s = -3, recording every sample, and turns
// the result into an ascending physical-unit trace.
template <class T>
WavefunctionTrace sweep_leftward(T phi, T dphi, T k2_out, T k2_in, double c_minus, double c_plus,
                                 int n, double a) {
    const double ds = 1.0 / n;
    std::vector<double> s;
    std::vector<cplx> val, der;
    const std::size_t total = static_cast<std::size_t>(6 * n + 3);
    s.reserve(total);
    val.reserve(total);
    der.reserve(total);
    auto record = [&](double si) {
        s.push_back(si);
        val.emplace_back(phi);
        der.emplace_back(dphi);
    };

    auto segment = [&](int start_index, T k2) {
        const Rk4<T> rk{k2, -ds};
        for (int i = 1; i <= 2 * n; ++i) {
            rk.step(phi, dphi);
            record(static_cast<double>(start_index - i) / n);
        }
    };

    record(3.0);
    segment(3 * n, k2_out);  // ends at s = 1 (right limit)
    dphi -= c_plus * phi;
    record(1.0);
    segment(n, k2_in);  // ends at s = -1 (right limit)
    dphi -= c_minus * phi;
    record(-1.0);
    segment(-n, k2_out);

    WavefunctionTrace tr;
    const std::size_t count = s.size();
    tr.grid.resize(count);
    tr.values.resize(count);
    tr.derivatives.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t src = count - 1 - i;
        tr.grid[i] = a * s[src];
        tr.values[i] = val[src];
        tr.derivatives[i] = der[src] / a;
    }
    // descending layout: [0, 2n] outer right, 2n+1 is x=+a^-, ...,
    // 4n+1 is x=-a^+, 4n+2 is x=-a^-.
    const std::size_t right_minus_desc = static_cast<std::size_t>(2 * n + 1);
    const std::size_t left_minus_desc = static_cast<std::size_t>(4 * n + 2);
    tr.left_border = {count - 1 - left_minus_desc, count - left_minus_desc};
    tr.right_border = {count - 1 - right_minus_desc, count - right_minus_desc};
    return tr;
}

}  // namespace

RegionModel region_model(double E, const PotentialSpec& spec, const SectorChoice& sector) {
    spec.validate();
    const double ext = E * E - spec.m * spec.m;
    return {{-spec.a, spec.a}, cplx(ext - spec.j() * spec.v0 * spec.v0, 0.0), cplx(ext, 0.0),
            delta_strengths(spec, sector)};
}

Amplitudes transfer_matrix_amplitudes(double E, const PotentialSpec& spec, const SectorChoice& sector) {
    spec.validate();
    if (!(std::abs(E) > spec.m)) throw ThresholdError("transfer matrix needs |E| > m");
    const Kinematics k = kinematics(E, spec);
    if (k.xi == 0.0 || k.eta == 0.0)
        throw DegenerateKinematics("transfer matrix is singular at eta = 0 or xi = 0");

    const DeltaStrengths g = delta_strengths(spec, sector);
    // jumps of dphi/ds = a dphi/dx
    const double c_minus = g.g_minus * spec.a, c_plus = g.g_plus * spec.a;

    const Mat2 total = plane_wave_basis_inverse(k.xi, 1.0) * jump(c_plus) *
                       plane_wave_basis(k.eta, 1.0) * plane_wave_basis_inverse(k.eta, -1.0) *
                       jump(c_minus) * plane_wave_basis(k.xi, -1.0);

    // (F, 0) = total (1, r). Every factor has unit determinant, so
    // F = det/m11 = 1/m11; forming m00 + m01 r instead cancels catastrophically
    // when eta is deep imaginary.
    if (total.m11 == 0.0) throw DegenerateKinematics("transfer matrix has no scattering solution");
    return {-total.m10 / total.m11, 1.0 / total.m11};
}

WavefunctionTrace integrate_effective(double E, const PotentialSpec& spec, const SectorChoice& sector,
                                      double step) {
    spec.validate();
    if (!(std::abs(E) > spec.m))
        throw ThresholdError("integrate_effective handles scattering energies only; use shooting for |E| < m");
    const int n = steps_per_unit(spec.a, step);
    const Kinematics k = kinematics(E, spec);
    const DeltaStrengths g = delta_strengths(spec, sector);

    const cplx phi0 = std::exp(I * k.xi * 3.0);
    return sweep_leftward<cplx>(phi0, I * k.xi * phi0, k.xi * k.xi, k.eta * k.eta, g.g_minus * spec.a,
                                g.g_plus * spec.a, n, spec.a);
}

Amplitudes extract_amplitudes(const WavefunctionTrace& trace, double xi, double a) {
    if (!(a > 0.0)) throw DomainError("a must be positive");
    if (!(xi > 1e-8)) throw IllConditioned("plane-wave projection is ill-conditioned for xi ~ 0");
    const std::size_t count = trace.left_border[0] + 1;
    if (count < 2 || count > trace.grid.size())
        throw IllConditioned("trace has fewer than two samples left of x = -a");

    const double k = xi / a;
    const cplx ik = I * k;
    cplx A = 0.0, B = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = trace.grid[i];
        const cplx scaled = trace.derivatives[i] / ik;
        A += 0.5 * std::exp(-ik * x) * (trace.values[i] + scaled);
        B += 0.5 * std::exp(ik * x) * (trace.values[i] - scaled);
    }
    A /= static_cast<double>(count);
    B /= static_cast<double>(count);
    if (A == 0.0) throw IllConditioned("incident amplitude vanished");
    return {B / A, trace.transmitted / A};
}

double shooting_wronskian(double y, const PotentialSpec& spec, const SectorChoice& sector, int steps_per_a) {
    check_y(y);
    if (steps_per_a < 100) throw DomainError("shooting needs at least 100 steps per half-width");
    const int n = steps_per_a;
    const double ds = 1.0 / n;
    const double k2_out = -y * y;
    const double k2_in = -y * y - spec.j() * spec.upsilon() * spec.upsilon();
    const DeltaStrengths g = delta_strengths(spec, sector);
    const double c_minus = g.g_minus * spec.a, c_plus = g.g_plus * spec.a;

    double pl = 1.0, dl = y;
    {
        const Rk4<double> out{k2_out, ds}, in{k2_in, ds};
        for (int i = 0; i < 2 * n; ++i) out.step(pl, dl);
        dl += c_minus * pl;
        for (int i = 0; i < n; ++i) in.step(pl, dl);
    }
    double pr = 1.0, dr = -y;
    {
        const Rk4<double> out{k2_out, -ds}, in{k2_in, -ds};
        for (int i = 0; i < 2 * n; ++i) out.step(pr, dr);
        dr -= c_plus * pr;
        for (int i = 0; i < n; ++i) in.step(pr, dr);
    }
    return pl * dr - dl * pr;
}

double shooting_refine(double y_lo, double y_hi, const PotentialSpec& spec, const SectorChoice& sector,
                       int steps_per_a) {
    check_y(y_lo);
    const double w_lo = shooting_wronskian(y_lo, spec, sector, steps_per_a);
    const double w_hi = shooting_wronskian(y_hi, spec, sector, steps_per_a);
    if (w_lo != 0.0 && w_hi != 0.0 && std::signbit(w_lo) == std::signbit(w_hi))
        throw DomainError("shooting bracket holds no sign change");
    if (w_hi == 0.0) return y_hi;
    return detail::bisect([&](double y) { return shooting_wronskian(y, spec, sector, steps_per_a); }, y_lo,
                          y_hi, w_lo);
}

std::vector<ShootingLevel> shooting_bound_states(const PotentialSpec& spec, const SectorChoice& sector,
                                                 int y_grid, int steps_per_a) {
    spec.validate();
    if (y_grid < 2) throw DomainError("shooting scan needs at least 2 grid points");
    const double am = spec.a * spec.m;
    const double eps = am * 1e-6;
    const double dy = (am - 2.0 * eps) / (y_grid - 1);

    std::vector<double> ys(static_cast<std::size_t>(y_grid)), ws(ys.size());
    for (int i = 0; i < y_grid; ++i) {
        ys[i] = (i == y_grid - 1) ? am - eps : eps + i * dy;
        ws[i] = shooting_wronskian(ys[i], spec, sector, steps_per_a);
    }

    std::vector<ShootingLevel> out;
    auto push = [&](double y) {
        const double k = y / spec.a;
        out.push_back({y, std::sqrt(std::max(0.0, spec.m * spec.m - k * k))});
    };
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        if (ws[i] == 0.0) {
            push(ys[i]);
            continue;
        }
        if (ws[i + 1] != 0.0 && std::signbit(ws[i]) != std::signbit(ws[i + 1]))
            push(detail::bisect([&](double y) { return shooting_wronskian(y, spec, sector, steps_per_a); },
                                ys[i], ys[i + 1], ws[i]));
    }
    if (ws.back() == 0.0) push(ys.back());
    return out;
}

WavefunctionTrace bound_state_trace(double y, const PotentialSpec& spec, const SectorChoice& sector,
                                    int steps_per_a) {
    spec.validate();
    check_y(y);
    if (steps_per_a < 100) throw DomainError("bound-state trace needs at least 100 steps per half-width");
    const DeltaStrengths g = delta_strengths(spec, sector);
    const double k2_in = -y * y - spec.j() * spec.upsilon() * spec.upsilon();
    WavefunctionTrace tr = sweep_leftward<double>(1.0, -y, -y * y, k2_in, g.g_minus * spec.a,
                                                  g.g_plus * spec.a, steps_per_a, spec.a);
    tr.transmitted = 0.0;
    return tr;
}

}  // namespace dkp::oracle
