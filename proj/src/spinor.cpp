#include "dkp/spinor.hpp"

#include <cmath>

#include "dkp/errors.hpp"

namespace dkp {

namespace {
constexpr cplx I{0.0, 1.0};
}

FieldValues field_at(double x, const PotentialSpec& spec) {
    const double d = std::abs(x);
    if (d == spec.a) throw DomainError("potential has no pointwise value at x = +-a");
    if (d > spec.a) return {0.0, 0.0};
    return {-spec.b0 * spec.v0, -spec.b1 * spec.v0};
}

SpinorSample reconstruct(double x, cplx phi1, cplx dphi1, double E, const PotentialSpec& spec,
                         const SectorChoice& sector) {
    const FieldValues A = field_at(x, spec);
    const double s = sector.delta_sign();
    SpinorSample out;
    out.x = x;
    out.phi1 = phi1;
    out.dphi1 = dphi1;
    out.phi2 = (E + I * (s * A.A0)) * phi1 / spec.m;
    out.phi3 = I * (dphi1 + s * A.A1 * phi1) / spec.m;
    out.sector = sector;
    return out;
}

CurrentSample current(const SpinorSample& sample, double E, double m) {
    return {sample.x, E / m * std::norm(sample.phi1), std::imag(std::conj(sample.phi1) * sample.dphi1) / m};
}

CurrentSample vector_current(const SpinorSample& plus, const SpinorSample& minus, double E, double m) {
    if (plus.x != minus.x) throw DomainError("polarization samples must share x");
    const CurrentSample p = current(plus, E, m), q = current(minus, E, m);
    return {plus.x, p.J0 + q.J0, p.J1 + q.J1};
}

}  // namespace dkp
