#include "dkp/kinematics.hpp"

#include <cmath>
#include <string>

#include "dkp/errors.hpp"

namespace dkp {

void PotentialSpec::validate() const {
    if (!std::isfinite(a) || !std::isfinite(v0) || !std::isfinite(b0) ||
        !std::isfinite(b1) || !std::isfinite(m))
        throw InvalidSpec("potential parameters must be finite");
    if (!(a > 0.0)) throw InvalidSpec("half-width a must be positive, got " + std::to_string(a));
    if (!(m > 0.0)) throw InvalidSpec("mass m must be positive, got " + std::to_string(m));
}

SectorChoice SectorChoice::vector(int sigma) {
    if (sigma != 1 && sigma != -1)
        throw InvalidSpec("polarization sigma must be +1 or -1, got " + std::to_string(sigma));
    return SectorChoice(SectorKind::Vector, sigma);
}

DerivedParams derived_params(const PotentialSpec& spec) {
    return {spec.j(), spec.upsilon()};
}

cplx principal_sqrt(double radicand) {
    if (radicand >= 0.0) return {std::sqrt(radicand), 0.0};
    return {0.0, std::sqrt(-radicand)};
}

cplx xi_of_energy(double E, const PotentialSpec& spec) {
    // E enters only through E^2, so xi(E) == xi(-E) bit for bit
    const double e2 = E * E;
    const double m2 = spec.m * spec.m;
    if (e2 >= m2) return {spec.a * std::sqrt(e2 - m2), 0.0};
    return {0.0, spec.a * std::sqrt(m2 - e2)};
}

cplx eta_of_xi(cplx xi, double j, double upsilon) {
    // xi is either real or purely imaginary, so xi^2 is real; taking the real
    // part avoids a signed-zero imaginary part flipping the branch.
    const cplx xi2 = xi * xi;
    if (xi.real() == 0.0 || xi.imag() == 0.0)
        return principal_sqrt(xi2.real() - j * upsilon * upsilon);
    cplx root = std::sqrt(xi2 - j * upsilon * upsilon);
    if (root.real() == 0.0 && root.imag() < 0.0) root = -root;
    return root;
}

Kinematics kinematics(double E, const PotentialSpec& spec) {
    Kinematics k;
    k.E = E;
    k.xi = xi_of_energy(E, spec);
    k.eta = eta_of_xi(k.xi, spec.j(), spec.upsilon());
    k.regime = (std::abs(E) >= spec.m) ? Regime::Scattering : Regime::Bound;
    return k;
}

double group_velocity(cplx xi, const PotentialSpec& spec, int direction) {
    if (xi.imag() != 0.0)
        throw DomainError("group velocity is defined for real xi only (scattering regime)");
    if (direction != 1 && direction != -1)
        throw DomainError("direction must be +1 or -1");
    const double k = xi.real() / spec.a;
    // k/sqrt(k^2+m^2) written to stay finite for huge k
    const double v = k / std::hypot(k, spec.m);
    return direction * v;
}

DeltaStrengths delta_strengths(const PotentialSpec& spec, const SectorChoice& sector) {
    const double c = sector.delta_sign() * spec.b1 * spec.upsilon() / (2.0 * spec.a);
    return {c, -c};
}

}  // namespace dkp
