#pragma once

#include <complex>

namespace dkp {

using cplx = std::complex<double>;

// Square profile A_mu(x) = b_mu V0 g(x) of half-width a acting on a boson of
// mass m. Positive V0 is a well, negative a barrier. Derived quantities are
// always recomputed from the five stored fields.
struct PotentialSpec {
    double a = 1.0;
    double v0 = 2.0;
    double b0 = 0.0;
    double b1 = 1.0;
    double m = 1.0;

    // j = b1^2 - b0^2
    double j() const { return b1 * b1 - b0 * b0; }
    // dimensionless strength a*V0
    double upsilon() const { return a * v0; }

    // Throws InvalidSpec unless a > 0, m > 0 and all fields are finite.
    void validate() const;
};

enum class SectorKind { Scalar, Vector };

// Spin-0 or spin-1 reduction. For the vector sector sigma = +1 is the
// longitudinal and sigma = -1 the transverse polarization; sigma only flips
// the sign of the border delta terms.
class SectorChoice {
public:
    static SectorChoice scalar() { return SectorChoice(SectorKind::Scalar, 1); }
    static SectorChoice vector(int sigma);

    SectorKind kind() const { return kind_; }
    int sigma() const { return sigma_; }
    bool is_vector() const { return kind_ == SectorKind::Vector; }

    // Multiplier of b1 in every term that is linear in A1.
    double delta_sign() const { return static_cast<double>(sigma_); }

    friend bool operator==(const SectorChoice&, const SectorChoice&) = default;

private:
    SectorChoice(SectorKind kind, int sigma) : kind_(kind), sigma_(sigma) {}

    SectorKind kind_;
    int sigma_;
};

enum class Regime { Scattering, Bound };

struct Kinematics {
    double E = 0.0;
    cplx xi;   // outer dimensionless wavenumber
    cplx eta;  // inner dimensionless wavenumber
    Regime regime = Regime::Scattering;
};

struct DerivedParams {
    double j;
    double upsilon;
};

struct DeltaStrengths {
    double g_minus;  // jump coefficient of dphi/dx at x = -a
    double g_plus;   // jump coefficient of dphi/dx at x = +a
};

DerivedParams derived_params(const PotentialSpec& spec);

// a*sqrt(E^2 - m^2), or i*a*sqrt(m^2 - E^2) below threshold.
cplx xi_of_energy(double E, const PotentialSpec& spec);

// Principal sqrt(xi^2 - j*upsilon^2); a negative real radicand maps to +i|.|.
cplx eta_of_xi(cplx xi, double j, double upsilon);

Kinematics kinematics(double E, const PotentialSpec& spec);

// Group velocity (+-)(xi/a)/sqrt((xi/a)^2 + m^2). direction is +1 or -1.
// Throws DomainError for a bound-regime (non-real) xi.
double group_velocity(cplx xi, const PotentialSpec& spec, int direction);

// Crossing x = -a, dphi/dx jumps by g_minus*phi(-a); crossing x = +a, by
// g_plus*phi(+a).
DeltaStrengths delta_strengths(const PotentialSpec& spec, const SectorChoice& sector);

// sqrt of a real radicand under the library branch convention.
cplx principal_sqrt(double radicand);

}  // namespace dkp
