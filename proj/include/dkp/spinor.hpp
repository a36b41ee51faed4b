#pragma once

#include "dkp/kinematics.hpp"

namespace dkp {

// DKP components rebuilt from the solved first component. In the vector
// sector phi1/phi2/phi3 hold phi_I, phi_II, phi_III of one polarization; the
// remaining components (phi4 = phi5 = 0, resp. phi_8 = 0) vanish identically.
struct SpinorSample {
    double x = 0.0;
    cplx phi1;
    cplx dphi1;
    cplx phi2;
    cplx phi3;
    SectorChoice sector = SectorChoice::scalar();
};

struct CurrentSample {
    double x = 0.0;
    double J0 = 0.0;
    double J1 = 0.0;
};

// A0(x), A1(x) for the square profile, with g = -1 inside. Undefined at the
// borders; throws DomainError for |x| == a.
struct FieldValues {
    double A0;
    double A1;
};
FieldValues field_at(double x, const PotentialSpec& spec);

// phi2 = (E + i s A0) phi1 / m, phi3 = i (dphi1 + s A1 phi1) / m, s = sigma
// (s = 1 for scalars).
SpinorSample reconstruct(double x, cplx phi1, cplx dphi1, double E, const PotentialSpec& spec,
                         const SectorChoice& sector);

// J0 = (E/m)|phi1|^2, J1 = Im(conj(phi1) dphi1)/m
CurrentSample current(const SpinorSample& sample, double E, double m);

// Vector-sector four-current: sum over both polarizations at the same x.
CurrentSample vector_current(const SpinorSample& plus, const SpinorSample& minus, double E, double m);

}  // namespace dkp
