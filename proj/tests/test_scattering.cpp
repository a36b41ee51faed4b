#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dkp/errors.hpp"
#include "dkp/oracle.hpp"
#include "dkp/scattering.hpp"
#include "property.hpp"

using namespace dkp;

namespace {
const PotentialSpec barrier{1.0, 2.0, 0.0, 1.0, 1.0};
constexpr cplx I{0.0, 1.0};
}  // namespace

TEST_CASE("gamma_factor") {
    CHECK(gamma_factor(1.0, 1.0, 0.0, 1.0) == I);
    const cplx g = gamma_factor(1.0, 2.0, 2.0, 1.0);
    CHECK(g.real() == doctest::Approx(0.5));
    CHECK(g.imag() == doctest::Approx(0.5));
    CHECK(gamma_factor(1.0, 1.0, 2.0, -1.0) == cplx(-1.0, 1.0));
    CHECK_THROWS_AS(gamma_factor(1.0, 0.0, 2.0, 1.0), DegenerateKinematics);
}

TEST_CASE("f_factor") {
    CHECK(f_factor(0.7, 0.7, 0.0, 3.0).real() == doctest::Approx(1.0));
    CHECK(f_factor(2.0, 1.0, 2.0, 1.0) == cplx(1.5, 0.0));
    CHECK(f_factor(1.0, 1.0, 2.0, -1.0) == cplx(1.5, 0.0));
    CHECK_THROWS_AS(f_factor(1.0, 0.0, 2.0, 1.0), DegenerateKinematics);
    CHECK_THROWS_AS(f_factor(0.0, 1.0, 2.0, 1.0), DegenerateKinematics);
}

TEST_CASE("amplitudes: free propagation") {
    PotentialSpec free = barrier;
    free.v0 = 0.0;
    for (double E : {1.3, -2.0, 7.5}) {
        const auto res = amplitudes(E, free, SectorChoice::scalar());
        CHECK(std::abs(res.r) < 1e-15);
        CHECK(std::abs(res.t - 1.0) < 1e-14);
        CHECK(res.T == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("amplitudes: errors") {
    CHECK_THROWS_AS(amplitudes(1.0, barrier, SectorChoice::scalar()), ThresholdError);
    CHECK_THROWS_AS(amplitudes(0.4, barrier, SectorChoice::scalar()), ThresholdError);
    // eta = 0 exactly: m = 0.75, E = 1.25 gives xi = 1 = sqrt(j) upsilon
    const PotentialSpec edge{1.0, 1.0, 0.0, 1.0, 0.75};
    CHECK_THROWS_AS(amplitudes(1.25, edge, SectorChoice::scalar()), DegenerateKinematics);
    CHECK(amplitudes_flagged(1.25, edge, SectorChoice::scalar()).flag == PointFlag::Degenerate);
    CHECK(amplitudes_flagged(0.5, barrier, SectorChoice::scalar()).flag == PointFlag::Threshold);
}

TEST_CASE("amplitudes at E=1.2 match the ODE oracle") {
    // tunneling regime: eta^2 = 0.44 - 4 < 0
    const auto cf = amplitudes(1.2, barrier, SectorChoice::scalar());
    CHECK(cf.eta.real() == 0.0);
    CHECK(cf.eta.imag() > 0.0);
    const auto trace = oracle::integrate_effective(1.2, barrier, SectorChoice::scalar(), 1e-4);
    const auto ode = oracle::extract_amplitudes(trace, cf.xi.real(), barrier.a);
    CHECK(std::abs(ode.r - cf.r) < 1e-8);
    CHECK(std::abs(ode.t - cf.t) < 1e-8);
}

TEST_CASE("resonance energies") {
    const auto e = resonance_energies(0, barrier);
    REQUIRE(e.size() == 1);
    const double expected = std::sqrt(1.0 + std::numbers::pi * std::numbers::pi / 4.0 + 4.0);
    CHECK(e[0] == doctest::Approx(expected).epsilon(1e-15));
    CHECK(e[0] == doctest::Approx(2.7327).epsilon(2e-5));
    CHECK(amplitudes(e[0], barrier, SectorChoice::scalar()).T == doctest::Approx(1.0).epsilon(1e-12));

    // j = -1, v = 2: xi_0^2 = pi^2/4 - 4 < 0 is skipped
    const PotentialSpec neg{1.0, 2.0, std::numbers::sqrt2, 1.0, 1.0};
    const auto rs = resonances(3, neg);
    REQUIRE(!rs.empty());
    CHECK(rs.front().order == 1);

    PotentialSpec free = barrier;
    free.v0 = 0.0;
    const auto ef = resonance_energies(4, free);
    REQUIRE(ef.size() == 5);
    for (std::size_t n = 0; n < ef.size(); ++n) {
        const double k = (n + 1) * std::numbers::pi / 2.0;
        CHECK(ef[n] == doctest::Approx(std::sqrt(1.0 + k * k)).epsilon(1e-15));
    }

    const auto many = resonance_energies(30, barrier);
    for (std::size_t n = 1; n < many.size(); ++n) CHECK(many[n] > many[n - 1]);
    for (double En : resonance_energies(5, barrier))
        CHECK(amplitudes(En, barrier, SectorChoice::scalar()).T >= 1.0 - 1e-10);
}

TEST_CASE("coefficients_scan") {
    const std::vector<double> grid = {-3.0, -2.0, -1.5, 1.5, 2.0, 3.0};
    const auto res = coefficients_scan(grid, barrier, SectorChoice::scalar());
    REQUIRE(res.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(res[i].E == grid[i]);
    CHECK(res[0].T == res[5].T);
    CHECK(res[1].T == res[4].T);
    CHECK(res[2].T == res[3].T);

    // a flagged point does not abort the scan
    const std::vector<double> mixed = {0.5, 2.0};
    const auto m = coefficients_scan(mixed, barrier, SectorChoice::scalar());
    CHECK(m[0].flag == PointFlag::Threshold);
    CHECK(m[1].flag == PointFlag::Ok);
}

TEST_CASE("j = 1 profile oscillates and reaches T=1 at resonances") {
    const auto grid = energy_grid(1.001, 10.0, 2000, barrier);
    const auto res = coefficients_scan(grid, barrier, SectorChoice::scalar());
    int turns = 0;
    for (std::size_t i = 2; i < res.size(); ++i) {
        const double d1 = res[i - 1].T - res[i - 2].T, d2 = res[i].T - res[i - 1].T;
        if (d1 > 0.0 && d2 < 0.0) ++turns;
    }
    CHECK(turns >= 3);
    for (double En : resonance_energies(4, barrier)) {
        if (En > 10.0) break;
        CHECK(amplitudes(En, barrier, SectorChoice::scalar()).T == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("limits") {
    CHECK(amplitudes(1.0 + 1e-6, barrier, SectorChoice::scalar()).T < 1e-3);
    // T(50) by direct evaluation and by the transfer-matrix oracle
    const auto cf = amplitudes(50.0, barrier, SectorChoice::scalar());
    const auto tm = oracle::transfer_matrix_amplitudes(50.0, barrier, SectorChoice::scalar());
    CHECK(cf.T > 0.999);
    CHECK(std::norm(tm.t) > 0.999);
    CHECK(cf.T == doctest::Approx(0.99986039160696105).epsilon(1e-13));
    // total reflection only as |E| -> m+
    double prev = 1.0;
    for (double d : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double T = amplitudes(1.0 + d, barrier, SectorChoice::scalar()).T;
        CHECK(T < prev);
        prev = T;
    }
}

TEST_CASE("energy_grid") {
    const auto g = energy_grid(-3.0, 3.0, 601, barrier);
    for (double E : g) CHECK(std::abs(E) > 1.001);
    CHECK(g.front() == -3.0);
    CHECK(g.back() == 3.0);
    CHECK_THROWS_AS(energy_grid(2.0, 1.0, 10, barrier), DomainError);
    CHECK_THROWS_AS(energy_grid(1.0, 2.0, 1, barrier), DomainError);

    // E = 1.25 hits eta = 0 exactly for this configuration and gets nudged
    const PotentialSpec edge{1.0, 1.0, 0.0, 1.0, 0.75};
    const auto ge = energy_grid(1.0, 1.5, 3, edge);
    REQUIRE(ge.size() == 3);
    CHECK(ge[1] > 1.25);
    CHECK(amplitudes_flagged(ge[1], edge, SectorChoice::scalar()).flag == PointFlag::Ok);
}

TEST_CASE("property: unitarity, parity and sign invariances") {
    testing::Gen gen(0x7363);
    for (int i = 0; i < testing::kCases; ++i) {
        const PotentialSpec spec = gen.spec();
        const double E = gen.scattering_energy(spec.m);
        const auto res = amplitudes_flagged(E, spec, SectorChoice::scalar());
        if (res.flag != PointFlag::Ok) continue;
        CHECK(std::abs(res.R + res.T - 1.0) < 1e-12);
        CHECK(res.R >= -1e-12);
        CHECK(res.T <= 1.0 + 1e-12);

        const auto mirror = amplitudes(-E, spec, SectorChoice::scalar());
        CHECK(mirror.T == res.T);
        CHECK(mirror.R == res.R);

        PotentialSpec flipped = spec;
        flipped.b1 = -spec.b1;
        const auto f = amplitudes(E, flipped, SectorChoice::scalar());
        CHECK(std::abs(f.T - res.T) < 1e-14);
        CHECK(std::abs(f.R - res.R) < 1e-14);

        for (int sigma : {1, -1}) {
            const auto v = amplitudes(E, spec, SectorChoice::vector(sigma));
            CHECK(std::abs(v.T - res.T) < 1e-14);
            CHECK(std::abs(v.R - res.R) < 1e-14);
        }

        // |if - gamma|^2 = f^2 - 1 for real eta
        if (res.eta.imag() == 0.0) {
            const auto fac = amplitude_factors(res.xi, res.eta, spec.upsilon(), spec.b1);
            const double lhs = std::norm(I * fac.f - fac.gamma);
            const double rhs = std::norm(fac.f) - 1.0;
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}
