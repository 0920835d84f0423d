#include <catch2/catch_amalgamated.hpp>

#include "raman/core.hpp"

using namespace raman;

TEST_CASE("Rb-87 recoil frequency is near 2 pi x 15.08 kHz") {
    auto atom = make_rb87();
    CHECK(atom.recoil_omega_K == Catch::Approx(9.4775e4).epsilon(1e-3));
    CHECK(atom.recoil_omega_K / (2.0 * M_PI) == Catch::Approx(15.084e3).epsilon(1e-3));
    // two-photon momentum: twice the single-photon wavenumber at 780 nm
    CHECK(atom.wavenumber_K == Catch::Approx(2.0 * 2.0 * M_PI / 780.241209686e-9).epsilon(1e-12));
    CHECK(atom.splitting_omega_eg == Catch::Approx(2.0 * M_PI * 6.834682611e9).epsilon(1e-9));
}

TEST_CASE("Gaussian pulse shape: window, peak and symmetry") {
    auto s = PulseShape::gaussian(2.0);
    CHECK(s.window == Catch::Approx(16.0));
    CHECK(s.t_begin() == 0.0);
    CHECK(s.t_end() == Catch::Approx(16.0));
    // envelope peaks at the window center with unit amplitude
    CHECK(s.envelope(8.0) == Catch::Approx(1.0));
    CHECK(s.envelope(8.0 + 2.0) == Catch::Approx(std::exp(-0.5)));
    CHECK(s.envelope(8.0 - 3.0) == Catch::Approx(s.envelope(8.0 + 3.0)));
    // tails are small at the window edges (4 sigma)
    CHECK(s.envelope(0.0) < 4e-4);
    CHECK(s.envelope(16.0) < 4e-4);
}

TEST_CASE("Box pulse shape is flat over its duration") {
    auto s = PulseShape::box(3.0);
    CHECK(s.window == Catch::Approx(3.0));
    CHECK(s.envelope(0.0) == 1.0);
    CHECK(s.envelope(1.5) == 1.0);
    CHECK(s.envelope(3.0) == 1.0);
}

TEST_CASE("Pulse shape constructors reject non-positive durations") {
    CHECK_THROWS_AS(PulseShape::gaussian(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PulseShape::gaussian(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(PulseShape::box(0.0), std::invalid_argument);
}

TEST_CASE("PulseSpec validation and time-dependent coupling") {
    PulseSpec p;
    p.shape = PulseShape::gaussian(1.0);
    p.amplitude = 0.25;
    p.order = 3;
    CHECK_NOTHROW(p.validate());
    CHECK(p.omega(4.0) == Catch::Approx(0.25));

    p.order = 2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.order = 1;
    p.amplitude = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
