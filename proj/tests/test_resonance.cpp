#include <catch2/catch_amalgamated.hpp>

#include "raman/resonance.hpp"

using namespace raman;

TEST_CASE("First-order double-diffraction resonance") {
    auto r = first_order_resonance();
    CHECK(r.offset == 1.0);
    CHECK(r.delta == 0.0);
}

TEST_CASE("Doppler box light shifts carry the process-dependent sign") {
    const double om = 0.3;
    // (2 n0 + 1) / (4 n0 (n0 + 1)) = 3/8 for n0 = 1 and 5/24 for n0 = 2
    CHECK(doppler_box_delta(1, Direction::ExcitedToGround, om) ==
          Catch::Approx(om * om * 3.0 / 8.0));
    CHECK(doppler_box_delta(2, Direction::GroundToExcited, om) ==
          Catch::Approx(-om * om * 5.0 / 24.0));

    auto r = doppler_box_resonance(1, Direction::ExcitedToGround, om);
    CHECK(r.offset == Catch::Approx(-3.0 + r.delta)); // bare -(2 n0 + 1) for e -> g
    auto r2 = doppler_box_resonance(2, Direction::GroundToExcited, om);
    CHECK(r2.offset == Catch::Approx(5.0 + r2.delta)); // bare +(2 n0 + 1) for g -> e
}

TEST_CASE("Third-order resonance combines the 9 omega_K offset and the beta shift") {
    auto r = third_order_resonance(-0.5625, 0.4);
    CHECK(r.delta == Catch::Approx(-0.5625 * 0.16));
    CHECK(r.offset == Catch::Approx(9.0 + r.delta));
}

TEST_CASE("Envelope power integrals match closed forms") {
    // box: integral of 1^k over tau
    CHECK(raman::detail::envelope_power_integral(PulseShape::box(2.5), 1) ==
          Catch::Approx(2.5).epsilon(1e-10));
    CHECK(raman::detail::envelope_power_integral(PulseShape::box(2.5), 3) ==
          Catch::Approx(2.5).epsilon(1e-10));
    // Gaussian over an 8-sigma window: sqrt(2 pi / k) * dtau up to tail clipping
    const double dtau = 1.7;
    const double i1 = raman::detail::envelope_power_integral(PulseShape::gaussian(dtau), 1);
    const double i3 = raman::detail::envelope_power_integral(PulseShape::gaussian(dtau), 3);
    CHECK(i1 == Catch::Approx(std::sqrt(2.0 * M_PI) * dtau).epsilon(1e-4));
    CHECK(i3 == Catch::Approx(std::sqrt(2.0 * M_PI / 3.0) * dtau).epsilon(1e-6));
}

TEST_CASE("Area calibration round-trips") {
    SECTION("first-order double process: A = integral of sqrt(2) Omega") {
        PulseSpec p = calibrate_pulse(PulseShape::gaussian(3.0), 1, Process::DoubleRest, M_PI_2);
        CHECK(pulse_area(p) == Catch::Approx(M_PI_2).epsilon(1e-12));
        const double i1 = raman::detail::envelope_power_integral(p.shape, 1);
        CHECK(p.amplitude == Catch::Approx(M_PI_2 / (std::sqrt(2.0) * i1)));
        CHECK(p.delta == 0.0);
    }
    SECTION("Doppler single process: A = integral of 2 Omega") {
        PulseSpec p = calibrate_pulse(PulseShape::box(10.0), 1, Process::DopplerSingle, M_PI, 1,
                                      Direction::ExcitedToGround);
        CHECK(p.amplitude == Catch::Approx(M_PI / 20.0));
        CHECK(pulse_area(p) == Catch::Approx(M_PI).epsilon(1e-12));
        CHECK(p.delta == Catch::Approx(doppler_box_delta(1, Direction::ExcitedToGround,
                                                         p.amplitude)));
    }
    SECTION("third-order process: A = integral of alpha Omega^3") {
        const double alpha = 0.044194, beta = -0.5625;
        PulseSpec p = calibrate_pulse(PulseShape::gaussian(1.2), 3, Process::DoubleRest, M_PI_2,
                                      0, Direction::GroundToExcited, alpha, beta);
        CHECK(pulse_area(p) == Catch::Approx(M_PI_2).epsilon(1e-10));
        CHECK(p.delta == Catch::Approx(beta * p.amplitude * p.amplitude));
    }
}

TEST_CASE("Calibration rejects invalid requests") {
    CHECK_THROWS_AS(calibrate_pulse(PulseShape::box(1.0), 2, Process::DoubleRest, M_PI_2),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_pulse(PulseShape::box(1.0), 1, Process::DoubleRest, -1.0),
                    std::invalid_argument);
}
