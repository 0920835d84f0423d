#include <catch2/catch_amalgamated.hpp>

#include "raman/averaging.hpp"

using namespace raman;

namespace {
constexpr int kNmax = 7;
int idx(int n) { return n + kNmax; }
} // namespace

TEST_CASE("Order-1 and order-2 averaged couplings vanish on the target block") {
    const double om = 0.3;
    auto G1 = averaged_generator(1, om, kNmax);
    auto G2 = averaged_generator(2, om, kNmax);
    CHECK(G1(idx(0), idx(3)) == 0.0);
    CHECK(G1(idx(0), idx(-3)) == 0.0);
    CHECK(G2(idx(0), idx(3)) == 0.0);
    CHECK(G2(idx(0), idx(-3)) == 0.0);
}

TEST_CASE("Order-3 coupling and order-2 light shifts match the closed forms") {
    const double om = 0.25;
    auto G2 = averaged_generator(2, om, kNmax);
    auto G3 = averaged_generator(3, om, kNmax);
    CHECK(std::abs(G3(idx(0), idx(3)) - (-om * om * om / 32.0)) < 1e-14);
    CHECK(std::abs(G3(idx(0), idx(-3)) - (-om * om * om / 32.0)) < 1e-14);
    CHECK(std::abs(G2(idx(3), idx(3)) - 5.0 * om * om / 16.0) < 1e-14);
    CHECK(std::abs(G2(idx(-3), idx(-3)) - 5.0 * om * om / 16.0) < 1e-14);
    CHECK(std::abs(G2(idx(0), idx(0)) - (-om * om / 4.0)) < 1e-14);
}

TEST_CASE("Averaged generators are symmetric real matrices") {
    auto G3 = averaged_generator(3, 0.3, kNmax);
    CHECK((G3 - G3.transpose()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Effective three-level model carries the coupling and shifts") {
    const double om = 0.2, delta = -0.02;
    auto h = effective_three_level(om, delta).matrix; // basis (e_-3, g_0, e_+3)
    CHECK(h(1, 0) == Catch::Approx(-om * om * om / 32.0).epsilon(1e-10));
    CHECK(h(1, 2) == Catch::Approx(-om * om * om / 32.0).epsilon(1e-10));
    CHECK(h(0, 0) == Catch::Approx(delta + 5.0 * om * om / 16.0).epsilon(1e-10));
    CHECK(h(2, 2) == Catch::Approx(delta + 5.0 * om * om / 16.0).epsilon(1e-10));
    CHECK(h(1, 1) == Catch::Approx(-om * om / 4.0).epsilon(1e-10));
    CHECK(std::abs(h(0, 2)) < 1e-14); // no direct -3 <-> +3 coupling at this order
}

TEST_CASE("Box-pulse analytics: delta and area") {
    const double om = 0.4, tau = 100.0;
    auto box = box_pulse_analytics(om, tau);
    CHECK(box.delta == Catch::Approx(-9.0 * om * om / 16.0));
    CHECK(box.area == Catch::Approx(std::sqrt(2.0) * om * om * om * tau / 32.0));
    auto [alpha0, beta0] = box_pulse_alpha_beta();
    CHECK(alpha0 == Catch::Approx(std::sqrt(2.0) / 32.0));
    CHECK(beta0 == Catch::Approx(-9.0 / 16.0));
}

TEST_CASE("Full box-pulse dynamics agree with the effective three-level model") {
    // pi/2 box pulse at Omega_0 = 0.3: moderately adiabatic, deviation well
    // below the few-percent scale and positive (the model is approximate)
    const double om = 0.3;
    const double tau = M_PI_2 * 32.0 / (std::sqrt(2.0) * om * om * om);
    auto rep = cross_validate(om, tau, 0.02);
    CHECK(rep.max_deviation > 0.0);
    CHECK(rep.max_deviation < 0.02);
}
