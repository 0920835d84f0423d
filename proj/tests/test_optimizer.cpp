#include <catch2/catch_amalgamated.hpp>

#include "raman/averaging.hpp"
#include "raman/optimizer.hpp"

using namespace raman;

TEST_CASE("Nelder-Mead minimizes a shifted quadratic bowl") {
    SimplexConfig cfg;
    cfg.initial_point = {0.0, 0.0};
    cfg.initial_step = {0.5, 0.5};
    cfg.x_tol = 1e-8;
    cfg.f_tol = 1e-14;
    cfg.max_evals = 500;
    auto res = nelder_mead(
        [](const std::vector<double>& x) {
            const double dx = x[0] - 1.0, dy = x[1] + 2.0;
            return dx * dx + 3.0 * dy * dy;
        },
        cfg);
    CHECK(res.x[0] == Catch::Approx(1.0).margin(1e-5));
    CHECK(res.x[1] == Catch::Approx(-2.0).margin(1e-5));
    CHECK(res.value < 1e-9);
    CHECK(res.evals <= 500);
}

TEST_CASE("Nelder-Mead handles a non-convex valley (Rosenbrock)") {
    SimplexConfig cfg;
    cfg.initial_point = {-1.2, 1.0};
    cfg.initial_step = {0.3, 0.3};
    cfg.x_tol = 1e-10;
    cfg.f_tol = 1e-16;
    cfg.max_evals = 2000;
    auto res = nelder_mead(
        [](const std::vector<double>& x) {
            const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
            return a * a + 100.0 * b * b;
        },
        cfg);
    CHECK(res.x[0] == Catch::Approx(1.0).margin(1e-3));
    CHECK(res.x[1] == Catch::Approx(1.0).margin(1e-3));
}

TEST_CASE("Nelder-Mead respects the evaluation budget and records a trace") {
    SimplexConfig cfg;
    cfg.initial_point = {5.0};
    cfg.initial_step = {1.0};
    cfg.max_evals = 25;
    auto res = nelder_mead(
        [](const std::vector<double>& x) { return std::cos(x[0]) + 0.01 * x[0] * x[0]; }, cfg);
    CHECK(res.evals <= 25);
    REQUIRE(res.trace.size() == static_cast<std::size_t>(res.evals));
    // each trace row is (x..., f)
    for (const auto& row : res.trace) REQUIRE(row.size() == 2);
    // the reported optimum appears in the trace
    double best = res.trace.front().back();
    for (const auto& row : res.trace) best = std::min(best, row.back());
    CHECK(res.value == Catch::Approx(best));
}

TEST_CASE("Third-order optimization seeds from the box-pulse analytics") {
    auto [alpha0, beta0] = box_pulse_alpha_beta();
    CHECK(alpha0 == Catch::Approx(std::sqrt(2.0) / 32.0));
    CHECK(beta0 == Catch::Approx(-9.0 / 16.0));
}

TEST_CASE("Third-order optimization finds parameters near the analytics") {
    // one cheap optimization at a broad packet width; the optimum must stay
    // inside the trust region and improve on statistical noise
    AtomSpecies atom = make_rb87();
    KernelCache cache;
    const double dtau = 13.3e-6 * atom.recoil_omega_K;
    auto r = optimize_third_order(dtau, 0.1, OptimizeTarget::BeamSplitter, cache, 1e-3, 1e-6,
                                  1, 120);
    auto [alpha0, beta0] = box_pulse_alpha_beta();
    CHECK(r.alpha > alpha0 / 3.0);
    CHECK(r.alpha < alpha0 * 3.0);
    CHECK(r.beta > beta0 * 3.0);
    CHECK(r.beta < beta0 / 3.0);
    CHECK(r.efficiency > 0.5);
    CHECK(r.efficiency <= 1.0 + 1e-6);
}

TEST_CASE("Optimization rejects invalid inputs") {
    KernelCache cache;
    CHECK_THROWS_AS(optimize_third_order(0.0, 0.1, OptimizeTarget::BeamSplitter, cache),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize_third_order(1.0, -0.1, OptimizeTarget::BeamSplitter, cache),
                    std::invalid_argument);
}
