#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "raman/kernel.hpp"
#include "raman/resonance.hpp"

using namespace raman;

namespace {

PulseSpec weak_bs() {
    return calibrate_pulse(PulseShape::gaussian(6.0), 1, Process::DoubleRest, M_PI_2);
}

} // namespace

TEST_CASE("Kernel columns are unitary inside the support and identity outside") {
    auto pulse = weak_bs();
    MomentumGrid grid = MomentumGrid::make(0.1, 2.0);
    SupportIntervals support = {{-0.5, 0.5}};
    auto k = compute_kernel(pulse, grid, 1e-6, 1e-9, 3, support);

    for (int i = 0; i < grid.size(); ++i) {
        const double p = grid.sample(i);
        if (p >= -0.5 && p <= 0.5) {
            CHECK(k.active[i] == 1);
            CHECK(k.from_g[i].norm() == Catch::Approx(1.0).epsilon(1e-6));
            CHECK(k.from_e[i].norm() == Catch::Approx(1.0).epsilon(1e-6));
        } else {
            CHECK(k.active[i] == 0);
            CHECK(std::abs(k.from_g[i].g_at(0) - 1.0) < 1e-15);
            CHECK(std::abs(k.from_e[i].e_at(0) - 1.0) < 1e-15);
        }
    }
}

TEST_CASE("apply_kernel preserves the norm when the grid covers all orders") {
    auto pulse = weak_bs();
    MomentumGrid grid = MomentumGrid::make(0.05, 4.0);
    auto k = compute_kernel(pulse, grid, 1e-6, 1e-9, 3, {{-0.5, 0.5}});
    auto psi = gaussian_packet(grid, 0.0, 0.05, InternalState::Ground);
    REQUIRE(psi.norm() == Catch::Approx(1.0).epsilon(1e-9));
    auto out = apply_kernel(k, psi);
    CHECK(out.norm() == Catch::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("apply_kernel rejects mismatched grids") {
    auto pulse = weak_bs();
    MomentumGrid grid = MomentumGrid::make(0.1, 2.0);
    auto k = compute_kernel(pulse, grid, 1e-4, 1e-7, 3, {{-0.2, 0.2}});
    SpinorWavePacket psi(MomentumGrid::make(0.1, 3.0));
    CHECK_THROWS_AS(apply_kernel(k, psi), std::invalid_argument);
}

TEST_CASE("select_n_max never falls below order + 2") {
    CHECK(select_n_max(weak_bs(), 1e-3, 1e-6) >= 3);
    PulseSpec third = calibrate_pulse(PulseShape::gaussian(1.3), 3, Process::DoubleRest, M_PI_2,
                                      0, Direction::GroundToExcited, 0.0442, -0.5625);
    CHECK(select_n_max(third, 1e-3, 1e-6) >= 5);
}

TEST_CASE("Kernel save/load round-trip is bit-exact") {
    auto pulse = weak_bs();
    MomentumGrid grid = MomentumGrid::make(0.2, 2.0);
    auto k = compute_kernel(pulse, grid, 1e-4, 1e-7, 3, {{-0.3, 0.3}});

    auto path = std::filesystem::temp_directory_path() / "kernel_roundtrip.kern";
    save_kernel(k, path.string());
    auto k2 = load_kernel(path.string());
    std::filesystem::remove(path);

    REQUIRE(k2.grid == k.grid);
    REQUIRE(k2.n_max == k.n_max);
    for (int i = 0; i < grid.size(); ++i) {
        CHECK(k2.active[i] == k.active[i]);
        for (int n = -k.n_max; n <= k.n_max; ++n) {
            CHECK(k2.from_g[i].g_at(n) == k.from_g[i].g_at(n));
            CHECK(k2.from_e[i].e_at(n) == k.from_e[i].e_at(n));
        }
    }
}

TEST_CASE("Kernel hashes identify pulses and the cache reuses entries") {
    auto pulse = weak_bs();
    MomentumGrid grid = MomentumGrid::make(0.2, 2.0);
    const std::string h1 = kernel_hash(pulse, grid, 1e-3, 1e-6, 3);
    CHECK(h1 == kernel_hash(pulse, grid, 1e-3, 1e-6, 3));
    PulseSpec other = pulse;
    other.amplitude *= 1.0 + 1e-12;
    CHECK(h1 != kernel_hash(other, grid, 1e-3, 1e-6, 3));

    KernelCache cache;
    SupportIntervals support = {{-0.3, 0.3}};
    cache.get(pulse, grid, 1e-3, 1e-6, 3, support);
    CHECK(cache.misses() == 1);
    cache.get(pulse, grid, 1e-3, 1e-6, 3, support);
    CHECK(cache.hits() == 1);
    CHECK(cache.misses() == 1);
    // a different support is a different cache entry
    cache.get(pulse, grid, 1e-3, 1e-6, 3, SupportIntervals{{-0.4, 0.4}});
    CHECK(cache.misses() == 2);
}
