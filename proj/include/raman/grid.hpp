#pragma once

// Momentum discretization, spinor wave packets and amplitude ladders.
// The grid spacing is always hbar*K/m for integer m, so that one-photon-pair
// recoils map grid samples onto grid samples exactly.

#include <complex>
#include <stdexcept>
#include <vector>

#include "raman/core.hpp"

namespace raman {

using cplx = std::complex<double>;

enum class InternalState { Ground, Excited };

/// Uniform symmetric momentum grid, samples j/m for j in [-half_n, half_n].
struct MomentumGrid {
    int m = 0;      // samples per hbar*K
    int half_n = 0; // samples on each side of zero

    static MomentumGrid make(double min_packet_width, double half_width) {
        if (min_packet_width <= 0.0 || half_width <= 0.0)
            throw std::invalid_argument("MomentumGrid: widths must be > 0");
        MomentumGrid g;
        // spacing <= min_packet_width / 8
        g.m = static_cast<int>(std::ceil(8.0 / min_packet_width));
        g.half_n = static_cast<int>(std::ceil(half_width * g.m));
        return g;
    }

    double spacing() const { return 1.0 / m; }
    double half_width() const { return static_cast<double>(half_n) / m; }
    int size() const { return 2 * half_n + 1; }
    double sample(int i) const { return static_cast<double>(i - half_n) / m; }
    // index of sample j/m (j relative to zero)
    int index_of(int j) const { return j + half_n; }

    bool operator==(const MomentumGrid& o) const { return m == o.m && half_n == o.half_n; }
};

/// Two-component wave packet on a momentum grid.
struct SpinorWavePacket {
    MomentumGrid grid;
    std::vector<cplx> g_amp;
    std::vector<cplx> e_amp;

    explicit SpinorWavePacket(const MomentumGrid& gr = {})
        : grid(gr), g_amp(gr.size(), cplx(0)), e_amp(gr.size(), cplx(0)) {}

    double norm() const {
        double s = 0.0;
        for (std::size_t i = 0; i < g_amp.size(); ++i)
            s += std::norm(g_amp[i]) + std::norm(e_amp[i]);
        return s * grid.spacing();
    }
};

/// Gaussian packet ~ exp[-(p - p0)^2 / (4 dp^2)], unit norm, placed in the
/// requested internal state. With superposition = true builds the symmetric
/// two-peak superposition at +-p0.
inline SpinorWavePacket gaussian_packet(const MomentumGrid& grid, double p0, double dp,
                                        InternalState state = InternalState::Ground,
                                        bool superposition = false) {
    if (dp <= 0.0) throw std::invalid_argument("gaussian_packet: width must be > 0");
    double reach = std::abs(p0) + 6.0 * dp;
    if (grid.half_width() < reach)
        throw std::invalid_argument("gaussian_packet: grid too narrow, needs half-width >= " +
                                    std::to_string(reach));
    SpinorWavePacket psi(grid);
    auto& amp = state == InternalState::Ground ? psi.g_amp : psi.e_amp;
    double s = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        double p = grid.sample(i);
        double a = std::exp(-(p - p0) * (p - p0) / (4.0 * dp * dp));
        if (superposition) a += std::exp(-(p + p0) * (p + p0) / (4.0 * dp * dp));
        amp[i] = a;
        s += a * a;
    }
    s = std::sqrt(s * grid.spacing());
    for (auto& a : amp) a /= s;
    return psi;
}

/// Complex amplitudes on the momentum ladder p + n*hbar K for one
/// quasi-momentum p, n in [-n_max, n_max].
struct AmplitudeLadder {
    double p = 0.0;
    int n_max = 0;
    std::vector<cplx> g;
    std::vector<cplx> e;

    AmplitudeLadder() = default;
    AmplitudeLadder(double p_, int n_max_)
        : p(p_), n_max(n_max_), g(2 * n_max_ + 1, cplx(0)), e(2 * n_max_ + 1, cplx(0)) {}

    int size() const { return 2 * n_max + 1; }
    cplx& g_at(int n) { return g[n + n_max]; }
    cplx& e_at(int n) { return e[n + n_max]; }
    const cplx& g_at(int n) const { return g[n + n_max]; }
    const cplx& e_at(int n) const { return e[n + n_max]; }

    double norm() const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += std::norm(g[i]) + std::norm(e[i]);
        return s;
    }
};

} // namespace raman
