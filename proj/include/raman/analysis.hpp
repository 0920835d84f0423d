#pragma once

// Efficiency functionals, (duration, width) efficiency maps and
// optimal-duration extraction.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "raman/kernel.hpp"
#include "raman/resonance.hpp"

namespace raman {

namespace detail {
// Midpoint sum of |psi|^2 over [lo, hi) in hbar K units.
inline double window_population(const SpinorWavePacket& psi, double lo, double hi) {
    const int m = psi.grid.m;
    const int j_lo = static_cast<int>(std::ceil(lo * m - 1e-9));
    const int j_hi = static_cast<int>(std::ceil(hi * m - 1e-9)) - 1;
    if (j_lo < -psi.grid.half_n || j_hi > psi.grid.half_n)
        throw std::out_of_range("window_population: window outside grid");
    double s = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) {
        int i = psi.grid.index_of(j);
        s += std::norm(psi.g_amp[i]) + std::norm(psi.e_amp[i]);
    }
    return s * psi.grid.spacing();
}
} // namespace detail

/// Two-window efficiency of an nth-order symmetric process between
/// +-n0 hbar K and +-(n0+n) hbar K, summed over internal states.
inline double efficiency(const SpinorWavePacket& psi_f, int n0, int n) {
    if (n < 0 || n0 < 0) throw std::invalid_argument("efficiency: n, n0 must be >= 0");
    const double c = n0 + n;
    double e = detail::window_population(psi_f, c - 0.5, c + 0.5);
    if (c > 0.0) e += detail::window_population(psi_f, -c - 0.5, -c + 0.5);
    return e;
}

/// One-sided mirror efficiency: population in [5/2, 7/2] hbar K for a packet
/// that started around -3 hbar K.
inline double mirror_efficiency(const SpinorWavePacket& psi_f) {
    return detail::window_population(psi_f, 2.5, 3.5);
}

/// Family of pulses swept in an efficiency map. Duration means the Gaussian
/// width dtau or the box length tau, in natural units (1/omega_K).
struct PulseFamily {
    PulseShape::Kind shape_kind = PulseShape::Kind::Gaussian;
    int order = 1;
    Process process = Process::DoubleRest;
    double area = M_PI_2;
    int n0 = 0;
    Direction direction = Direction::GroundToExcited;
    double alpha = 0.0;
    double beta = 0.0;
    // third-order pulses: optional per-duration (alpha, beta) override
    std::function<std::pair<double, double>(double duration)> param_provider;

    PulseShape shape(double duration) const {
        return shape_kind == PulseShape::Kind::Gaussian ? PulseShape::gaussian(duration)
                                                        : PulseShape::box(duration);
    }

    PulseSpec pulse(double duration) const {
        double a = alpha, b = beta;
        if (param_provider) {
            auto [pa, pb] = param_provider(duration);
            a = pa;
            b = pb;
        }
        return calibrate_pulse(shape(duration), order, process, area, n0, direction, a, b);
    }

    // Initial packet layout implied by the process.
    double packet_center() const {
        switch (process) {
            case Process::DoubleRest: return 0.0;
            case Process::DopplerSingle: return static_cast<double>(n0);
            case Process::DoubleMirror: return -static_cast<double>(order);
        }
        return 0.0;
    }
    bool packet_superposition() const { return process == Process::DopplerSingle; }
    InternalState packet_state() const {
        if (process == Process::DoubleMirror) return InternalState::Excited;
        if (process == Process::DopplerSingle && direction == Direction::ExcitedToGround)
            return InternalState::Excited;
        return InternalState::Ground;
    }
    bool is_mirror() const { return process == Process::DoubleMirror; }
    int target_n0() const { return process == Process::DopplerSingle ? n0 : 0; }
    int target_n() const { return process == Process::DopplerSingle ? 1 : order; }
};

struct EfficiencyMap {
    std::vector<double> durations; // natural units (1/omega_K)
    std::vector<double> widths;    // hbar K
    std::vector<std::vector<double>> values; // [duration][width], in [0, 1]
    PulseFamily family;
};

/// Evaluates the efficiency of one family pulse on one packet width.
/// The grid and kernel support are sized from the family's packet layout.
inline double family_efficiency(const PulseFamily& family, const PulseSpec& pulse, double width,
                                KernelCache& cache, double rel_tol, double abs_tol, int n_max,
                                int jobs = 1, MomentumGrid grid_override = {}) {
    const double p0 = family.packet_center();
    const double pad = 0.05;
    MomentumGrid grid = grid_override;
    if (grid.m == 0) {
        double half = std::max(std::abs(p0) + 6.0 * width,
                               family.target_n0() + family.target_n() + 0.5) + pad;
        grid = MomentumGrid::make(width, half);
    }
    SupportIntervals support;
    const double r = 6.0 * width + pad;
    if (family.packet_superposition()) {
        support.push_back({-p0 - r, -p0 + r});
        support.push_back({p0 - r, p0 + r});
    } else {
        support.push_back({p0 - r, p0 + r});
    }
    const auto& kernel = cache.get(pulse, grid, rel_tol, abs_tol, n_max, support);
    const double center = family.packet_superposition() ? std::abs(p0) : p0;
    auto psi = gaussian_packet(grid, center, width, family.packet_state(),
                               family.packet_superposition());
    auto psi_f = apply_kernel(kernel, psi);
    if (family.is_mirror()) return mirror_efficiency(psi_f);
    return efficiency(psi_f, family.target_n0(), family.target_n());
}

/// Matrix of efficiencies over a duration and width grid. Omega_0 is
/// recalibrated per duration to hold the pulse area fixed; one kernel per
/// duration is shared across the width sweep via the cache.
inline EfficiencyMap efficiency_map(const PulseFamily& family, std::vector<double> durations,
                                    std::vector<double> widths, KernelCache& cache,
                                    double rel_tol = 1e-3, double abs_tol = 1e-6, int jobs = 1) {
    if (durations.empty() || widths.empty())
        throw std::invalid_argument("efficiency_map: empty axes");
    EfficiencyMap map;
    map.durations = std::move(durations);
    map.widths = std::move(widths);
    map.family = family;
    map.values.assign(map.durations.size(), std::vector<double>(map.widths.size(), 0.0));

    const double w_min = *std::min_element(map.widths.begin(), map.widths.end());
    const double w_max = *std::max_element(map.widths.begin(), map.widths.end());
    const double p0 = family.packet_center();
    const double pad = 0.05;
    double half = std::max(std::abs(p0) + 6.0 * w_max,
                           family.target_n0() + family.target_n() + 0.5) + pad;
    MomentumGrid grid = MomentumGrid::make(w_min, half);

    for (std::size_t di = 0; di < map.durations.size(); ++di) {
        PulseSpec pulse = family.pulse(map.durations[di]);
        int n_max = select_n_max(pulse, rel_tol, abs_tol);
        SupportIntervals support;
        const double r = 6.0 * w_max + pad;
        if (family.packet_superposition()) {
            support.push_back({-p0 - r, -p0 + r});
            support.push_back({p0 - r, p0 + r});
        } else {
            support.push_back({p0 - r, p0 + r});
        }
        const auto& kernel = cache.get(pulse, grid, rel_tol, abs_tol, n_max, support);
        const double center = family.packet_superposition() ? std::abs(p0) : p0;
        for (std::size_t wi = 0; wi < map.widths.size(); ++wi) {
            try {
                auto psi = gaussian_packet(grid, center, map.widths[wi], family.packet_state(),
                                           family.packet_superposition());
                auto psi_f = apply_kernel(kernel, psi);
                map.values[di][wi] = family.is_mirror()
                                         ? mirror_efficiency(psi_f)
                                         : efficiency(psi_f, family.target_n0(), family.target_n());
            } catch (const std::exception& e) {
                throw std::runtime_error("efficiency_map at duration index " + std::to_string(di) +
                                         ", width index " + std::to_string(wi) + ": " + e.what());
            }
        }
    }
    return map;
}

/// Median over widths (up to width_cut) of the per-width argmax duration.
/// Argmax ties break toward the shortest duration; an even median count
/// selects the lower of the two central values.
inline double optimal_duration(const EfficiencyMap& map, double width_cut = 0.2) {
    std::vector<double> best;
    for (std::size_t wi = 0; wi < map.widths.size(); ++wi) {
        if (map.widths[wi] > width_cut + 1e-12) continue;
        std::size_t arg = 0;
        double v = map.values[0][wi];
        for (std::size_t di = 1; di < map.durations.size(); ++di) {
            if (map.values[di][wi] > v) {
                v = map.values[di][wi];
                arg = di;
            }
        }
        best.push_back(map.durations[arg]);
    }
    if (best.empty()) throw std::runtime_error("optimal_duration: no widths below cut");
    std::sort(best.begin(), best.end());
    return best[(best.size() - 1) / 2]; // lower median for even counts
}

/// Geometric duration grid with a fixed number of points per decade.
inline std::vector<double> geometric_durations(double lo, double hi, int per_decade) {
    std::vector<double> out;
    const double step = std::pow(10.0, 1.0 / per_decade);
    for (double d = lo; d <= hi * (1.0 + 1e-12); d *= step) out.push_back(d);
    return out;
}

/// Evenly spaced width grid.
inline std::vector<double> linear_widths(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1.0);
    return out;
}

} // namespace raman
