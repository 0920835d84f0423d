#pragma once

// Pulse sequences (three-pulse LMT transfer) and the third-order
// double-Raman Mach-Zehnder interferometer with path projection, free
// evolution and fringe extraction.

#include <cmath>
#include <optional>
#include <vector>

#include "raman/analysis.hpp"
#include "raman/kernel.hpp"
#include "raman/optimizer.hpp"
#include "raman/resonance.hpp"

namespace raman {

/// Momentum window of width hbar K centered on n hbar K, restricted to one
/// internal state. Models a blow-away pulse.
struct Projection {
    int n = 0;
    InternalState state = InternalState::Excited;
};

struct SequenceStep {
    PulseSpec pulse;
    ResonanceSetting resonance; // bookkeeping; the pulse's delta is authoritative
    std::optional<Projection> projection;
};

inline SequenceStep make_step(const PulseSpec& pulse, std::optional<Projection> proj = {}) {
    return SequenceStep{pulse, resonance_for(pulse), std::move(proj)};
}

/// Zeroes amplitudes outside the projection window and internal state.
/// No renormalization: losses are physical.
inline SpinorWavePacket project(const SpinorWavePacket& psi, const Projection& proj) {
    SpinorWavePacket out(psi.grid);
    const int m = psi.grid.m;
    const int j_lo = static_cast<int>(std::ceil((proj.n - 0.5) * m - 1e-9));
    const int j_hi = static_cast<int>(std::ceil((proj.n + 0.5) * m - 1e-9)) - 1;
    const auto& src = proj.state == InternalState::Ground ? psi.g_amp : psi.e_amp;
    auto& dst = proj.state == InternalState::Ground ? out.g_amp : out.e_amp;
    for (int j = std::max(j_lo, -psi.grid.half_n); j <= std::min(j_hi, psi.grid.half_n); ++j) {
        int i = psi.grid.index_of(j);
        dst[i] = src[i];
    }
    return out;
}

struct SequenceContext {
    KernelCache* cache = nullptr;
    double rel_tol = 1e-3;
    double abs_tol = 1e-6;
    int jobs = 1;
    // relative amplitude threshold defining the kernel support of a packet
    double support_threshold = 1e-8;
    double support_pad = 0.05;
};

namespace detail {
// Quasi-momentum intervals where the packet has non-negligible amplitude.
inline SupportIntervals packet_support(const SpinorWavePacket& psi, double rel_threshold,
                                       double pad) {
    double peak = 0.0;
    for (std::size_t i = 0; i < psi.g_amp.size(); ++i)
        peak = std::max(peak, std::max(std::abs(psi.g_amp[i]), std::abs(psi.e_amp[i])));
    SupportIntervals out;
    if (peak == 0.0) return {{0.0, 0.0}};
    const double thr = peak * rel_threshold;
    bool open = false;
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < psi.grid.size(); ++i) {
        bool on = std::abs(psi.g_amp[i]) > thr || std::abs(psi.e_amp[i]) > thr;
        double p = psi.grid.sample(i);
        if (on && !open) {
            lo = p - pad;
            open = true;
        }
        if (on) hi = p + pad;
        if (!on && open && p > hi) {
            out.push_back({lo, hi});
            open = false;
        }
    }
    if (open) out.push_back({lo, hi});
    return out;
}
} // namespace detail

/// Folds apply_kernel over the steps, applying the optional projection after
/// each pulse. Kernel supports are derived from the running packet.
inline SpinorWavePacket run_sequence(SequenceContext& ctx, const SpinorWavePacket& psi_i,
                                     const std::vector<SequenceStep>& steps) {
    if (steps.empty()) throw std::invalid_argument("run_sequence: no steps");
    SpinorWavePacket psi = psi_i;
    for (std::size_t s = 0; s < steps.size(); ++s) {
        try {
            const auto& step = steps[s];
            auto support = detail::packet_support(psi, ctx.support_threshold, ctx.support_pad);
            int n_max = select_n_max(step.pulse, ctx.rel_tol, ctx.abs_tol);
            const auto& kernel = ctx.cache->get(step.pulse, psi.grid, ctx.rel_tol, ctx.abs_tol,
                                                n_max, support);
            psi = apply_kernel(kernel, psi);
            if (step.projection) psi = project(psi, *step.projection);
        } catch (const std::exception& e) {
            throw std::runtime_error("run_sequence: step " + std::to_string(s) + ": " + e.what());
        }
    }
    return psi;
}

/// Free evolution for a time T (seconds): every amplitude acquires
/// exp(-i p^2/(2 m hbar) T); excited amplitudes additionally
/// exp(-i omega_eg T).
inline SpinorWavePacket free_evolution(const AtomSpecies& atom, const SpinorWavePacket& psi,
                                       double T) {
    if (T < 0.0) throw std::invalid_argument("free_evolution: T must be >= 0");
    SpinorWavePacket out(psi.grid);
    const double wkT = atom.recoil_omega_K * T;
    const double egT = atom.splitting_omega_eg * T;
    for (int i = 0; i < psi.grid.size(); ++i) {
        const double x = psi.grid.sample(i); // hbar K units; kinetic phase x^2 wK T
        const cplx kin = std::polar(1.0, -x * x * wkT);
        out.g_amp[i] = psi.g_amp[i] * kin;
        out.e_amp[i] = psi.e_amp[i] * kin * std::polar(1.0, -egT);
    }
    return out;
}

struct MzSignal {
    std::vector<double> phases;      // rad
    std::vector<double> intensities; // dimensionless
    double amplitude = 0.0;          // max(I) + min(I)
    double contrast = 0.0;           // (max - min)/amplitude
    double phase_offset = 0.0;       // fringe offset from the cosine fit
    double fit_residual = 0.0;       // max |I - fit|
};

struct MzPulseParams {
    double dtau = 0.0; // natural units
    double alpha = 0.0;
    double beta = 0.0;
};

struct MzConfig {
    MzPulseParams beam_splitter;
    MzPulseParams mirror; // shared mode: equal to beam_splitter (area doubled)
    double T = 0.0;       // free-evolution time per zone, seconds
    int n_phases = 64;
};

/// Simulates both arms of the third-order Mach-Zehnder interferometer and
/// extracts the fringe. The upper arm is projected onto (+3, e) after the
/// first beam splitter and (-3, e) after the mirror; the lower arm is the
/// mirror image. The signal is the central-port intensity versus the phase
/// delta_phi imprinted on the upper arm.
inline MzSignal mach_zehnder(const AtomSpecies& atom, double dp, const MzConfig& cfg,
                             SequenceContext& ctx) {
    if (cfg.n_phases < 64) throw std::invalid_argument("mach_zehnder: need >= 64 phase samples");
    PulseSpec bs = calibrate_pulse(PulseShape::gaussian(cfg.beam_splitter.dtau), 3,
                                   Process::DoubleRest, M_PI_2, 0, Direction::GroundToExcited,
                                   cfg.beam_splitter.alpha, cfg.beam_splitter.beta);
    PulseSpec mirror = calibrate_pulse(PulseShape::gaussian(cfg.mirror.dtau), 3,
                                       Process::DoubleMirror, M_PI, 0, Direction::GroundToExcited,
                                       cfg.mirror.alpha, cfg.mirror.beta);

    MomentumGrid grid = MomentumGrid::make(dp, 3.5 + 6.0 * dp + 0.1);
    auto psi0 = gaussian_packet(grid, 0.0, dp, InternalState::Ground);

    auto arm = [&](int sign) {
        std::vector<SequenceStep> steps;
        steps.push_back(make_step(bs, Projection{3 * sign, InternalState::Excited}));
        auto psi = run_sequence(ctx, psi0, {steps.back()});
        psi = free_evolution(atom, psi, cfg.T);
        steps.clear();
        steps.push_back(make_step(mirror, Projection{-3 * sign, InternalState::Excited}));
        psi = run_sequence(ctx, psi, {steps.back()});
        psi = free_evolution(atom, psi, cfg.T);
        steps.clear();
        steps.push_back(make_step(bs));
        return run_sequence(ctx, psi, {steps.back()});
    };
    SpinorWavePacket up = arm(+1);
    SpinorWavePacket low = arm(-1);

    // central exit port: |p| < hbar K / 2, both internal states
    const int m = grid.m;
    const int j_lo = static_cast<int>(std::ceil(-0.5 * m - 1e-9));
    const int j_hi = static_cast<int>(std::ceil(0.5 * m - 1e-9)) - 1;

    MzSignal sig;
    sig.phases.resize(cfg.n_phases);
    sig.intensities.resize(cfg.n_phases);
    for (int k = 0; k < cfg.n_phases; ++k) {
        const double phi = 2.0 * M_PI * k / cfg.n_phases;
        const cplx ph = std::polar(1.0, phi);
        double I = 0.0;
        for (int j = j_lo; j <= j_hi; ++j) {
            int i = grid.index_of(j);
            I += std::norm(up.g_amp[i] * ph + low.g_amp[i]) +
                 std::norm(up.e_amp[i] * ph + low.e_amp[i]);
        }
        sig.phases[k] = phi;
        sig.intensities[k] = I * grid.spacing();
    }

    // least squares on {1, cos, sin}; exact on the uniform phase grid
    double a0 = 0.0, a1 = 0.0, a2 = 0.0;
    for (int k = 0; k < cfg.n_phases; ++k) {
        a0 += sig.intensities[k];
        a1 += sig.intensities[k] * std::cos(sig.phases[k]);
        a2 += sig.intensities[k] * std::sin(sig.phases[k]);
    }
    a0 /= cfg.n_phases;
    a1 *= 2.0 / cfg.n_phases;
    a2 *= 2.0 / cfg.n_phases;
    sig.amplitude = 2.0 * a0;
    if (sig.amplitude < 1e-9)
        throw std::runtime_error("mach_zehnder: degenerate signal, amplitude < 1e-9");
    sig.contrast = std::sqrt(a1 * a1 + a2 * a2) / a0;
    sig.phase_offset = std::atan2(-a2, a1);
    for (int k = 0; k < cfg.n_phases; ++k) {
        double fit = a0 + a1 * std::cos(sig.phases[k]) + a2 * std::sin(sig.phases[k]);
        sig.fit_residual = std::max(sig.fit_residual, std::abs(sig.intensities[k] - fit));
    }
    return sig;
}

/// Jointly optimizes one (alpha, beta) pair shared by the beam splitters and
/// the mirror (same duration, doubled mirror area) for maximal fringe
/// amplitude.
struct InterferometerOptimum {
    double alpha = 0.0;
    double beta = 0.0;
    double amplitude = 0.0;
    double contrast = 0.0;
    int evals = 0;
    std::vector<std::vector<double>> trace;
};

inline InterferometerOptimum optimize_interferometer(const AtomSpecies& atom, double dtau,
                                                     double dp, SequenceContext& ctx,
                                                     int max_evals = 400) {
    if (dtau <= 0.0 || dp <= 0.0)
        throw std::invalid_argument("optimize_interferometer: dtau, dp must be > 0");
    auto objective = [&](const std::vector<double>& x) {
        const double alpha = std::round(x[0] * 1e10) / 1e10;
        const double beta = std::round(x[1] * 1e10) / 1e10;
        if (alpha <= 1e-6) return 1.0;
        MzConfig cfg;
        cfg.beam_splitter = {dtau, alpha, beta};
        cfg.mirror = cfg.beam_splitter;
        try {
            return -mach_zehnder(atom, dp, cfg, ctx).amplitude;
        } catch (const std::runtime_error&) {
            return 1.0; // degenerate signal: off the useful domain
        }
    };

    auto [alpha0, beta0] = box_pulse_alpha_beta();
    SimplexConfig cfg;
    cfg.initial_point = {alpha0, beta0};
    cfg.initial_step = {0.3 * alpha0, 0.3 * std::abs(beta0)};
    cfg.max_evals = max_evals;
    auto r = nelder_mead(objective, cfg);

    InterferometerOptimum out;
    out.alpha = r.x[0];
    out.beta = r.x[1];
    out.amplitude = -r.value;
    out.evals = r.evals;
    out.trace = std::move(r.trace);
    if (out.amplitude <= 1e-6)
        throw std::runtime_error("optimize_interferometer: optimization diverged");
    MzConfig best;
    best.beam_splitter = {dtau, out.alpha, out.beta};
    best.mirror = best.beam_splitter;
    out.contrast = mach_zehnder(atom, dp, best, ctx).contrast;
    return out;
}

} // namespace raman
