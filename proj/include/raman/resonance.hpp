#pragma once

// Resonance conditions and light-shift corrections for every process kind,
// plus calibration of the peak Rabi frequency from a requested pulse area.

#include <cmath>
#include <stdexcept>

#include "raman/core.hpp"

namespace raman {

/// Laser frequency difference written as Delta_omega = omega_eg + offset*omega_K.
/// offset already contains the light-shift correction delta.
struct ResonanceSetting {
    double offset = 0.0; // multiple of omega_K added to omega_eg
    double delta = 0.0;  // dimensionless light-shift part of the offset
};

/// First-order double diffraction at rest: Delta_omega = omega_eg + omega_K.
inline ResonanceSetting first_order_resonance() { return {1.0, 0.0}; }

/// Two-photon light shift for Doppler-detuned box pulses starting at
/// p0 = n0 hbar K. Positive for e->g transitions, negative for g->e.
inline double doppler_box_delta(int n0, Direction dir, double omega0) {
    if (n0 < 1) throw std::invalid_argument("doppler_box_delta: n0 must be >= 1");
    double mag = omega0 * omega0 * (2.0 * n0 + 1.0) / (4.0 * n0 * (n0 + 1.0));
    return dir == Direction::ExcitedToGround ? mag : -mag;
}

/// Resonance for a Doppler-detuned single-diffraction box pulse between the
/// ladder sites n0 and n0+1. The bare offset is -(2 n0 + 1) for e->g and
/// +(2 n0 + 1) for g->e.
inline ResonanceSetting doppler_box_resonance(int n0, Direction dir, double omega0) {
    double delta = doppler_box_delta(n0, dir, omega0);
    double bare = dir == Direction::ExcitedToGround ? -(2.0 * n0 + 1.0) : (2.0 * n0 + 1.0);
    return {bare + delta, delta};
}

/// Third-order resonance: Delta_omega = omega_eg + (9 + delta) omega_K with
/// delta = beta * Omega_0^2 / omega_K^2.
inline ResonanceSetting third_order_resonance(double beta, double omega0) {
    if (omega0 < 0.0) throw std::invalid_argument("third_order_resonance: omega0 must be >= 0");
    double delta = beta * omega0 * omega0;
    return {9.0 + delta, delta};
}

/// Resonance offset for an already-calibrated pulse.
inline ResonanceSetting resonance_for(const PulseSpec& pulse) {
    switch (pulse.process) {
        case Process::DopplerSingle:
            return doppler_box_resonance(pulse.n0, pulse.direction, pulse.amplitude);
        case Process::DoubleRest:
        case Process::DoubleMirror:
            if (pulse.order == 1) return first_order_resonance();
            return third_order_resonance(pulse.beta, pulse.amplitude);
    }
    throw std::logic_error("resonance_for: unknown process");
}

namespace detail {
// Composite Simpson over the pulse window of envelope^power.
inline double envelope_power_integral(const PulseShape& shape, int power) {
    const int n = 4096; // intervals, even
    double a = shape.t_begin(), b = shape.t_end();
    double h = (b - a) / n;
    auto f = [&](double t) { return std::pow(shape.envelope(t), power); };
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}
} // namespace detail

/// Pulse-area functional for a calibrated pulse, integrated numerically over
/// the truncation window. Conventions per process kind:
///   DoubleRest/DoubleMirror order 1:  A = int sqrt(2) Omega(t) dt
///   DoubleRest/DoubleMirror order 3:  A = int alpha Omega^3(t) dt  (Omega in omega_K)
///   DopplerSingle:                    A = int 2 Omega(t) dt
inline double pulse_area(const PulseSpec& pulse) {
    if (pulse.process == Process::DopplerSingle)
        return 2.0 * pulse.amplitude * detail::envelope_power_integral(pulse.shape, 1);
    if (pulse.order == 1)
        return std::sqrt(2.0) * pulse.amplitude * detail::envelope_power_integral(pulse.shape, 1);
    if (pulse.order == 3) {
        double om3 = pulse.amplitude * pulse.amplitude * pulse.amplitude;
        return pulse.alpha * om3 * detail::envelope_power_integral(pulse.shape, 3);
    }
    throw std::invalid_argument("pulse_area: unsupported order");
}

/// Solves the area functional for Omega_0. alpha is used only for order 3.
inline double amplitude_for_area(const PulseShape& shape, int order, Process process,
                                 double target_area, double alpha = 0.0) {
    if (target_area <= 0.0)
        throw std::invalid_argument("amplitude_for_area: target area must be > 0");
    if (order == 1) {
        double pref = process == Process::DopplerSingle ? 2.0 : std::sqrt(2.0);
        return target_area / (pref * detail::envelope_power_integral(shape, 1));
    }
    if (order == 3) {
        if (alpha <= 0.0)
            throw std::invalid_argument("amplitude_for_area: alpha must be > 0 for order 3");
        double i3 = detail::envelope_power_integral(shape, 3);
        return std::cbrt(target_area / (alpha * i3));
    }
    throw std::invalid_argument("amplitude_for_area: unsupported order");
}

/// Builds a fully calibrated pulse: Omega_0 from the area convention, delta
/// from the process-specific light-shift formula.
inline PulseSpec calibrate_pulse(PulseShape shape, int order, Process process, double area,
                                 int n0 = 0, Direction dir = Direction::GroundToExcited,
                                 double alpha = 0.0, double beta = 0.0) {
    PulseSpec p;
    p.shape = shape;
    p.order = order;
    p.process = process;
    p.n0 = n0;
    p.direction = dir;
    p.area = area;
    p.alpha = alpha;
    p.beta = beta;
    p.amplitude = amplitude_for_area(shape, order, process, area, alpha);
    p.delta = resonance_for(p).delta;
    p.validate();
    return p;
}

} // namespace raman
