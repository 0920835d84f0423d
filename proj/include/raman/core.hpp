#pragma once

// Core physical types: atomic species constants, pulse shapes and pulse
// specifications. All quantities are kept in natural units internally:
// momenta in hbar*K, frequencies in omega_K, times in 1/omega_K. SI values
// appear only in the species constants and at I/O boundaries.

#include <cmath>
#include <stdexcept>
#include <string>

namespace raman {

namespace phys {
// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
// Rb-87: mass from AME2020, D2 line wavelength (Steck, "Rubidium 87 D Line
// Data"), ground-state hyperfine splitting (exact, defines the Rb clock).
inline constexpr double rb87_mass_u = 86.909180531;
inline constexpr double rb87_d2_wavelength = 780.241209686e-9; // m
inline constexpr double rb87_hyperfine_splitting = 2.0 * M_PI * 6.834682610904290e9; // rad/s
} // namespace phys

struct AtomSpecies {
    double mass;               // kg
    double wavenumber_K;       // rad/m, two-photon K = (w_b + w_r)/c ~ 2*k
    double recoil_omega_K;     // rad/s, hbar K^2 / (2 M)
    double splitting_omega_eg; // rad/s
};

/// Rb-87 constants for counterpropagating 780 nm photon pairs.
inline AtomSpecies make_rb87() {
    AtomSpecies a;
    a.mass = phys::rb87_mass_u * phys::atomic_mass_unit;
    a.wavenumber_K = 2.0 * (2.0 * M_PI / phys::rb87_d2_wavelength);
    a.recoil_omega_K = phys::hbar * a.wavenumber_K * a.wavenumber_K / (2.0 * a.mass);
    a.splitting_omega_eg = phys::rb87_hyperfine_splitting;
    return a;
}

/// Temporal envelope of a pulse, unit peak amplitude. Times in 1/omega_K.
struct PulseShape {
    enum class Kind { Gaussian, Box };

    Kind kind = Kind::Box;
    double width = 0.0;  // Gaussian temporal width dtau, or box duration tau
    double window = 0.0; // total integration window

    static PulseShape gaussian(double dtau, double window_factor = 8.0) {
        if (dtau <= 0.0) throw std::invalid_argument("PulseShape: dtau must be > 0");
        PulseShape s;
        s.kind = Kind::Gaussian;
        s.width = dtau;
        s.window = window_factor * dtau;
        return s;
    }

    static PulseShape box(double tau) {
        if (tau <= 0.0) throw std::invalid_argument("PulseShape: tau must be > 0");
        PulseShape s;
        s.kind = Kind::Box;
        s.width = tau;
        s.window = tau;
        return s;
    }

    // Integration span. Every pulse runs over [0, window] with the
    // rotating-frame phases referenced to the pulse start; the Gaussian
    // envelope peaks at the window center. Populations are invariant under
    // this time-origin choice (it is a diagonal gauge), but interferometer
    // phases are not: pulses of different durations imprint different
    // momentum-dependent phases, as they would for lasers whose relative
    // phase is defined at each pulse's start.
    double t_begin() const { return 0.0; }
    double t_end() const { return window; }

    /// Envelope value in [0, 1].
    double envelope(double t) const {
        if (kind == Kind::Box) return 1.0;
        const double u = t - 0.5 * window;
        return std::exp(-u * u / (2.0 * width * width));
    }
};

enum class Process { DoubleRest, DopplerSingle, DoubleMirror };
enum class Direction { GroundToExcited, ExcitedToGround };

/// Full description of one diffraction pulse. amplitude is Omega_0/omega_K.
struct PulseSpec {
    PulseShape shape;
    double amplitude = 0.0; // Omega_0 in units of omega_K
    int order = 1;          // diffraction order, odd
    Process process = Process::DoubleRest;
    int n0 = 0;             // initial ladder index for DopplerSingle
    Direction direction = Direction::GroundToExcited;
    double area = 0.0;      // dimensionless pulse area
    double delta = 0.0;     // resonance offset delta, units of omega_K
    double alpha = 0.0;     // third-order area parameter
    double beta = 0.0;      // third-order light-shift parameter

    double omega(double t) const { return amplitude * shape.envelope(t); }

    void validate() const {
        if (order % 2 == 0) throw std::invalid_argument("PulseSpec: order must be odd");
        if (amplitude < 0.0) throw std::invalid_argument("PulseSpec: amplitude must be >= 0");
    }
};

} // namespace raman
