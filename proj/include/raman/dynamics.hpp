#pragma once

// The coupled amplitude equations for double Raman diffraction in the
// rotating frame, their adaptive integration, and a brute-force micro-step
// propagator used as an independent oracle.
//
// State layout: an AmplitudeLadder with indices n in [-n_max, n_max]. In
// natural units (omega_K = 1) the equations read
//   dg_n/dt = i W(t) e^{-i( w - chi + 1 + 2n) t} e_{n+1}
//           + i W(t) e^{-i(-w - chi + 1 - 2n) t} e_{n-1}
//   de_n/dt = i W(t) e^{-i( w + chi + 1 + 2n) t} g_{n+1}
//           + i W(t) e^{-i(-w + chi + 1 - 2n) t} g_{n-1}
// with w = omega_D/omega_K = 2 p and chi the resonance offset
// (Delta_omega - omega_eg)/omega_K. Laser phases vanish, the AC Stark shift
// is set to zero.

#include <complex>
#include <vector>

#include "raman/core.hpp"
#include "raman/grid.hpp"
#include "raman/ode.hpp"
#include "raman/resonance.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace raman {

struct CoupledSystem {
    PulseSpec pulse;
    double chi = 0.0;   // resonance offset (Delta_omega - omega_eg)/omega_K
    double w = 0.0;     // Doppler detuning omega_D/omega_K = 2 p
    int n_max = 0;

    static CoupledSystem make(const PulseSpec& pulse, double quasi_momentum, int n_max) {
        if (n_max < pulse.order + 2)
            throw std::invalid_argument("CoupledSystem: n_max must be >= order + 2");
        CoupledSystem s;
        s.pulse = pulse;
        s.chi = resonance_for(pulse).offset;
        s.w = 2.0 * quasi_momentum;
        s.n_max = n_max;
        return s;
    }
};

namespace detail {

// Flat buffer layout: [g_{-n_max}..g_{+n_max}, e_{-n_max}..e_{+n_max}]
inline void ladder_to_flat(const AmplitudeLadder& l, std::vector<cplx>& y) {
    const int sz = l.size();
    y.resize(2 * sz);
    for (int i = 0; i < sz; ++i) {
        y[i] = l.g[i];
        y[sz + i] = l.e[i];
    }
}

inline AmplitudeLadder flat_to_ladder(const std::vector<cplx>& y, double p, int n_max) {
    AmplitudeLadder l(p, n_max);
    const int sz = l.size();
    for (int i = 0; i < sz; ++i) {
        l.g[i] = y[i];
        l.e[i] = y[sz + i];
    }
    return l;
}

// Right-hand side on the flat buffer. Phase factors are generated
// incrementally: along the ladder each successive term picks up e^{-2it}
// (or its conjugate), so only two complex exponentials per evaluation.
struct CoupledRhs {
    const CoupledSystem* sys;

    void operator()(double t, const std::vector<cplx>& y, std::vector<cplx>& dy) const {
        const int n_max = sys->n_max;
        const int sz = 2 * n_max + 1;
        const double om = sys->pulse.omega(t);
        const cplx i_om(0.0, om);
        std::fill(dy.begin(), dy.end(), cplx(0));
        if (om == 0.0) return;

        const double w = sys->w, chi = sys->chi;
        const cplx step = std::polar(1.0, -2.0 * t);       // e^{-2it}
        const cplx step_c = std::conj(step);
        // phase A(n) = e^{-i(w - chi + 1 + 2n) t} at n = -n_max
        cplx pha = std::polar(1.0, -(w - chi + 1.0 - 2.0 * n_max) * t);
        // phase B(n) = e^{-i(-w - chi + 1 - 2n) t} at n = -n_max
        cplx phb = std::polar(1.0, -(-w - chi + 1.0 + 2.0 * n_max) * t);

        for (int i = 0; i < sz; ++i) {
            // dg_n:  A(n) e_{n+1} + B(n) e_{n-1}
            // de_n:  conj(B(n+1)) g_{n+1} + conj(A(n-1)) g_{n-1}
            if (i + 1 < sz) {
                const cplx cb1 = std::conj(phb * step_c); // conj(B(n+1))
                dy[i] += i_om * pha * y[sz + i + 1];
                dy[sz + i] += i_om * cb1 * y[i + 1];
            }
            if (i - 1 >= 0) {
                const cplx ca1 = std::conj(pha * step_c); // conj(A(n-1))
                dy[i] += i_om * phb * y[sz + i - 1];
                dy[sz + i] += i_om * ca1 * y[i - 1];
            }
            pha *= step;
            phb *= step_c;
        }
    }
};

} // namespace detail

/// Right-hand side of the coupled equations at time t.
inline AmplitudeLadder rhs(const CoupledSystem& sys, double t, const AmplitudeLadder& state) {
    std::vector<cplx> y, dy;
    detail::ladder_to_flat(state, y);
    dy.resize(y.size());
    detail::CoupledRhs{&sys}(t, y, dy);
    return detail::flat_to_ladder(dy, state.p, sys.n_max);
}

/// Integrates one pulse over its full window with the adaptive embedded
/// Runge-Kutta pair.
inline AmplitudeLadder integrate_pulse(const CoupledSystem& sys, const AmplitudeLadder& initial,
                                       double rel_tol = 1e-3, double abs_tol = 1e-6) {
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
        throw std::invalid_argument("integrate_pulse: tolerances must be > 0");
    if (initial.n_max != sys.n_max)
        throw std::invalid_argument("integrate_pulse: ladder/system n_max mismatch");
    std::vector<cplx> y;
    detail::ladder_to_flat(initial, y);
    OdeOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = abs_tol;
    integrate_dopri5(detail::CoupledRhs{&sys}, y, sys.pulse.shape.t_begin(),
                     sys.pulse.shape.t_end(), opt);
    return detail::flat_to_ladder(y, initial.p, sys.n_max);
}

/// Independent oracle: propagates by exponentiating the instantaneous
/// generator over uniform micro-steps with midpoint-sampled envelope and
/// phases. Each step is exactly unitary.
inline AmplitudeLadder brute_force_propagate(const CoupledSystem& sys,
                                             const AmplitudeLadder& initial, int n_steps) {
    if (n_steps < 10000)
        throw std::invalid_argument("brute_force_propagate: n_steps must be >= 1e4");
    const int n_max = sys.n_max;
    const int sz = 2 * n_max + 1;
    const int dim = 2 * sz;

    Eigen::VectorXcd v(dim);
    {
        std::vector<cplx> y;
        detail::ladder_to_flat(initial, y);
        for (int i = 0; i < dim; ++i) v(i) = y[i];
    }

    const double t0 = sys.pulse.shape.t_begin(), t1 = sys.pulse.shape.t_end();
    const double dt = (t1 - t0) / n_steps;
    Eigen::MatrixXcd H(dim, dim);
    for (int k = 0; k < n_steps; ++k) {
        const double t = t0 + (k + 0.5) * dt;
        const double om = sys.pulse.omega(t);
        if (om == 0.0) continue;
        H.setZero();
        for (int n = -n_max; n <= n_max; ++n) {
            const int ig = n + n_max, ie = sz + n + n_max;
            if (n + 1 <= n_max) {
                // g_n <- e_{n+1}
                cplx a = om * std::polar(1.0, -(sys.w - sys.chi + 1.0 + 2.0 * n) * t);
                H(ig, ie + 1) = a;
                H(ie + 1, ig) = std::conj(a);
            }
            if (n - 1 >= -n_max) {
                // g_n <- e_{n-1}
                cplx b = om * std::polar(1.0, -(-sys.w - sys.chi + 1.0 - 2.0 * n) * t);
                H(ig, ie - 1) = b;
                H(ie - 1, ig) = std::conj(b);
            }
        }
        // v <- exp(i H dt) v via eigendecomposition of the Hermitian generator
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        Eigen::VectorXcd phases =
            (cplx(0, dt) * es.eigenvalues().array().cast<cplx>()).exp().matrix();
        v = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * v;
    }

    std::vector<cplx> y(dim);
    for (int i = 0; i < dim; ++i) y[i] = v(i);
    return detail::flat_to_ladder(y, initial.p, n_max);
}

} // namespace raman
