#pragma once

// Method of averaging for the third-order resonance: Fourier coupling
// matrices, averaged generators up to third order, the effective three-level
// Hamiltonian, box-pulse analytics and a cross-check against full dynamics.
//
// Basis: v = (..., e_{n-1}, g_n, e_{n+1}, ...) with index n in
// [-n_max, n_max]; slot n holds g_n for even n and e_n for odd n. The
// coupling matrices are built at delta = 0; delta is reinstated on the
// e_{+-3} diagonal of the effective model.

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "raman/dynamics.hpp"

namespace raman {

struct FourierCoupling {
    int nu = 0;
    int n_max = 0;
    Eigen::MatrixXd matrix; // entries in {0, 1}
};

/// Dimensionless Fourier coupling matrix H_nu of the box-pulse generator
/// i Omega_0 (H_0 + sum_{nu != 0} e^{i nu 2 omega_K t} H_nu).
inline FourierCoupling build_coupling(int nu, int n_max) {
    if (n_max < 5) throw std::invalid_argument("build_coupling: n_max must be >= 5");
    const int dim = 2 * n_max + 1;
    FourierCoupling fc;
    fc.nu = nu;
    fc.n_max = n_max;
    fc.matrix = Eigen::MatrixXd::Zero(dim, dim);
    auto idx = [n_max](int n) { return n + n_max; };
    for (int n = -n_max; n <= n_max; ++n) {
        const bool even = ((n % 2) + 2) % 2 == 0;
        if (even) {
            // g -> e transitions
            if (n + 1 <= n_max && nu == 4 - n) fc.matrix(idx(n), idx(n + 1)) = 1.0;
            if (n - 1 >= -n_max && nu == 4 + n) fc.matrix(idx(n), idx(n - 1)) = 1.0;
        } else {
            // e -> g transitions
            if (n + 1 <= n_max && nu == -(n + 5)) fc.matrix(idx(n), idx(n + 1)) = 1.0;
            if (n - 1 >= -n_max && nu == n - 5) fc.matrix(idx(n), idx(n - 1)) = 1.0;
        }
    }
    return fc;
}

/// Largest |nu| with a nonzero coupling matrix for this basis size.
inline int max_nonzero_nu(int n_max) { return n_max + 5; }

/// Averaged generator of the requested order, in units of omega_K.
/// order 1: Omega_0 H_0; order 2: Omega_0^2 sum_{nu != 0} H_{-nu} H_nu / (2 nu);
/// order 3: the double-commutator sums with prefactors 1/12 and 1/8.
inline Eigen::MatrixXd averaged_generator(int order, double omega0, int n_max,
                                          int nu_max = -1) {
    if (order < 1 || order > 3) throw std::invalid_argument("averaged_generator: order in {1,2,3}");
    if (n_max < 5) throw std::invalid_argument("averaged_generator: n_max must be >= 5");
    if (nu_max < 0) nu_max = max_nonzero_nu(n_max);
    if (nu_max < 5) throw std::invalid_argument("averaged_generator: nu_max must be >= 5");

    const int dim = 2 * n_max + 1;
    auto H = [n_max](int nu) { return build_coupling(nu, n_max).matrix; };

    auto compute = [&](int vmax) -> Eigen::MatrixXd {
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(dim, dim);
        if (order == 1) {
            G = omega0 * H(0);
        } else if (order == 2) {
            for (int nu = -vmax; nu <= vmax; ++nu) {
                if (nu == 0) continue;
                G += omega0 * omega0 / (2.0 * nu) * (H(-nu) * H(nu));
            }
        } else {
            auto comm = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
                return (a * b - b * a).eval();
            };
            const double om3 = omega0 * omega0 * omega0;
            for (int nu = -vmax; nu <= vmax; ++nu) {
                if (nu == 0) continue;
                for (int sg = -vmax; sg <= vmax; ++sg) {
                    if (sg == 0 || nu + sg == 0) continue;
                    G -= om3 / 12.0 / (nu * (nu + sg)) * comm(H(-nu - sg), comm(H(nu), H(sg)));
                }
            }
            const Eigen::MatrixXd H0 = H(0);
            for (int mu = -vmax; mu <= vmax; ++mu) {
                if (mu == 0) continue;
                G -= om3 / 8.0 / (mu * mu) * comm(H(mu), comm(H(-mu), H0));
            }
        }
        return G;
    };

    Eigen::MatrixXd G = compute(nu_max);
    if (nu_max < max_nonzero_nu(n_max)) {
        // verify the (g_0, e_{+-3}) block is converged in the truncation
        Eigen::MatrixXd G2 = compute(nu_max + 1);
        auto idx = [n_max](int n) { return n + n_max; };
        double d = std::max({std::abs(G(idx(0), idx(3)) - G2(idx(0), idx(3))),
                             std::abs(G(idx(0), idx(-3)) - G2(idx(0), idx(-3))),
                             std::abs(G(idx(0), idx(0)) - G2(idx(0), idx(0))),
                             std::abs(G(idx(3), idx(3)) - G2(idx(3), idx(3)))});
        if (d > 1e-12)
            throw std::runtime_error("averaged_generator: nu_max truncation insufficient");
    }
    return G;
}

/// Effective Hamiltonian on (e_{-3}, g_0, e_{+3}) in units of omega_K:
/// order-1+2+3 averaged block with delta added to the e_{+-3} diagonal.
struct EffectiveHamiltonian3 {
    Eigen::Matrix3d matrix;
};

inline EffectiveHamiltonian3 effective_three_level(double omega0, double delta, int n_max = 7) {
    Eigen::MatrixXd G = averaged_generator(1, omega0, n_max) +
                        averaged_generator(2, omega0, n_max) +
                        averaged_generator(3, omega0, n_max);
    auto idx = [n_max](int n) { return n + n_max; };
    const int sel[3] = {idx(-3), idx(0), idx(3)};
    EffectiveHamiltonian3 h;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) h.matrix(r, c) = G(sel[r], sel[c]);
    h.matrix(0, 0) += delta;
    h.matrix(2, 2) += delta;
    return h;
}

/// Box-pulse analytics: compensating detuning and pulse area.
struct BoxPulseAnalytics {
    double delta = 0.0;
    double area = 0.0;
};

inline BoxPulseAnalytics box_pulse_analytics(double omega0, double tau) {
    if (omega0 < 0.0 || tau < 0.0)
        throw std::invalid_argument("box_pulse_analytics: omega0, tau must be >= 0");
    BoxPulseAnalytics b;
    b.delta = -9.0 * omega0 * omega0 / 16.0;
    b.area = std::sqrt(2.0) * omega0 * omega0 * omega0 * tau / 32.0;
    return b;
}

/// Implied third-order parameters of a box pulse: alpha = sqrt(2)/32,
/// beta = -9/16.
inline std::pair<double, double> box_pulse_alpha_beta() {
    return {std::sqrt(2.0) / 32.0, -9.0 / 16.0};
}

struct CrossValidationReport {
    double omega0 = 0.0;
    double tau = 0.0;
    double numeric_coupling = 0.0;   // (g_0, e_3) entry of the order-3 generator
    double analytic_coupling = 0.0;  // -Omega_0^3 / 32
    double numeric_shift_e = 0.0;    // e_{+-3} diagonal of the order-2 generator
    double numeric_shift_g = 0.0;    // g_0 diagonal
    double analytic_shift_e = 0.0;   // 5 Omega_0^2 / 16
    double analytic_shift_g = 0.0;   // -Omega_0^2 / 4
    double pop_full[2] = {0, 0};     // |e_{-3}|^2, |e_{+3}|^2 from full dynamics
    double pop_effective[2] = {0, 0};
    double max_deviation = 0.0;
    bool pass = false;
    double tol = 0.0;
};

/// Integrates the full box-pulse dynamics at omega_D = 0 from g_0 with the
/// box-analytic resonance and compares the e_{+-3} populations against the
/// effective three-level prediction.
inline CrossValidationReport cross_validate(double omega0, double tau, double tol,
                                            double rel_tol = 1e-8, double abs_tol = 1e-10) {
    CrossValidationReport r;
    r.omega0 = omega0;
    r.tau = tau;
    r.tol = tol;

    const int n_max = 7;
    auto idx = [](int n) { return n + 7; };
    Eigen::MatrixXd G3 = averaged_generator(3, omega0, n_max);
    Eigen::MatrixXd G2 = averaged_generator(2, omega0, n_max);
    r.numeric_coupling = G3(idx(0), idx(3));
    r.analytic_coupling = -omega0 * omega0 * omega0 / 32.0;
    r.numeric_shift_e = G2(idx(3), idx(3));
    r.numeric_shift_g = G2(idx(0), idx(0));
    r.analytic_shift_e = 5.0 * omega0 * omega0 / 16.0;
    r.analytic_shift_g = -omega0 * omega0 / 4.0;

    const double delta = box_pulse_analytics(omega0, tau).delta;

    if (omega0 > 0.0 && tau > 0.0) {
        // full dynamics
        PulseSpec pulse;
        pulse.shape = PulseShape::box(tau);
        pulse.amplitude = omega0;
        pulse.order = 3;
        pulse.process = Process::DoubleRest;
        pulse.beta = -9.0 / 16.0;
        pulse.delta = delta;
        auto sys = CoupledSystem::make(pulse, 0.0, n_max);
        AmplitudeLadder init(0.0, n_max);
        init.g_at(0) = 1.0;
        auto fin = integrate_pulse(sys, init, rel_tol, abs_tol);
        r.pop_full[0] = std::norm(fin.e_at(-3));
        r.pop_full[1] = std::norm(fin.e_at(3));

        // effective three-level prediction, v' = i H v with Hermitian H
        Eigen::Matrix3d H = effective_three_level(omega0, delta, n_max).matrix;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(H);
        Eigen::Vector3cd phases =
            (cplx(0, tau) * es.eigenvalues().array().cast<cplx>()).exp().matrix();
        Eigen::Vector3cd v0(0.0, 1.0, 0.0);
        Eigen::Vector3cd v = es.eigenvectors().cast<cplx>() * phases.asDiagonal() *
                             es.eigenvectors().cast<cplx>().adjoint() * v0;
        r.pop_effective[0] = std::norm(v(0));
        r.pop_effective[1] = std::norm(v(2));
    }
    r.max_deviation = std::max(std::abs(r.pop_full[0] - r.pop_effective[0]),
                               std::abs(r.pop_full[1] - r.pop_effective[1]));
    r.pass = r.max_deviation <= tol;
    return r;
}

} // namespace raman
