#pragma once

// Embedded Dormand-Prince 5(4) integrator with adaptive step control on
// complex state vectors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace raman {

struct OdeOptions {
    double rel_tol = 1e-3;
    double abs_tol = 1e-6;
    // minimum step as a fraction of the integration span; long spans of
    // fast-oscillating phases legitimately need steps many orders below the
    // span, so the floor only guards against true stagnation
    double min_step_fraction = 1e-12;
};

class StepUnderflowError : public std::runtime_error {
public:
    explicit StepUnderflowError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Integrates dy/dt = f(t, y, dy) from t0 to t1 in place.
/// f writes the derivative of y into dy (same size).
template <typename Rhs>
void integrate_dopri5(Rhs&& f, std::vector<std::complex<double>>& y, double t0, double t1,
                      const OdeOptions& opt = {}) {
    using cvec = std::vector<std::complex<double>>;
    // Dormand-Prince RK5(4)7M coefficients
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // error coefficients b - b_hat
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const std::size_t n = y.size();
    const double span = t1 - t0;
    if (span <= 0.0) return;
    const double h_min = opt.min_step_fraction * span;

    cvec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    double t = t0;
    double h = span / 100.0;
    f(t, y, k1);

    while (t < t1) {
        if (t + h > t1) h = t1 - t;

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
        f(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);

        // scaled RMS error estimate
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> de =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double r = std::abs(de) / sc;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7); // FSAL
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < h_min && t < t1)
            throw StepUnderflowError("integrate_dopri5: step underflow at t = " + std::to_string(t));
    }
}

} // namespace raman
