#pragma once

#include <functional>

#include "zetaheat/kernels.hpp"

// Adaptive integration of trace functions on (0, inf) with power / power-log
// weights, plus a fixed-order Gauss-Jacobi rule on [0,1] for the Xi transform.

namespace zetaheat::quadrature {

enum class WeightKind { power, power_log };

struct Weight {
    WeightKind kind;
    double alpha;  // w(tau) = tau^alpha  or  tau^alpha * ln(tau)

    static Weight power(double a) { return {WeightKind::power, a}; }
    static Weight power_log(double a) { return {WeightKind::power_log, a}; }

    double operator()(double tau) const;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    long evaluations;
    double bridge_contribution;
};

struct QuadratureOptions {
    double tau_min = 0.01;     // bridge edge before decay rescaling
    long budget = 20000;       // trace evaluations per integral
    int bridge_degree = 8;     // see notes in integrate_trace
    int bridge_points = 33;
    double theta = 45.0;       // sets the finite upper endpoint via the decay law
};

using TraceFn = std::function<kernels::TraceSample(double)>;

/// value = int_0^inf w(tau) f(tau) dtau.
/// (i) bridge on [0, tau_b]: polynomial fit of f on [tau_b, 8 tau_b]
///     integrated against w analytically (log moments in closed form);
/// (ii) adaptive bisection with an embedded 15/7-point rule on [tau_b, T];
/// (iii) analytic tail bound beyond T folded into the error estimate.
/// tau_b = min(tau_min, 0.01 lambda_min^{-1/h}) so the fit window stays well
/// inside the decay scale. tol is relative. Throws budget_error when the
/// budget is exhausted before reaching tol.
QuadratureResult integrate_trace(const TraceFn& f, Weight weight, double lambda_min,
                                 double h, double tol,
                                 const QuadratureOptions& opts = {});

/// int_0^1 f(x) (1-x)^{b-1} dx with precomputed 40-node Gauss-Jacobi points;
/// exact (to roundoff) for polynomial f up to degree 79.
double integrate_unit_jacobi(const std::function<double(double)>& f, double b);

}  // namespace zetaheat::quadrature
