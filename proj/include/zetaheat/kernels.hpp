#pragma once

#include <vector>

#include "zetaheat/spectrum.hpp"

// Single-mode modified heat kernels k_{n,m}(tau, lambda) in two independent
// representations, and their mode-summed traces K_{n,m}(tau, D).
//
// Per mode, k_{n,m}(tau, lambda) = -d^{n+m+1}/dtau^{n+m+1} [tau^n e^{-lambda tau^h}].

namespace zetaheat::kernels {

struct KernelIndex {
    int n;  // dimension, >= 0
    int h;  // order, >= 1
    int m;  // parts-depth, >= -n

    KernelIndex(int n_, int h_, int m_);

    int q() const;   // m = q h + r, requires m >= 0
    int r() const;   // 0 <= r < h
    int mu() const;  // mu = -m, requires m < 0
};

// Exact representation sum_p c_p tau^p * e^{-lambda tau^h}.
struct PolyExpFunction {
    std::vector<std::pair<int, double>> terms;  // (power, coefficient), powers ascending
    double decay;                               // lambda
    int order;                                  // h

    double operator()(double tau) const;
    double coefficient(int power) const;        // 0 when absent
    PolyExpFunction derivative() const;
};

/// Exact kernel via the monomial derivative recurrence
/// c tau^p -> c p tau^{p-1} - h lambda c tau^{p+h-1}, applied n+m+1 times, negated.
PolyExpFunction mode_kernel_polyexp(const KernelIndex& idx, double lambda);

// Prefactor, leading tau power, and hFh parameter lists; argument z = -lambda tau^h.
struct HypKernelParams {
    double prefactor;
    int leading_power;
    std::vector<double> a_list;
    std::vector<double> b_list;
};

HypKernelParams hyp_params(const KernelIndex& idx, double lambda);

/// Hypergeometric-path kernel value. The hFh series coefficients come from
/// the parameter lists by term recurrence; the alternating sum is evaluated
/// in the cancellation-free factored form e^{-x} * S(x) (S polynomial), since
/// raw summation at x near 30 loses all significant digits in doubles.
/// Throws window_error when |lambda tau^h| > z_max.
double mode_kernel_hyp(const KernelIndex& idx, double lambda, double tau,
                       double z_max = 30.0);

/// Direct power series of the kernel, valid for any real order h >= 1 and
/// modest |lambda| tau^h; the only representation available off integer h.
double mode_kernel_series(int n, double h, int m, double lambda, double tau);

struct TraceSample {
    double tau;
    double value;
    long modes_used;
    double truncation_bound;
};

struct TraceOptions {
    double theta = 45.0;       // include modes with lambda * tau^h <= theta
    long mode_budget = 20000000;
};

/// K_{n,m}(tau, D): compensated sum over modes in ascending eigenvalue order.
TraceSample trace_modified(const spectrum::OperatorModel& model, const KernelIndex& idx,
                           double tau, const TraceOptions& opts = {});

/// K(t, D) = sum e^{-t lambda}, same truncation policy.
TraceSample heat_trace(const spectrum::OperatorModel& model, double t,
                       const TraceOptions& opts = {});

struct SmallTauOptions {
    double tau_min = 0.01;
    int degree = 4;
    int points = 25;
    TraceOptions trace;
};

struct SmallTauResult {
    double value;
    double error_estimate;
};

/// K_{n,m}(0, D) by least-squares polynomial extrapolation of trace_modified
/// on a geometric grid tau in [tau_min, 8 tau_min].
SmallTauResult small_tau_value(const spectrum::OperatorModel& model,
                               const KernelIndex& idx, const SmallTauOptions& opts = {});

}  // namespace zetaheat::kernels
