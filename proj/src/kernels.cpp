#include "zetaheat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zetaheat/polyfit.hpp"
#include "zetaheat/specfun.hpp"

namespace zetaheat::kernels {

using specfun::ln_gamma;

KernelIndex::KernelIndex(int n_, int h_, int m_) : n(n_), h(h_), m(m_) {
    if (n < 0) throw std::domain_error("KernelIndex: n >= 0 required");
    if (h < 1) throw std::domain_error("KernelIndex: h >= 1 required");
    if (m < -n) throw std::domain_error("KernelIndex: m >= -n required");
}

int KernelIndex::q() const {
    if (m < 0) throw std::domain_error("KernelIndex::q: requires m >= 0");
    return m / h;
}

int KernelIndex::r() const {
    if (m < 0) throw std::domain_error("KernelIndex::r: requires m >= 0");
    return m % h;
}

int KernelIndex::mu() const {
    if (m >= 0) throw std::domain_error("KernelIndex::mu: requires m < 0");
    return -m;
}

double PolyExpFunction::operator()(double tau) const {
    double poly = 0.0;
    for (auto& [p, c] : terms) poly += c * std::pow(tau, p);
    return poly * std::exp(-decay * std::pow(tau, order));
}

double PolyExpFunction::coefficient(int power) const {
    for (auto& [p, c] : terms)
        if (p == power) return c;
    return 0.0;
}

PolyExpFunction PolyExpFunction::derivative() const {
    std::map<int, double> out;
    for (auto& [p, c] : terms) {
        if (p > 0) out[p - 1] += c * p;
        out[p + order - 1] -= order * decay * c;
    }
    PolyExpFunction d;
    d.decay = decay;
    d.order = order;
    for (auto& [p, c] : out)
        if (c != 0.0) d.terms.emplace_back(p, c);
    return d;
}

PolyExpFunction mode_kernel_polyexp(const KernelIndex& idx, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("mode_kernel_polyexp: lambda > 0");
    PolyExpFunction f;
    f.decay = lambda;
    f.order = idx.h;
    f.terms = {{idx.n, 1.0}};
    for (int d = 0; d < idx.n + idx.m + 1; ++d) f = f.derivative();
    for (auto& [p, c] : f.terms) {
        c = -c;
        if (!std::isfinite(c))
            throw std::range_error("mode_kernel_polyexp: coefficient overflow at power " +
                                   std::to_string(p));
    }
    return f;
}

HypKernelParams hyp_params(const KernelIndex& idx, double lambda) {
    HypKernelParams par;
    const int n = idx.n, h = idx.h;
    if (idx.m >= 0) {
        const int q = idx.q(), r = idx.r();
        // k_{n,m} = -tau^{h-r-1} (-lambda)^{q+1}
        //           * Gamma(hq+h+n+1) / (Gamma(q+2) Gamma(h-r))
        //           * hFh[{q+1+(n+l)/h}_{l=1..h}; {(h-r+l)/h}_{l=0..h-1}\{1} u {q+2}; z]
        par.leading_power = h - r - 1;
        double ln_pref = ln_gamma(h * q + h + n + 1.0) - ln_gamma(q + 2.0) -
                         ln_gamma(static_cast<double>(h - r));
        double sign = ((q + 1) % 2 == 0) ? -1.0 : 1.0;  // -(-1)^{q+1}
        par.prefactor = sign * std::exp(ln_pref + (q + 1) * std::log(lambda));
        for (int l = 1; l <= h; ++l)
            par.a_list.push_back(q + 1.0 + static_cast<double>(n + l) / h);
        for (int l = 0; l < h; ++l) {
            if (h - r + l == h) continue;  // the unit parameter is the series k!
            par.b_list.push_back(static_cast<double>(h - r + l) / h);
        }
        par.b_list.push_back(q + 2.0);
    } else {
        const int mu = idx.mu();
        // k_{n,-mu} = -Gamma(n+1)/Gamma(mu) tau^{mu-1}
        //             * hFh[{(n+l)/h}_{l=1..h}; {(mu+l)/h}_{l=0..h-1}; z]
        par.leading_power = mu - 1;
        par.prefactor = -std::exp(ln_gamma(n + 1.0) - ln_gamma(static_cast<double>(mu)));
        for (int l = 1; l <= h; ++l)
            par.a_list.push_back(static_cast<double>(n + l) / h);
        for (int l = 0; l < h; ++l)
            par.b_list.push_back(static_cast<double>(mu + l) / h);
    }
    for (double b : par.b_list) {
        if (b <= 0.0 && std::abs(b - std::round(b)) < 1e-12)
            throw std::domain_error("hyp_params: lower parameter at a pole");
    }
    return par;
}

double mode_kernel_hyp(const KernelIndex& idx, double lambda, double tau, double z_max) {
    if (!(tau >= 0.0)) throw std::domain_error("mode_kernel_hyp: tau >= 0");
    const int n = idx.n, h = idx.h;
    double x = lambda * std::pow(tau, h);
    if (std::abs(x) > z_max)
        throw window_error("mode_kernel_hyp: |lambda tau^h| beyond series window");
    HypKernelParams par = hyp_params(idx, lambda);
    if (tau == 0.0) return par.leading_power > 0 ? 0.0 : (par.leading_power == 0 ? par.prefactor : 0.0);

    // hFh(a; b; -x) = e^{-x} S(x) with S a polynomial: the kernel is exactly
    // polynomial * e^{-x}. Degree of S from the derivative picture.
    int deg_p = n + (n + idx.m + 1) * (h - 1);
    int big_j = (deg_p - par.leading_power) / h;

    // Series coefficients c_k of hFh(a; b; z) = sum c_k z^k by term recurrence.
    int kmax = big_j + 4;
    std::vector<double> c(kmax + 1);
    c[0] = 1.0;
    for (int k = 0; k < kmax; ++k) {
        double num = 1.0, den = 1.0;
        for (double a : par.a_list) num *= a + k;
        for (double b : par.b_list) den *= b + k;
        c[k + 1] = c[k] * num / (den * (k + 1));
    }
    // d_j = sum_k (-1)^k c_k / (j-k)!  (coefficients of e^{x} hFh(a;b;-x)).
    std::vector<double> d(kmax + 1, 0.0);
    for (int j = 0; j <= kmax; ++j) {
        double acc = 0.0;
        for (int k = j; k >= 0; --k) {
            double inv_fact = std::exp(-ln_gamma(j - k + 1.0));
            acc += ((k % 2 == 0) ? 1.0 : -1.0) * c[k] * inv_fact;
        }
        d[j] = acc;
    }
    double s = 0.0;
    for (int j = big_j; j >= 0; --j) s = s * x + d[j];
    return par.prefactor * std::pow(tau, par.leading_power) * std::exp(-x) * s;
}

double mode_kernel_series(int n, double h, int m, double lambda, double tau) {
    if (!(h > 0.0)) throw std::domain_error("mode_kernel_series: h > 0");
    if (!(tau > 0.0)) throw std::domain_error("mode_kernel_series: tau > 0");
    // k_{n,m} = -sum_k (-lambda)^k Gamma(hk+n+1)/(Gamma(k+1) Gamma(hk-m)) tau^{hk-m-1}.
    // A term drops out only when 1/Gamma(hk - m) = 0, i.e. hk - m is a
    // non-positive integer; for non-integer h, negative non-integer
    // arguments keep genuinely singular tau powers in the sum.
    double x = lambda * std::pow(tau, h);
    if (x > 40.0) throw window_error("mode_kernel_series: series window exceeded");
    double sum = 0.0, ln_tau = std::log(tau);
    int quiet = 0;
    for (int k = 0; k < 400; ++k) {
        double hk = h * k;
        double d = hk - m;
        if (std::abs(d - std::round(d)) < 1e-9 && std::round(d) <= 0.0) continue;
        auto gd = specfun::gamma_signed(d);
        double ln_mag = ln_gamma(hk + n + 1.0) - ln_gamma(k + 1.0) - gd.ln_abs +
                        k * std::log(lambda) + (hk - m - 1.0) * ln_tau;
        double term = -gd.sign * ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(ln_mag);
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum) && k > 2) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    return sum;
}

namespace {

// Kahan-compensated accumulator.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Sum over dropped modes of e^{-(lambda - cutoff) y} for an infinite model.
double dropped_mode_sum(const spectrum::OperatorModel& model, double cutoff, double y) {
    auto [c, p] = *model.growth_law();
    double K = std::max(1.0, std::floor(std::pow(cutoff / c, 1.0 / p) + 1e-12));
    double lam1 = c * std::pow(K + 1.0, p);
    double first = std::exp(-std::max(0.0, lam1 - cutoff) * y);
    if (p >= 1.0) {
        // Gaps lambda_{k+1} - lambda_k are non-decreasing; geometric majorant.
        double gap = c * p * std::pow(K + 1.0, p - 1.0) * y;
        if (gap < 1e-300) return std::numeric_limits<double>::infinity();
        return first / -std::expm1(-gap);
    }
    // p < 1: first term plus the integral comparison, bounding the upper
    // incomplete gamma by its leading asymptotic term when the argument is
    // large and by the full gamma otherwise.
    double a = 1.0 / p;
    double z = lam1 * y;
    double gupper = (z >= 2.0 * a)
                        ? std::pow(z, a - 1.0) * std::exp(-z) /
                              std::max(0.5, 1.0 - (a - 1.0) / z)
                        : std::tgamma(a);
    double integral =
        std::exp(cutoff * y) * std::pow(c * y, -a) * a * gupper;
    return first + integral;
}

// Rigorous bound on the dropped part of K_{n,m}(tau, D) under the
// lambda tau^h <= theta inclusion rule.  Per mode,
//   |k_{n,m}(tau, lambda)| = tau^{-m-1} |G(x)| e^{-x},  x = lambda tau^h,
// where G is a fixed polynomial in x^{1/h} read off the lambda = 1 kernel.
// With Ghat the absolute-coefficient majorant of G and x0 = cutoff tau^h,
// the envelope Ghat(x) e^{-x/2} decreases for x >= 2 deg Ghat, giving
//   tail <= tau^{-m-1} Ghat(x0) e^{-x0} sum_{lambda > cutoff}
//                                        e^{-(lambda - cutoff) tau^h / 2}.
double kernel_tail_bound(const spectrum::OperatorModel& model, const KernelIndex& idx,
                         double cutoff, double tau) {
    double tauh = std::pow(tau, idx.h);
    if (model.finite_spectrum()) {
        auto all =
            spectrum::eigenvalues_up_to(model, std::numeric_limits<double>::max() / 4);
        double b = 0.0;
        for (double lam : all.eigenvalues)
            if (lam > cutoff) b += std::abs(mode_kernel_polyexp(idx, lam)(tau));
        return b;
    }
    auto g = mode_kernel_polyexp(idx, 1.0);
    double x0 = cutoff * tauh;
    double amax = 0.0;
    for (auto& [pwr, coef] : g.terms)
        amax = std::max(amax, (pwr + idx.m + 1.0) / idx.h);
    double xe = std::max(x0, 2.0 * amax);
    double ghat = 0.0;
    for (auto& [pwr, coef] : g.terms)
        ghat += std::abs(coef) * std::pow(xe, (pwr + idx.m + 1.0) / idx.h);
    // Below the monotone regime fall back to the e^{-x/2} split of the weight.
    double peak = (x0 >= 2.0 * amax) ? ghat * std::exp(-x0)
                                     : ghat * std::exp(-0.5 * x0);
    return std::pow(tau, -(idx.m + 1.0)) * peak *
           dropped_mode_sum(model, cutoff, 0.5 * tauh);
}

}  // namespace

TraceSample trace_modified(const spectrum::OperatorModel& model, const KernelIndex& idx,
                           double tau, const TraceOptions& opts) {
    if (!(tau > 0.0)) throw std::domain_error("trace_modified: tau > 0");
    double cutoff = opts.theta / std::pow(tau, idx.h);
    auto slice = spectrum::eigenvalues_up_to(model, cutoff);
    if (static_cast<long>(slice.eigenvalues.size()) > opts.mode_budget)
        throw budget_error("trace_modified: mode budget exceeded",
                           static_cast<double>(slice.eigenvalues.size()), cutoff);
    Kahan acc;
    for (double lam : slice.eigenvalues) acc.add(mode_kernel_polyexp(idx, lam)(tau));
    TraceSample ts;
    ts.tau = tau;
    ts.value = acc.sum;
    ts.modes_used = static_cast<long>(slice.eigenvalues.size());
    ts.truncation_bound = kernel_tail_bound(model, idx, cutoff, tau);
    return ts;
}

TraceSample heat_trace(const spectrum::OperatorModel& model, double t,
                       const TraceOptions& opts) {
    if (!(t > 0.0)) throw std::domain_error("heat_trace: t > 0");
    double cutoff = opts.theta / t;
    auto slice = spectrum::eigenvalues_up_to(model, cutoff);
    if (static_cast<long>(slice.eigenvalues.size()) > opts.mode_budget)
        throw budget_error("heat_trace: mode budget exceeded",
                           static_cast<double>(slice.eigenvalues.size()), cutoff);
    Kahan acc;
    for (double lam : slice.eigenvalues) acc.add(std::exp(-t * lam));
    TraceSample ts;
    ts.tau = t;
    ts.value = acc.sum;
    ts.modes_used = static_cast<long>(slice.eigenvalues.size());
    // e^{-t lambda} tail: e^{-t cutoff} times the dropped-mode sum at full
    // decay rate t.
    if (model.finite_spectrum()) {
        double b = 0.0;
        auto all =
            spectrum::eigenvalues_up_to(model, std::numeric_limits<double>::max() / 4);
        for (double lam : all.eigenvalues)
            if (lam > cutoff) b += std::exp(-t * lam);
        ts.truncation_bound = b;
    } else {
        ts.truncation_bound = std::exp(-t * cutoff) * dropped_mode_sum(model, cutoff, t);
    }
    return ts;
}

SmallTauResult small_tau_value(const spectrum::OperatorModel& model,
                               const KernelIndex& idx, const SmallTauOptions& opts) {
    auto grid = detail::geometric_grid(opts.tau_min, 8.0 * opts.tau_min, opts.points);
    std::vector<double> ys(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        ys[i] = trace_modified(model, idx, grid[i], opts.trace).value;
    auto coeffs = detail::polyfit(grid, ys, opts.degree);
    double resid = detail::polyfit_max_residual(coeffs, grid, ys);
    SmallTauResult out;
    out.value = coeffs[0];
    out.error_estimate = 4.0 * resid;  // extrapolation slack over the fit residual
    return out;
}

}  // namespace zetaheat::kernels
