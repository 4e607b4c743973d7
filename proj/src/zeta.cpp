#include "zetaheat/zeta.hpp"

#include <cmath>
#include <limits>

#include "zetaheat/polyfit.hpp"
#include "zetaheat/specfun.hpp"

namespace zetaheat::zeta {

using kernels::KernelIndex;
using quadrature::Weight;
using specfun::gamma_signed;
using specfun::ln_gamma;

Engine::Engine(spectrum::OperatorModel model, EngineOptions opts)
    : model_(std::move(model)), opts_(opts) {}

ContinuationPlan Engine::plan_for(double s, std::optional<int> m_override) const {
    const int n = model_.dimension();
    const int h = model_.order_int();
    ContinuationPlan plan;
    plan.s = s;
    if (m_override) {
        plan.m = *m_override;
        if (h * s + plan.m <= -0.95)
            throw std::domain_error("plan_for: m override leaves the integrand non-integrable");
    } else {
        // Minimal m with h s + m > -0.95.
        int m = static_cast<int>(std::floor(-0.95 - h * s)) + 1;
        plan.m = std::max(0, m);
    }
    // Representation lattice points (n - j)/h, j >= 0.
    double jstar = std::round(n - h * s);
    if (jstar >= 0.0) {
        plan.lattice_distance = std::abs(s - (n - jstar) / h);
    } else {
        plan.lattice_distance = std::numeric_limits<double>::infinity();
    }
    if (plan.lattice_distance <= opts_.eps_lattice) {
        double e = opts_.eps_lattice;
        plan.epsilon_offsets = {-2 * e, -e, e, 2 * e};
    }
    return plan;
}

namespace {

// The mode-inclusion threshold theta guarantees e^{-theta} per dropped mode,
// but the kernel carries a tau^{-m-1} amplification and a polynomial factor
// in lambda tau^h that eat into that margin.  Raise theta until the dropped
// per-mode magnitude at the smallest evaluation point tau_b is back at the
// e^{-theta_base} level.
double boosted_theta(const KernelIndex& idx, double theta_base, double tau_b) {
    auto g1 = kernels::mode_kernel_polyexp(idx, 1.0);
    double th = theta_base;
    double extra = std::max(0.0, -(idx.m + 1.0) * std::log(std::min(tau_b, 1.0)));
    for (int it = 0; it < 3; ++it) {
        double ghat = 0.0;
        for (auto& [p, c] : g1.terms)
            ghat += std::abs(c) * std::pow(th, (p + idx.m + 1.0) / idx.h);
        th = theta_base + extra + std::log1p(ghat);
    }
    return th;
}

}  // namespace

quadrature::QuadratureResult Engine::kernel_integral(const KernelIndex& idx, Weight w,
                                                     long* modes) const {
    kernels::TraceOptions topts;
    double tau_b =
        std::min(opts_.tau_min, 0.01 * std::pow(model_.lambda_min(), -1.0 / idx.h));
    topts.theta = boosted_theta(idx, opts_.theta, tau_b);
    long max_modes = 0;
    auto f = [&](double tau) {
        auto ts = kernels::trace_modified(model_, idx, tau, topts);
        max_modes = std::max(max_modes, ts.modes_used);
        return ts;
    };
    quadrature::QuadratureOptions qopts;
    qopts.tau_min = opts_.tau_min;
    qopts.budget = opts_.budget;
    qopts.theta = topts.theta;
    auto res = quadrature::integrate_trace(f, w, model_.lambda_min(), idx.h,
                                           opts_.quad_tol, qopts);
    if (modes) *modes = max_modes;
    return res;
}

ZetaValue Engine::zeta_direct(double s) const {
    const int n = model_.dimension();
    const double h = model_.order();
    ZetaValue out;
    out.s = s;
    out.route = "direct";
    out.plan = ContinuationPlan{s, 0, std::numeric_limits<double>::infinity(), {}};
    if (model_.finite_spectrum()) {
        auto slice =
            spectrum::eigenvalues_up_to(model_, std::numeric_limits<double>::max() / 4);
        double sum = 0.0;
        for (double lam : slice.eigenvalues) sum += std::pow(lam, -s);
        out.value = sum;
        out.error_estimate = 1e-14 * std::abs(sum) * slice.eigenvalues.size();
        out.modes_max = static_cast<long>(slice.eigenvalues.size());
        return out;
    }
    if (!(s > n / h + opts_.strip_margin))
        throw std::domain_error("zeta_direct: s inside the divergence region");
    if (model_.exact_power_law()) {
        // lambda_k = c k^p exactly: zeta_D(s) = c^-s zeta_R(p s).
        auto [c, p] = *model_.growth_law();
        out.value = std::pow(c, -s) * specfun::riemann_zeta(p * s);
        out.error_estimate = 1e-12 * std::abs(out.value) + 1e-13;
        return out;
    }
    throw std::domain_error("zeta_direct: unsupported spectrum source");
}

ZetaValue Engine::zeta_heat_integral(double s) const {
    const int n = model_.dimension();
    const int h = model_.order_int();
    if (!(s > static_cast<double>(n) / h + opts_.strip_margin))
        throw std::domain_error("zeta_heat_integral: s inside the divergence region");
    kernels::TraceOptions topts;
    topts.theta = opts_.theta;
    long max_modes = 0;
    long evals = 0;
    auto f = [&](double tau) {
        auto ts = kernels::heat_trace(model_, std::pow(tau, h), topts);
        max_modes = std::max(max_modes, ts.modes_used);
        ++evals;
        double tn = std::pow(tau, n);
        return kernels::TraceSample{tau, tn * ts.value, ts.modes_used,
                                    tn * ts.truncation_bound};
    };
    quadrature::QuadratureOptions qopts;
    qopts.tau_min = opts_.tau_min;
    qopts.budget = opts_.budget;
    qopts.theta = opts_.theta;
    auto res = quadrature::integrate_trace(f, Weight::power(h * s - 1.0 - n),
                                           model_.lambda_min(), h, opts_.quad_tol, qopts);
    double pref = h * std::exp(-ln_gamma(s));
    ZetaValue out;
    out.s = s;
    out.route = "heat-integral";
    out.plan = ContinuationPlan{s, 0, std::numeric_limits<double>::infinity(), {}};
    out.value = pref * res.value;
    out.error_estimate = pref * res.error_estimate;
    out.modes_max = max_modes;
    out.evaluations = res.evaluations;
    return out;
}

Engine::RawEval Engine::continued_raw(double s, int m) const {
    const int n = model_.dimension();
    const int h = model_.order_int();
    KernelIndex idx(n, h, m);
    long modes = 0;
    auto I = kernel_integral(idx, Weight::power(h * s + m), &modes);
    // (-1)^{n+m} h Gamma(hs-n) / (Gamma(s) Gamma(hs+m+1)), in log-sign form.
    auto ga = gamma_signed(h * s - n);
    auto gs = gamma_signed(s);
    auto gb = gamma_signed(h * s + m + 1.0);
    int sign = ga.sign * gs.sign * gb.sign * (((n + m) % 2 == 0) ? 1 : -1);
    double pref = sign * std::exp(std::log(static_cast<double>(h)) + ga.ln_abs -
                                  gs.ln_abs - gb.ln_abs);
    RawEval out;
    out.value = pref * I.value;
    out.error = std::abs(pref) * I.error_estimate;
    out.modes = modes;
    out.evals = I.evaluations;
    return out;
}

ZetaValue Engine::zeta_continued(double s, std::optional<int> m_override) const {
    auto plan = plan_for(s, m_override);
    ZetaValue out;
    out.s = s;
    out.route = "continued";
    out.plan = plan;
    if (plan.epsilon_offsets.empty()) {
        auto raw = continued_raw(s, plan.m);
        out.value = raw.value;
        out.error_estimate = raw.error;
        out.modes_max = raw.modes;
        out.evaluations = raw.evals;
        return out;
    }
    // Removable singularity of the prefactor: symmetric offsets and a
    // quadratic Richardson combination cancel the leading even error term.
    const double e = opts_.eps_lattice;
    auto eval = [&](double ds) {
        auto p = plan_for(s + ds, m_override);
        auto raw = continued_raw(s + ds, p.m);
        out.modes_max = std::max(out.modes_max, raw.modes);
        out.evaluations += raw.evals;
        return raw;
    };
    auto fp1 = eval(e), fm1 = eval(-e), fp2 = eval(2 * e), fm2 = eval(-2 * e);
    double a1 = 0.5 * (fp1.value + fm1.value);
    double a2 = 0.5 * (fp2.value + fm2.value);
    double odd = 0.5 * std::abs(fp1.value - fm1.value);
    double quad_err = fp1.error + fm1.error + fp2.error + fm2.error;
    double scale = std::max({std::abs(a1), std::abs(a2), quad_err, 1e-30});
    if (odd > 100.0 * scale)
        throw pole_error("zeta_continued: genuine pole of zeta_D; use residue_at",
                         static_cast<long>(std::llround(model_.dimension() -
                                                        model_.order() * s)));
    out.value = (4.0 * a1 - a2) / 3.0;
    out.error_estimate = quad_err + std::abs(a1 - a2) / 3.0;
    out.lattice_offset_used = true;
    return out;
}

ZetaValue Engine::zeta_at_zero() const {
    const int n = model_.dimension();
    const int h = model_.order_int();
    KernelIndex idx(n, h, 0);
    long modes = 0;
    auto I = kernel_integral(idx, Weight::power(0.0), &modes);
    double pref = std::exp(-ln_gamma(n + 1.0));
    ZetaValue out;
    out.s = 0.0;
    out.route = "continued";
    out.plan = ContinuationPlan{0.0, 0, 0.0, {}};
    out.value = pref * I.value;
    out.error_estimate = pref * I.error_estimate;
    out.modes_max = modes;
    out.evaluations = I.evaluations;
    return out;
}

ZetaValue Engine::zeta_prime_at_zero() const {
    const int n = model_.dimension();
    const int h = model_.order_int();
    KernelIndex idx(n, h, 0);
    long modes0 = 0, modes1 = 0;
    auto I0 = kernel_integral(idx, Weight::power(0.0), &modes0);
    auto I1 = kernel_integral(idx, Weight::power_log(0.0), &modes1);
    double pref = std::exp(-ln_gamma(n + 1.0));
    double c0 = specfun::euler_gamma + h * specfun::harmonic(n);
    ZetaValue out;
    out.s = 0.0;
    out.route = "continued";
    out.plan = ContinuationPlan{0.0, 0, 0.0, {}};
    out.value = pref * (c0 * I0.value + h * I1.value);
    out.error_estimate = pref * (std::abs(c0) * I0.error_estimate + h * I1.error_estimate);
    out.modes_max = std::max(modes0, modes1);
    out.evaluations = I0.evaluations + I1.evaluations;
    return out;
}

double Engine::det_zeta() const { return std::exp(-zeta_prime_at_zero().value); }

ResidueReport Engine::residue_at(int k) const {
    if (k < 0) throw std::domain_error("residue_at: k >= 0 required");
    const int n = model_.dimension();
    const int h = model_.order_int();
    ResidueReport rep;
    rep.k = k;
    rep.s0 = static_cast<double>(n - k) / h;

    if (n == k) {
        // s0 = 0: 1/Gamma(s) zero kills the residue identically.
        rep.residue = 0.0;
        rep.residue_error = 0.0;
        return rep;
    }
    if (k < n) {
        // s0 > 0, mu = n - k:
        // res = 1/(Gamma(mu/h) Gamma(1+n-mu)) int K_{n,-mu} dtau.
        const int mu = n - k;
        KernelIndex idx(n, h, -mu);
        long modes = 0;
        auto I = kernel_integral(idx, Weight::power(0.0), &modes);
        double pref = std::exp(-ln_gamma(static_cast<double>(mu) / h) -
                               ln_gamma(1.0 + n - mu));
        rep.residue = pref * I.value;
        rep.residue_error = pref * I.error_estimate;
    } else {
        // s0 < 0, m = k - n:
        // res = -sin(pi m/h) Gamma((h+m)/h) / (pi Gamma(1+n+m)) int K_{n,m} dtau
        //     = +same coefficient * K_{n,m-1}(0, D).
        const int m = k - n;
        double coeff;
        if (m % h == 0) {
            coeff = 0.0;  // no poles when m is a multiple of h
        } else {
            coeff = std::sin(M_PI * m / static_cast<double>(h)) *
                    std::exp(ln_gamma((h + m) / static_cast<double>(h)) -
                             ln_gamma(1.0 + n + m)) /
                    M_PI;
        }
        KernelIndex idx(n, h, m);
        long modes = 0;
        auto I = kernel_integral(idx, Weight::power(0.0), &modes);
        rep.residue = -coeff * I.value;
        rep.residue_error = std::abs(coeff) * I.error_estimate;

        kernels::SmallTauOptions sopts;
        sopts.tau_min = opts_.tau_min;
        sopts.trace.theta =
            boosted_theta(KernelIndex(n, h, m - 1), opts_.theta, opts_.tau_min);
        auto bv = kernels::small_tau_value(model_, KernelIndex(n, h, m - 1), sopts);
        rep.boundary_residue = coeff * bv.value;
        rep.boundary_error = std::abs(coeff) * bv.error_estimate;
        if (coeff != 0.0) {
            double gap = std::abs(rep.residue - *rep.boundary_residue);
            double tol = 5.0 * (rep.residue_error + *rep.boundary_error) +
                         1e-6 * std::max(1.0, std::abs(rep.residue));
            if (gap > tol)
                throw precision_error(
                    "residue_at: integral and boundary routes disagree", gap);
        }
        // Headline value: the sharper of the two routes.  At small tau the
        // mode-summed trace cancels catastrophically for large m, which can
        // leave the integral route roundoff-limited while the boundary
        // extrapolation stays clean.
        if (*rep.boundary_error < rep.residue_error) {
            rep.residue = *rep.boundary_residue;
            rep.residue_error = *rep.boundary_error;
        }
    }
    // a_k through the residue relation when Gamma(s0) is finite.
    double r0 = std::round(rep.s0);
    bool gamma_pole = rep.s0 <= 0.0 && std::abs(rep.s0 - r0) < 1e-12;
    if (!gamma_pole) {
        auto g = gamma_signed(rep.s0);
        double gam = g.sign * std::exp(g.ln_abs);
        rep.a_k = rep.residue * gam;
        rep.a_k_error = rep.residue_error * std::abs(gam);
    }
    return rep;
}

SeeleyResult Engine::seeley_coefficient(int k) const {
    if (k < 0) throw std::domain_error("seeley_coefficient: k >= 0 required");
    const int n = model_.dimension();
    const int h = model_.order_int();
    double s0 = static_cast<double>(n - k) / h;
    double r0 = std::round(s0);
    bool gamma_pole = s0 <= 0.0 && std::abs(s0 - r0) < 1e-12;
    SeeleyResult out;
    out.k = k;
    if (!gamma_pole) {
        auto rep = residue_at(k);
        out.value = *rep.a_k;
        out.error_estimate = *rep.a_k_error;
        out.route = "residue";
        return out;
    }
    // Gamma((n-k)/h) pole: the residue route degenerates; extract a_k as the
    // tau^k Taylor coefficient of tau^n K(tau^h, D).
    kernels::TraceOptions topts;
    topts.theta = opts_.theta;
    auto grid = detail::geometric_grid(opts_.tau_min, 8.0 * opts_.tau_min, 33);
    std::vector<double> ys(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        auto ts = kernels::heat_trace(model_, std::pow(grid[i], h), topts);
        ys[i] = std::pow(grid[i], n) * ts.value;
    }
    int degree = std::min(std::max(k + 2, 4), 10);
    auto coeffs = detail::polyfit(grid, ys, degree);
    double resid = detail::polyfit_max_residual(coeffs, grid, ys);
    out.value = coeffs[k];
    out.error_estimate = 10.0 * resid / std::pow(opts_.tau_min, k);
    out.route = "taylor-fit";
    if (!std::isfinite(out.value))
        throw precision_error("seeley_coefficient: Taylor fit failed", out.error_estimate);
    return out;
}

}  // namespace zetaheat::zeta
