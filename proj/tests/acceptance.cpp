// Acceptance gate: nine numbered criteria, one pass/fail line each.
// Exits nonzero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "zetaheat/kernels.hpp"
#include "zetaheat/specfun.hpp"
#include "zetaheat/verify.hpp"
#include "zetaheat/zeta.hpp"

using namespace zetaheat;
using kernels::KernelIndex;
using spectrum::DirichletInterval;
using spectrum::ExplicitSpectrum;
using spectrum::KnownSequence;
using spectrum::OperatorModel;

namespace {

int failures = 0;

void report(int num, const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", num,
                label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

std::string worst_str(double w) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst %.3e", w);
    return buf;
}

// 1. Per-mode spectral identity: 500 random single-eigenvalue continuations.
void criterion1() {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ul(0.5, 10.0), uu(0.0, 1.0);
    double worst = 0.0;
    int done = 0;
    while (done < 500) {
        int n = 1 + static_cast<int>(rng() % 3);
        int h = 1 + static_cast<int>(rng() % 3);
        int m = static_cast<int>(rng() % 5);
        double lambda = ul(rng);
        // s in the validity strip for this m: h s + m > -0.95, keep |s| modest.
        double lo = (-0.9 - m) / h, hi = 3.0;
        double s = lo + (hi - lo) * uu(rng);
        OperatorModel model(n, h, ExplicitSpectrum{{{lambda, 1}}});
        zeta::Engine eng(model);
        if (eng.plan_for(s).lattice_distance < 5e-3) continue;
        double got = eng.zeta_continued(s, m).value;
        double expected = std::pow(lambda, -s);
        worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
        ++done;
    }
    report(1, "per-mode spectral identity (500 draws, rel <= 1e-8)", worst <= 1e-8,
           worst_str(worst));
}

// 2. Hypergeometric vs polyexp representation agreement.
void criterion2() {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ul(0.5, 10.0), ux(0.01, 30.0);
    double worst = 0.0;
    for (int done = 0; done < 500; ++done) {
        int n = static_cast<int>(rng() % 4);
        int h = 1 + static_cast<int>(rng() % 3);
        int m = static_cast<int>(rng() % (5 + n)) - n;
        double lambda = ul(rng);
        double tau = std::pow(ux(rng) / lambda, 1.0 / h);
        KernelIndex idx(n, h, m);
        double exact = kernels::mode_kernel_polyexp(idx, lambda)(tau);
        double hyp = kernels::mode_kernel_hyp(idx, lambda, tau);
        worst = std::max(worst,
                         std::abs(hyp - exact) / std::max(std::abs(exact), 1e-300));
    }
    report(2, "kernel representation agreement (500 draws, rel <= 1e-9)",
           worst <= 1e-9, worst_str(worst));
}

// 3. ODE residuals and initial data.
void criterion3() {
    double worst = 0.0;
    bool ic_ok = true;
    for (int n : {0, 1, 2, 3}) {
        for (int h : {2, 3}) {
            for (double lambda : {0.5, 1.0, 5.0}) {
                worst = std::max(
                    worst, verify::ode_residual(verify::OdeVariant::s0, n, h, 0, lambda)
                               .relative);
                for (int mu = 1; mu <= n; ++mu)
                    worst = std::max(worst,
                                     verify::ode_residual(verify::OdeVariant::spos, n,
                                                          h, -mu, lambda)
                                         .relative);
                for (int m : {1, 2, 3})
                    worst = std::max(worst,
                                     verify::ode_residual(
                                         verify::OdeVariant::sneg_derived, n, h, m,
                                         lambda)
                                         .relative);
                for (int m = -n; m <= 3; ++m)
                    for (auto& e : verify::initial_data_check(n, h, m, lambda))
                        if (e.asserted && !e.pass) ic_ok = false;
            }
        }
    }
    // h = 1 and h = 2 display data, coefficient identity.
    for (int n : {0, 1, 2}) {
        for (double lambda : {0.5, 1.0, 5.0}) {
            for (auto& e : verify::initial_data_check(n, 1, 0, lambda))
                if (e.asserted && !e.pass) ic_ok = false;
            for (auto& e : verify::initial_data_check(n, 2, 0, lambda))
                if (e.asserted && !e.pass) ic_ok = false;
        }
    }
    report(3, "ODE residuals <= 1e-8 and initial data identities",
           worst <= 1e-8 && ic_ok, worst_str(worst));
}

// 4. Dirichlet interval [0, pi] against the Riemann zeta oracle.
void criterion4() {
    OperatorModel model(1, 2, DirichletInterval{M_PI});
    zeta::Engine eng(model);
    bool ok = true;
    std::string detail;
    auto check = [&](const std::string& what, double got, double expected, double tol) {
        if (std::abs(got - expected) > tol) {
            ok = false;
            detail += what + " off by " + std::to_string(got - expected) + "; ";
        }
    };
    check("zeta(0)", eng.zeta_at_zero().value, -0.5, 1e-4);
    double zp = eng.zeta_prime_at_zero().value;
    check("zeta'(0)", zp, -std::log(2.0 * M_PI), 1e-3);
    check("det", eng.det_zeta(), 2.0 * M_PI, 1e-3 * 2.0 * M_PI);
    auto r0 = eng.residue_at(0);
    check("residue at 1/2", r0.residue, 0.5, 1e-4);
    check("a_0", r0.a_k.value_or(1e9), std::sqrt(M_PI) / 2.0, 1e-4);
    check("a_1", eng.seeley_coefficient(1).value, -0.5, 1e-3);
    auto zm = eng.zeta_continued(-0.5);
    check("zeta(-1/2)", zm.value, -1.0 / 12.0, 1e-3);
    if (!zm.lattice_offset_used) {
        ok = false;
        detail += "lattice-offset path not exercised; ";
    }
    for (int k : {1, 2, 3, 4})  // s0 in {0, -1/2, -1, -3/2}
        check("residue k=" + std::to_string(k), eng.residue_at(k).residue, 0.0, 1e-6);
    report(4, "Dirichlet interval [0, pi] oracle values", ok, detail);
}

// 5. Finite-spectrum exactness.
void criterion5() {
    OperatorModel model(1, 2, ExplicitSpectrum{{{1.0, 1}, {2.0, 1}, {3.0, 1}}});
    zeta::Engine eng(model);
    bool ok = true;
    std::string detail;
    if (std::abs(eng.zeta_at_zero().value - 3.0) > 1e-8) {
        ok = false;
        detail += "zeta(0); ";
    }
    if (std::abs(eng.det_zeta() - 6.0) > 1e-6) {
        ok = false;
        detail += "det; ";
    }
    for (int k = 0; k <= 8; ++k)
        if (std::abs(eng.residue_at(k).residue) > 1e-6) {
            ok = false;
            detail += "residue k=" + std::to_string(k) + "; ";
        }
    for (double s : {-1.3, -0.5, 0.3, 2.0}) {
        double exact = 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
        double got = eng.zeta_continued(s).value;
        if (std::abs(got - exact) > 1e-7 * std::abs(exact)) {
            ok = false;
            detail += "s=" + std::to_string(s) + "; ";
        }
    }
    report(5, "finite-spectrum exactness", ok, detail);
}

// 6. Route overlap on all bundled models.
void criterion6() {
    OperatorModel models[] = {
        OperatorModel(1, 2, ExplicitSpectrum{{{1.0, 1}, {2.0, 1}, {3.0, 1}}}),
        OperatorModel(1, 2, DirichletInterval{M_PI}),
        OperatorModel(1, 2, KnownSequence{2.0, 2.0}),
        OperatorModel(1, 2,
                      spectrum::TridiagonalMatrix{{2, 2, 2, 2}, {-1, -1, -1}})};
    double worst = 0.0;
    for (auto& model : models) {
        zeta::Engine eng(model);
        double base = model.dimension() / model.order();
        for (double ds : {0.25, 1.0}) {
            double s = base + ds;
            double direct = eng.zeta_direct(s).value;
            double heat = eng.zeta_heat_integral(s).value;
            double cont = eng.zeta_continued(s).value;
            worst = std::max(worst, std::abs(heat - direct) / std::abs(direct));
            worst = std::max(worst, std::abs(cont - direct) / std::abs(direct));
        }
    }
    report(6, "route overlap (direct / heat integral / continuation, rel <= 1e-7)",
           worst <= 1e-7, worst_str(worst));
}

// 7. Representation independence in parts-depth m.
void criterion7() {
    std::mt19937 rng(314);
    std::uniform_real_distribution<double> us(-1.2, 2.0);
    OperatorModel dirichlet(1, 2, DirichletInterval{M_PI});
    OperatorModel expl(1, 2, ExplicitSpectrum{{{1.0, 1}, {2.0, 1}, {3.0, 1}}});
    zeta::Engine ed(dirichlet), ee(expl);
    int done = 0, bad = 0;
    while (done < 100) {
        double s = us(rng);
        zeta::Engine& eng = (done % 2 == 0) ? ed : ee;
        auto plan = eng.plan_for(s);
        if (plan.lattice_distance < 5e-3) continue;
        if (&eng == &ed && std::abs(s - 0.5) < 0.05) continue;
        auto a = eng.zeta_continued(s, plan.m);
        auto b = eng.zeta_continued(s, plan.m + 1);
        double tol = 3.0 * (a.error_estimate + b.error_estimate) +
                     1e-8 * std::max(std::abs(a.value), 1.0);
        if (std::abs(a.value - b.value) > tol) ++bad;
        ++done;
    }
    report(7, "representation independence m vs m+1 (100 cases)", bad == 0,
           bad ? std::to_string(bad) + " disagreements" : "");
}

// 8. Xi transform and the integro-differential identity.
void criterion8() {
    using specfun::ln_gamma;
    double beta_worst = 0.0;
    for (double h : {1.0, 2.0, 3.0}) {
        for (double a : {0.0, 1.0, 2.5, 6.0}) {
            double expected =
                std::exp(ln_gamma(a + 1.0) + ln_gamma(h) - ln_gamma(a + 1.0 + h));
            double got = quadrature::integrate_unit_jacobi(
                [a](double x) { return std::pow(x, a); }, h);
            beta_worst = std::max(beta_worst, std::abs(got - expected));
        }
    }
    double xi_worst = 0.0;
    for (int n : {0, 1, 2, 3})
        for (double h : {2.0, 3.0})
            for (double lambda : {0.5, 1.0, 5.0})
                xi_worst =
                    std::max(xi_worst, verify::xi_residual(n, h, 0, lambda).relative);
    // Non-integer h rows: reported only.
    for (double h : {1.5, 2.5}) {
        auto rep = verify::xi_residual(1, h, 0, 1.0);
        std::printf("       (reported) xi residual at non-integer h=%.1f: %.3e\n", h,
                    rep.relative);
    }
    report(8, "Xi beta identity <= 1e-8 and integer-h residual <= 1e-6",
           beta_worst <= 1e-8 && xi_worst <= 1e-6,
           worst_str(std::max(beta_worst, xi_worst)));
}

// 9. Special-function floor.
void criterion9() {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    int tested = 0;
    while (tested < 300) {
        double x = u(rng);
        if (std::abs(x - std::round(x)) < 1e-3) continue;
        ++tested;
        auto a = specfun::gamma_signed(x);
        auto b = specfun::gamma_signed(1.0 - x);
        double lhs = a.sign * b.sign * std::exp(a.ln_abs + b.ln_abs);
        double rhs = M_PI / std::sin(M_PI * x);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    std::uniform_real_distribution<double> v(1e-3, 50.0);
    for (int i = 0; i < 300; ++i) {
        double x = v(rng);
        worst = std::max(worst, std::abs(specfun::ln_gamma(x + 1.0) -
                                         specfun::ln_gamma(x) - std::log(x)));
    }
    std::uniform_real_distribution<double> uz(0.1, 5.0), ub(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        int h = 1 + static_cast<int>(rng() % 5);
        worst = std::max(worst,
                         specfun::gauss_multiplication_check(h, uz(rng), ub(rng)));
    }
    double z2 = std::abs(specfun::riemann_zeta(2.0) - M_PI * M_PI / 6.0);
    double z4 = std::abs(specfun::riemann_zeta(4.0) - std::pow(M_PI, 4) / 90.0);
    report(9, "special-function floor (1e-11) and zeta oracle (1e-10)",
           worst <= 1e-11 && z2 <= 1e-10 && z4 <= 1e-10, worst_str(worst));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 9 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
