#include "zetaheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>

#include "zetaheat/polyfit.hpp"

namespace zetaheat::quadrature {

double Weight::operator()(double tau) const {
    double w = std::pow(tau, alpha);
    return kind == WeightKind::power ? w : w * std::log(tau);
}

namespace {

// Gauss 7 / Kronrod 15 on [-1,1]: abscissa, Gauss weight, Kronrod weight.
constexpr double gk_nodes[8][3] = {
    {0.000000000000000000000000000000000, 0.417959183673469387755102040816327,
     0.209482141084727828012999174891714},
    {0.405845151377397166906606412076961, 0.381830050505118944950369775488975,
     0.190350578064785409913256402421014},
    {0.741531185599394439863864773280788, 0.279705391489276667901467771423780,
     0.140653259715525918745189590510238},
    {0.949107912342758524526189684047851, 0.129484966168869693270611432679082,
     0.063092092629978553290700663189204},
    {0.207784955007898467600689403773245, 0.0, 0.204432940075298892414161999234649},
    {0.586087235467691130294144838258730, 0.0, 0.169004726639267902826583426598550},
    {0.864864423359769072789712788640926, 0.0, 0.104790010322250183839876322541518},
    {0.991455371120812639206854697526329, 0.0, 0.022935322010529224963732008058970},
};

struct Panel {
    double a, b;
    double integral;
    double err;
    double trunc;  // weighted truncation-bound contribution
};

Panel gk15(const TraceFn& f, const Weight& w, double a, double b, long& evals) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double g7 = 0.0, k15 = 0.0, trunc = 0.0;
    auto eval = [&](double x) {
        auto ts = f(x);
        trunc = std::max(trunc, ts.truncation_bound * std::abs(w(x)));
        ++evals;
        return w(x) * ts.value;
    };
    double y0 = eval(mid);
    g7 += gk_nodes[0][1] * y0;
    k15 += gk_nodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = half * gk_nodes[i][0];
        double y = eval(mid + dx) + eval(mid - dx);
        g7 += gk_nodes[i][1] * y;
        k15 += gk_nodes[i][2] * y;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.integral = k15 * half;
    p.err = std::abs(k15 - g7) * half;
    p.trunc = trunc * (b - a);
    return p;
}

// int_0^T tau^(alpha+j) dtau and the same moment with a ln(tau) factor.
double power_moment(double T, double a) { return std::pow(T, a + 1.0) / (a + 1.0); }

double log_moment(double T, double a) {
    double t = std::pow(T, a + 1.0);
    return t * (std::log(T) / (a + 1.0) - 1.0 / ((a + 1.0) * (a + 1.0)));
}

}  // namespace

QuadratureResult integrate_trace(const TraceFn& f, Weight weight, double lambda_min,
                                 double h, double tol, const QuadratureOptions& opts) {
    if (!(weight.alpha > -1.0))
        throw std::domain_error("integrate_trace: weight exponent must be > -1");
    if (!(lambda_min > 0.0)) throw std::domain_error("integrate_trace: lambda_min > 0");

    long evals = 0;

    // Bridge edge kept well inside the decay scale so the local polynomial
    // fit of f resolves the integrand to the tolerance of the tight callers.
    double tau_b = std::min(opts.tau_min, 0.01 * std::pow(lambda_min, -1.0 / h));
    auto grid = detail::geometric_grid(tau_b, 8.0 * tau_b, opts.bridge_points);
    std::vector<double> ys(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        ys[i] = f(grid[i]).value;
        ++evals;
    }
    auto coeffs = detail::polyfit(grid, ys, opts.bridge_degree);
    double resid = detail::polyfit_max_residual(coeffs, grid, ys);

    double bridge = 0.0, abs_w_moment = 0.0;
    for (size_t j = 0; j < coeffs.size(); ++j) {
        double a = weight.alpha + static_cast<double>(j);
        double mom = (weight.kind == WeightKind::power) ? power_moment(tau_b, a)
                                                        : log_moment(tau_b, a);
        bridge += coeffs[j] * mom;
        if (j == 0) {
            abs_w_moment = (weight.kind == WeightKind::power)
                               ? power_moment(tau_b, weight.alpha)
                               : std::abs(log_moment(tau_b, weight.alpha)) +
                                     power_moment(tau_b, weight.alpha);
        }
    }
    // Extrapolation from [tau_b, 8 tau_b] to 0 amplifies the fit residual.
    double bridge_err = 200.0 * resid * abs_w_moment;

    // Upper endpoint: the trace is identically zero once lambda_min tau^h
    // exceeds the inclusion threshold.
    double T = std::pow(opts.theta / lambda_min, 1.0 / h) * 1.0000001;
    std::multiset<std::pair<double, size_t>, std::greater<>> order;
    std::vector<Panel> panels;

    // Initial panels: geometric split so the power weight near tau_b is resolved.
    {
        std::vector<double> edges;
        double x = tau_b;
        edges.push_back(x);
        while (x < T / 2) {
            x *= 2.0;
            edges.push_back(std::min(x, T));
        }
        if (edges.back() < T) edges.push_back(T);
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
            panels.push_back(gk15(f, weight, edges[i], edges[i + 1], evals));
            order.insert({panels.back().err, panels.size() - 1});
        }
    }

    auto totals = [&]() {
        double v = bridge, e = 0.0, tr = 0.0, av = std::abs(bridge);
        for (auto& p : panels) {
            v += p.integral;
            e += p.err;
            tr += p.trunc;
            av += std::abs(p.integral);
        }
        return std::tuple{v, e, tr, av};
    };

    // Subdivision stops improving once the panel errors hit the roundoff
    // noise of the summed trace; accept the plateau instead of burning the
    // budget, and report the honest error estimate.
    double best_e = std::numeric_limits<double>::infinity();
    int stalled = 0;
    while (true) {
        auto [v, e, tr, av] = totals();
        double target = tol * std::max(std::abs(v), 1e-3 * av);
        if (e <= target || order.empty()) break;
        if (e < 0.95 * best_e) {
            best_e = e;
            stalled = 0;
        } else if (++stalled > 50) {
            break;
        }
        if (evals + 30 > opts.budget) {
            throw budget_error("integrate_trace: evaluation budget exhausted", v,
                               e + bridge_err + tr);
        }
        auto it = order.begin();
        size_t i = it->second;
        order.erase(it);
        Panel p = panels[i];
        double mid = 0.5 * (p.a + p.b);
        Panel left = gk15(f, weight, p.a, mid, evals);
        Panel right = gk15(f, weight, mid, p.b, evals);
        panels[i] = left;
        order.insert({left.err, i});
        panels.push_back(right);
        order.insert({right.err, panels.size() - 1});
    }

    auto [v, e, tr, av] = totals();
    // Tail beyond T: only modes already excluded by the theta policy
    // contribute; bound by the e^{-theta/2} margin on the weighted scale.
    double tail = std::exp(-0.5 * opts.theta) * std::abs(weight(T)) * T *
                  std::max(1.0, std::abs(ys.back()));

    QuadratureResult out;
    out.value = v;
    out.error_estimate = e + bridge_err + tr + tail;
    out.evaluations = evals;
    out.bridge_contribution = bridge;
    return out;
}

namespace {

struct JacobiRule {
    std::vector<double> nodes;    // on [-1, 1], weight (1-t)^a
    std::vector<double> weights;  // include mu0
};

JacobiRule build_jacobi_rule(double a, int order) {
    // Monic Jacobi (alpha=a, beta=0) recurrence coefficients.
    std::vector<double> diag(order), off(order - 1), bcoef(order);
    auto a_n = [a](int n) {
        if (n == 0) return -a / (a + 2.0);
        double s = 2.0 * n + a;
        return -a * a / (s * (s + 2.0));
    };
    auto b_n = [a](int n) {
        double s = 2.0 * n + a;
        return 4.0 * n * n * (n + a) * (n + a) / (s * s * (s + 1.0) * (s - 1.0));
    };
    for (int i = 0; i < order; ++i) diag[i] = a_n(i);
    for (int i = 1; i < order; ++i) off[i - 1] = std::sqrt(b_n(i));
    auto nodes = spectrum::tridiagonal_eigenvalues(diag, off);

    double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);
    for (int i = 0; i < order; ++i) bcoef[i] = (i == 0) ? mu0 : b_n(i);

    // Newton-polish each node on the monic polynomial, then weights via the
    // orthonormal-polynomial sum.
    auto monic = [&](double x, double* deriv) {
        double pm1 = 0.0, p = 1.0, dm1 = 0.0, d = 0.0;
        for (int k = 0; k < order; ++k) {
            double pn = (x - diag[k]) * p - (k > 0 ? b_n(k) : 0.0) * pm1;
            double dn = p + (x - diag[k]) * d - (k > 0 ? b_n(k) : 0.0) * dm1;
            pm1 = p;
            p = pn;
            dm1 = d;
            d = dn;
        }
        if (deriv) *deriv = d;
        return p;
    };
    JacobiRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = nodes[i];
        for (int it = 0; it < 4; ++it) {
            double d, p = monic(x, &d);
            if (d == 0.0) break;
            double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-17 * std::max(1.0, std::abs(x))) break;
        }
        rule.nodes[i] = x;
        // Orthonormal values phi_k(x): phi_0 = 1/sqrt(mu0),
        // sqrt(b_{k+1}) phi_{k+1} = (x - a_k) phi_k - sqrt(b_k) phi_{k-1}.
        double phim1 = 0.0, phi = 1.0 / std::sqrt(mu0), s = phi * phi;
        for (int k = 0; k + 1 < order; ++k) {
            double next =
                ((x - diag[k]) * phi - (k > 0 ? std::sqrt(b_n(k)) : 0.0) * phim1) /
                std::sqrt(b_n(k + 1));
            phim1 = phi;
            phi = next;
            s += phi * phi;
        }
        rule.weights[i] = 1.0 / s;
    }
    return rule;
}

std::map<double, JacobiRule>& jacobi_cache() {
    static std::map<double, JacobiRule> cache;
    return cache;
}
std::mutex jacobi_mutex;

}  // namespace

double integrate_unit_jacobi(const std::function<double(double)>& f, double b) {
    if (!(b > 0.0)) throw std::domain_error("integrate_unit_jacobi: b > 0 required");
    constexpr int order = 40;
    double a = b - 1.0;
    JacobiRule rule;
    {
        std::lock_guard<std::mutex> lock(jacobi_mutex);
        auto& cache = jacobi_cache();
        auto it = cache.find(a);
        if (it == cache.end()) it = cache.emplace(a, build_jacobi_rule(a, order)).first;
        rule = it->second;
    }
    // x = (1+t)/2 maps [-1,1] with weight (1-t)^a to [0,1] with (1-x)^{b-1}.
    double scale = std::pow(2.0, -a - 1.0);
    double sum = 0.0;
    for (int i = 0; i < order; ++i)
        sum += rule.weights[i] * f(0.5 * (1.0 + rule.nodes[i]));
    return scale * sum;
}

}  // namespace zetaheat::quadrature
