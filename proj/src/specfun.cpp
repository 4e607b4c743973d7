#include "zetaheat/specfun.hpp"

#include <cmath>
#include <cstdlib>

namespace zetaheat::specfun {

namespace {

// Lanczos approximation, g = 607/128, 15 coefficients (Boost/GSL standard set).
constexpr double lanczos_g = 607.0 / 128.0;
constexpr double lanczos_coef[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(double x, long* index) {
    if (x > 0.0) return false;
    double r = std::round(x);
    if (std::abs(x - r) < 1e-13 * std::max(1.0, std::abs(x))) {
        if (index) *index = static_cast<long>(r);
        return true;
    }
    return false;
}

// Bernoulli numbers B_2 .. B_12.
constexpr double bernoulli2k[6] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,
                                   -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
    // ln Gamma(x) = ln(A(x)) + (x-1/2) ln(x+g-1/2) - (x+g-1/2) + 0.5 ln(2 pi)
    double acc = lanczos_coef[0];
    for (int k = 1; k < 15; ++k) acc += lanczos_coef[k] / (x - 1.0 + k);
    double t = x - 0.5 + lanczos_g;
    return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

SignedLnGamma gamma_signed(double x) {
    long idx = 0;
    if (is_nonpositive_integer(x, &idx))
        throw pole_error("gamma_signed: pole at non-positive integer", idx);
    if (x > 0.0) return {+1, ln_gamma(x)};
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
    // sin(pi x) computed via the fractional part for accuracy at large |x|.
    double fl = std::floor(x);
    double frac = x - fl;  // in (0,1)
    double sin_abs = std::sin(M_PI * frac);
    int sign = (static_cast<long long>(fl) % 2 == 0) ? +1 : -1;
    double ln_abs = std::log(M_PI) - std::log(sin_abs) - ln_gamma(1.0 - x);
    return {sign, ln_abs};
}

double gamma(double x) {
    auto g = gamma_signed(x);
    return g.sign * std::exp(g.ln_abs);
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
    // Recurrence up to x >= 10, then asymptotic series.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    // psi(x) ~ ln x - 1/(2x) - sum_k B_2k / (2k x^{2k})
    double series = std::log(x) - 0.5 * inv;
    double p = inv2;
    for (int k = 0; k < 6; ++k) {
        series -= bernoulli2k[k] / (2.0 * (k + 1)) * p;
        p *= inv2;
    }
    return series + acc;
}

double harmonic(long n) {
    if (n < 0) throw std::domain_error("harmonic: requires n >= 0");
    if (n <= 1000000) {
        double s = 0.0;
        for (long k = n; k >= 1; --k) s += 1.0 / static_cast<double>(k);
        return s;
    }
    return digamma(static_cast<double>(n) + 1.0) + euler_gamma;
}

double gauss_multiplication_check(int h, double z, double b) {
    if (h < 1) throw std::domain_error("gauss_multiplication_check: h >= 1");
    auto lhs = gamma_signed(h * z + b);
    double rhs_ln = (h * z + b - 0.5) * std::log(static_cast<double>(h)) +
                    0.5 * (1.0 - h) * std::log(2.0 * M_PI);
    int rhs_sign = +1;
    for (int l = 0; l < h; ++l) {
        auto g = gamma_signed(z + (b + l) / h);
        rhs_ln += g.ln_abs;
        rhs_sign *= g.sign;
    }
    // |lhs - rhs| / |lhs| in log-safe form.
    double ratio = rhs_sign * lhs.sign * std::exp(rhs_ln - lhs.ln_abs);
    return std::abs(1.0 - ratio);
}

namespace {

// Euler-Maclaurin: zeta(s) = sum_{k<N} k^-s + N^-s/2 + N^{1-s}/(s-1)
//                  + sum_j B_2j/(2j)! * (s)_{2j-1} * N^{-s-2j+1}
constexpr int em_n = 20;

double pochhammer(double s, int len) {
    double p = 1.0;
    for (int i = 0; i < len; ++i) p *= s + i;
    return p;
}

double pochhammer_deriv(double s, int len) {
    // d/ds prod_{i<len}(s+i) = sum_i prod_{t!=i}(s+t)
    double d = 0.0;
    for (int i = 0; i < len; ++i) {
        double p = 1.0;
        for (int t = 0; t < len; ++t)
            if (t != i) p *= s + t;
        d += p;
    }
    return d;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double riemann_zeta(double s) {
    if (s == 1.0) throw pole_error("riemann_zeta: pole at s = 1", 1);
    double sum = 0.0;
    for (int k = em_n - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    double n = em_n;
    sum += 0.5 * std::pow(n, -s);
    sum += std::pow(n, 1.0 - s) / (s - 1.0);
    for (int j = 1; j <= 6; ++j) {
        sum += bernoulli2k[j - 1] / factorial(2 * j) * pochhammer(s, 2 * j - 1) *
               std::pow(n, -s - 2 * j + 1);
    }
    return sum;
}

double riemann_zeta_prime(double s) {
    if (s == 1.0) throw pole_error("riemann_zeta_prime: pole at s = 1", 1);
    double sum = 0.0;
    for (int k = em_n - 1; k >= 2; --k)
        sum -= std::log(static_cast<double>(k)) * std::pow(static_cast<double>(k), -s);
    double n = em_n;
    double ln_n = std::log(n);
    sum -= 0.5 * ln_n * std::pow(n, -s);
    sum += std::pow(n, 1.0 - s) * (-ln_n * (s - 1.0) - 1.0) / ((s - 1.0) * (s - 1.0));
    for (int j = 1; j <= 6; ++j) {
        double p = pochhammer(s, 2 * j - 1);
        double dp = pochhammer_deriv(s, 2 * j - 1);
        sum += bernoulli2k[j - 1] / factorial(2 * j) * std::pow(n, -s - 2 * j + 1) *
               (dp - ln_n * p);
    }
    return sum;
}

}  // namespace zetaheat::specfun
