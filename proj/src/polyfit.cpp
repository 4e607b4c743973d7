#include "zetaheat/polyfit.hpp"

#include <cmath>
#include <stdexcept>

namespace zetaheat::detail {

std::vector<double> polyfit(const std::vector<double>& xs, const std::vector<double>& ys,
                            int degree) {
    const int n = static_cast<int>(xs.size());
    const int m = degree + 1;
    if (n < m) throw std::domain_error("polyfit: not enough points");
    double xscale = 0.0;
    for (double x : xs) xscale = std::max(xscale, std::abs(x));
    if (xscale == 0.0) xscale = 1.0;

    // A (n x m) Vandermonde in x/xscale, solved by Householder QR in long double.
    std::vector<long double> A(static_cast<size_t>(n) * m);
    std::vector<long double> b(ys.begin(), ys.end());
    for (int i = 0; i < n; ++i) {
        long double t = 1.0L, u = xs[i] / xscale;
        for (int j = 0; j < m; ++j) {
            A[static_cast<size_t>(i) * m + j] = t;
            t *= u;
        }
    }
    for (int j = 0; j < m; ++j) {
        // Householder vector for column j.
        long double norm = 0.0L;
        for (int i = j; i < n; ++i) norm += A[i * m + j] * A[i * m + j];
        norm = std::sqrt((double)norm);
        if (norm == 0.0L) throw std::domain_error("polyfit: rank deficient");
        long double alpha = (A[j * m + j] >= 0 ? -norm : norm);
        std::vector<long double> v(n - j);
        v[0] = A[j * m + j] - alpha;
        for (int i = j + 1; i < n; ++i) v[i - j] = A[i * m + j];
        long double vtv = 0.0L;
        for (auto w : v) vtv += w * w;
        A[j * m + j] = alpha;
        for (int i = j + 1; i < n; ++i) A[i * m + j] = 0.0L;
        if (vtv > 0.0L) {
            for (int k = j + 1; k < m; ++k) {
                long double dot = 0.0L;
                for (int i = j; i < n; ++i) dot += v[i - j] * A[i * m + k];
                long double f = 2.0L * dot / vtv;
                for (int i = j; i < n; ++i) A[i * m + k] -= f * v[i - j];
            }
            long double dot = 0.0L;
            for (int i = j; i < n; ++i) dot += v[i - j] * b[i];
            long double f = 2.0L * dot / vtv;
            for (int i = j; i < n; ++i) b[i] -= f * v[i - j];
        }
    }
    // Back substitution.
    std::vector<double> c(m);
    for (int j = m - 1; j >= 0; --j) {
        long double s = b[j];
        for (int k = j + 1; k < m; ++k) s -= A[j * m + k] * c[k];
        c[j] = static_cast<double>(s / A[j * m + j]);
    }
    // Undo scaling.
    double sc = 1.0;
    for (int j = 0; j < m; ++j) {
        c[j] /= sc;
        sc *= xscale;
    }
    return c;
}

double polyval(const std::vector<double>& coeffs, double x) {
    double y = 0.0;
    for (size_t j = coeffs.size(); j-- > 0;) y = y * x + coeffs[j];
    return y;
}

double polyfit_max_residual(const std::vector<double>& coeffs,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys) {
    double worst = 0.0;
    for (size_t i = 0; i < xs.size(); ++i)
        worst = std::max(worst, std::abs(ys[i] - polyval(coeffs, xs[i])));
    return worst;
}

std::vector<double> geometric_grid(double a, double b, int count) {
    std::vector<double> g(count);
    double ratio = std::pow(b / a, 1.0 / (count - 1));
    double x = a;
    for (int i = 0; i < count; ++i) {
        g[i] = x;
        x *= ratio;
    }
    g.back() = b;
    return g;
}

}  // namespace zetaheat::detail
