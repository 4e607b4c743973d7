#pragma once

#include <vector>

namespace zetaheat::detail {

// Least-squares polynomial fit, monomial coefficients c[0..degree] with
// y ~ sum c_j x^j. Householder QR on the scaled Vandermonde matrix.
std::vector<double> polyfit(const std::vector<double>& xs, const std::vector<double>& ys,
                            int degree);

double polyval(const std::vector<double>& coeffs, double x);

// Max |y_i - fit(x_i)| over the data.
double polyfit_max_residual(const std::vector<double>& coeffs,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys);

// Geometric grid of `count` points from a to b inclusive.
std::vector<double> geometric_grid(double a, double b, int count);

}  // namespace zetaheat::detail
