#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zetaheat/errors.hpp"

// Operator models at trace level: dimension n, order h, and a spectrum
// source. Eigenfunctions are deliberately unrepresented.

namespace zetaheat::spectrum {

struct ExplicitSpectrum {
    // (eigenvalue, multiplicity), eigenvalues strictly positive.
    std::vector<std::pair<double, long>> levels;
};

struct DirichletInterval {
    double length;  // lambda_k = (k pi / L)^2, k >= 1; forces n = 1, h = 2
};

struct KnownSequence {
    // lambda_k = c * k^p exactly, k >= 1.
    double c;
    double p;
};

struct TridiagonalMatrix {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  // size = diagonal.size() - 1
};

using SpectrumSource =
    std::variant<ExplicitSpectrum, DirichletInterval, KnownSequence, TridiagonalMatrix>;

class OperatorModel {
  public:
    // Throws std::domain_error when the source violates positivity or the
    // (n, h) metadata conflicts with the source (DirichletInterval pins n=1, h=2).
    OperatorModel(int n, double h, SpectrumSource source, std::string name = "");

    int dimension() const { return n_; }
    double order() const { return h_; }
    int order_int() const;  // throws when h is not a positive integer
    const std::string& name() const { return name_; }
    const SpectrumSource& source() const { return source_; }

    double lambda_min() const;

    // Asymptotic growth lambda_k ~ c k^p; absent for ExplicitSpectrum
    // and TridiagonalMatrix (finite spectra).
    std::optional<std::pair<double, double>> growth_law() const;

    // True when the spectrum is exactly lambda_k = c k^p for all k.
    bool exact_power_law() const;

    bool finite_spectrum() const;

  private:
    int n_;
    double h_;
    SpectrumSource source_;
    std::string name_;
    std::vector<double> expanded_;  // finite sources, ascending with multiplicity
};

struct SpectrumSlice {
    std::vector<double> eigenvalues;  // ascending, multiplicities expanded
    double cutoff;
    bool complete;  // every eigenvalue <= cutoff is present
};

/// All eigenvalues <= cutoff, ascending. TridiagonalMatrix sources are
/// resolved by Sturm-sequence bisection at model construction.
SpectrumSlice eigenvalues_up_to(const OperatorModel& model, double cutoff);

/// Upper bound on |sum_{lambda > cutoff} contribution| to a modified trace
/// at time tau; polynomial per-mode factors are absorbed by the
/// e^{-lambda tau^h / 2} margin. Zero for finite spectra beyond their top.
double weyl_tail_bound(const OperatorModel& model, double cutoff, double tau);

/// Sturm-sequence bisection for a symmetric tridiagonal matrix; all
/// eigenvalues, ascending. Exposed for reuse (Gauss-Jacobi nodes).
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& off);

}  // namespace zetaheat::spectrum
