#pragma once

#include <optional>
#include <string>

#include "zetaheat/kernels.hpp"
#include "zetaheat/quadrature.hpp"

// Continuation engine: zeta_D(s) everywhere it is defined, zeta(0), zeta'(0),
// the zeta-regularized determinant, residues, and Seeley-DeWitt coefficients.

namespace zetaheat::zeta {

struct EngineOptions {
    double theta = 45.0;
    double tau_min = 0.01;
    double quad_tol = 1e-10;   // relative quadrature tolerance
    long budget = 20000;       // trace evaluations per integral
    double eps_lattice = 1e-3; // offset used at removable lattice points
    double strip_margin = 0.05;
};

// Decision record for one continued evaluation.
struct ContinuationPlan {
    double s;
    int m;                     // parts-depth, hs + m > -0.95
    double lattice_distance;   // to the nearest (n-j)/h, j >= 0 (inf when none)
    std::vector<double> epsilon_offsets;  // empty away from the lattice
};

struct ZetaValue {
    double s;
    double value;
    double error_estimate;
    ContinuationPlan plan;
    std::string route;  // "direct" | "heat-integral" | "continued"
    bool lattice_offset_used = false;
    long modes_max = 0;
    long evaluations = 0;
};

struct ResidueReport {
    int k;
    double s0;  // (n - k) / h
    double residue;
    double residue_error;
    // Boundary shortcut K_{n,m-1}(0, D), negative-s0 case only.
    std::optional<double> boundary_residue;
    std::optional<double> boundary_error;
    std::optional<double> a_k;
    std::optional<double> a_k_error;
};

struct SeeleyResult {
    int k;
    double value;
    double error_estimate;
    std::string route;  // "residue" | "taylor-fit"
};

class Engine {
  public:
    // The engine keeps its own copy of the model; callers may pass temporaries.
    Engine(spectrum::OperatorModel model, EngineOptions opts = {});

    const spectrum::OperatorModel& model() const { return model_; }
    const EngineOptions& options() const { return opts_; }

    ContinuationPlan plan_for(double s, std::optional<int> m_override = {}) const;

    /// Direct eigenvalue sum; requires s > n/h + margin.
    ZetaValue zeta_direct(double s) const;

    /// (1/Gamma(s)) int t^{s-1} K(t) dt after t = tau^h; same validity region.
    ZetaValue zeta_heat_integral(double s) const;

    /// Modified-kernel continuation, valid for any real s off genuine poles.
    ZetaValue zeta_continued(double s, std::optional<int> m_override = {}) const;

    ZetaValue zeta_at_zero() const;
    ZetaValue zeta_prime_at_zero() const;
    double det_zeta() const;

    ResidueReport residue_at(int k) const;
    SeeleyResult seeley_coefficient(int k) const;

  private:
    struct RawEval {
        double value;
        double error;
        long modes;
        long evals;
    };
    RawEval continued_raw(double s, int m) const;
    quadrature::QuadratureResult kernel_integral(const kernels::KernelIndex& idx,
                                                 quadrature::Weight w, long* modes) const;

    spectrum::OperatorModel model_;
    EngineOptions opts_;
};

}  // namespace zetaheat::zeta
