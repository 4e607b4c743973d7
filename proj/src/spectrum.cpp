#include "zetaheat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zetaheat::spectrum {

namespace {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
// below x, via the Sturm sequence of leading principal minors.
long sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                 double x) {
    long count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min() * 16;
    for (size_t i = 0; i < diag.size(); ++i) {
        double offsq = (i == 0) ? 0.0 : off[i - 1] * off[i - 1];
        d = diag[i] - x - offsq / d;
        if (d == 0.0) d = tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& off) {
    const size_t n = diag.size();
    if (n == 0) return {};
    if (off.size() + 1 != n)
        throw std::domain_error("tridiagonal_eigenvalues: off size must be n-1");
    // Gershgorin bounds.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                   (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    lo -= pad;
    hi += pad;
    std::vector<double> eigs(n);
    for (size_t k = 0; k < n; ++k) {
        // k-th smallest: bisect on count(x) <= k.
        double a = lo, b = hi;
        for (int iter = 0; iter < 120 && (b - a) > 1e-15 * std::max(1.0, std::abs(b));
             ++iter) {
            double mid = 0.5 * (a + b);
            if (sturm_count(diag, off, mid) > static_cast<long>(k))
                b = mid;
            else
                a = mid;
        }
        eigs[k] = 0.5 * (a + b);
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

OperatorModel::OperatorModel(int n, double h, SpectrumSource source, std::string name)
    : n_(n), h_(h), source_(std::move(source)), name_(std::move(name)) {
    if (n_ < 0) throw std::domain_error("OperatorModel: dimension n must be >= 0");
    if (!(h_ > 0.0)) throw std::domain_error("OperatorModel: order h must be > 0");

    if (auto* ex = std::get_if<ExplicitSpectrum>(&source_)) {
        for (auto& [lam, mult] : ex->levels) {
            if (!(lam > 0.0))
                throw std::domain_error("OperatorModel: non-positive eigenvalue");
            if (mult < 1)
                throw std::domain_error("OperatorModel: multiplicity must be >= 1");
            for (long j = 0; j < mult; ++j) expanded_.push_back(lam);
        }
        std::sort(expanded_.begin(), expanded_.end());
    } else if (auto* di = std::get_if<DirichletInterval>(&source_)) {
        if (!(di->length > 0.0))
            throw std::domain_error("OperatorModel: interval length must be > 0");
        if (n_ != 1 || h_ != 2.0)
            throw std::domain_error("OperatorModel: DirichletInterval requires n=1, h=2");
    } else if (auto* ks = std::get_if<KnownSequence>(&source_)) {
        if (!(ks->c > 0.0) || !(ks->p > 0.0))
            throw std::domain_error("OperatorModel: KnownSequence requires c, p > 0");
    } else if (auto* td = std::get_if<TridiagonalMatrix>(&source_)) {
        // A finite discretization has the wrong small-tau heat-trace
        // asymptotics; results are exact only relative to the matrix's own
        // spectrum. Diagonalize once and treat as an explicit spectrum.
        expanded_ = tridiagonal_eigenvalues(td->diagonal, td->off_diagonal);
        for (double lam : expanded_)
            if (!(lam > 0.0))
                throw std::domain_error("OperatorModel: matrix is not positive definite");
    }
}

int OperatorModel::order_int() const {
    double r = std::round(h_);
    if (std::abs(h_ - r) > 1e-12 || r < 1.0)
        throw std::domain_error("OperatorModel: operation requires integer order h");
    return static_cast<int>(r);
}

double OperatorModel::lambda_min() const {
    if (finite_spectrum()) {
        if (expanded_.empty())
            throw std::domain_error("OperatorModel: empty spectrum");
        return expanded_.front();
    }
    if (auto* di = std::get_if<DirichletInterval>(&source_)) {
        double w = M_PI / di->length;
        return w * w;
    }
    auto& ks = std::get<KnownSequence>(source_);
    return ks.c;
}

std::optional<std::pair<double, double>> OperatorModel::growth_law() const {
    if (auto* di = std::get_if<DirichletInterval>(&source_)) {
        double w = M_PI / di->length;
        return std::make_pair(w * w, 2.0);
    }
    if (auto* ks = std::get_if<KnownSequence>(&source_))
        return std::make_pair(ks->c, ks->p);
    return std::nullopt;
}

bool OperatorModel::exact_power_law() const {
    return std::holds_alternative<DirichletInterval>(source_) ||
           std::holds_alternative<KnownSequence>(source_);
}

bool OperatorModel::finite_spectrum() const {
    return std::holds_alternative<ExplicitSpectrum>(source_) ||
           std::holds_alternative<TridiagonalMatrix>(source_);
}

SpectrumSlice eigenvalues_up_to(const OperatorModel& model, double cutoff) {
    if (!(cutoff > 0.0)) throw std::domain_error("eigenvalues_up_to: cutoff must be > 0");
    SpectrumSlice slice;
    slice.cutoff = cutoff;
    slice.complete = true;
    if (model.finite_spectrum()) {
        if (auto* ex = std::get_if<spectrum::ExplicitSpectrum>(&model.source())) {
            for (auto& [lam, mult] : ex->levels)
                if (lam <= cutoff)
                    for (long j = 0; j < mult; ++j) slice.eigenvalues.push_back(lam);
            std::sort(slice.eigenvalues.begin(), slice.eigenvalues.end());
        } else {
            auto& td = std::get<spectrum::TridiagonalMatrix>(model.source());
            auto eigs = tridiagonal_eigenvalues(td.diagonal, td.off_diagonal);
            for (double lam : eigs)
                if (lam <= cutoff) slice.eigenvalues.push_back(lam);
            // Complete only up to the matrix's own spectral ceiling.
            slice.complete = cutoff <= eigs.back();
        }
        return slice;
    }
    auto [c, p] = *model.growth_law();
    // lambda_k = c k^p <= cutoff  =>  k <= (cutoff/c)^(1/p)
    double kmaxd = std::pow(cutoff / c, 1.0 / p);
    long kmax = static_cast<long>(std::floor(kmaxd + 1e-12));
    slice.eigenvalues.reserve(std::max<long>(kmax, 0));
    for (long k = 1; k <= kmax; ++k) {
        double lam = c * std::pow(static_cast<double>(k), p);
        if (lam <= cutoff) slice.eigenvalues.push_back(lam);
    }
    return slice;
}

double weyl_tail_bound(const OperatorModel& model, double cutoff, double tau) {
    if (model.finite_spectrum()) {
        // Zero beyond the top eigenvalue, else nothing was dropped either
        // (callers drop modes above cutoff, so bound their contribution).
        double bound = 0.0;
        auto slice_all = eigenvalues_up_to(model, std::numeric_limits<double>::max() / 4);
        double x = 0.5 * std::pow(tau, model.order());
        for (double lam : slice_all.eigenvalues)
            if (lam > cutoff) bound += std::exp(-lam * x);
        return bound;
    }
    auto [c, p] = *model.growth_law();
    // Bound sum_{k > K} e^{-lambda_k tau^h / 2} with lambda_k >= c k^p:
    // geometric majorant e^{-x K^p} / (1 - e^{-x p K^{p-1}}), x = c tau^h / 2.
    double x = 0.5 * c * std::pow(tau, model.order());
    double kd = std::pow(cutoff / c, 1.0 / p);
    double K = std::max(1.0, std::floor(kd));
    double head = std::exp(-x * std::pow(K + 1.0, p));
    double step = x * p * std::pow(K + 1.0, p - 1.0);
    if (step < 1e-300) return std::numeric_limits<double>::infinity();
    double denom = -std::expm1(-step);
    return head / denom + head;
}

}  // namespace zetaheat::spectrum
