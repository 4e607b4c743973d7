#include <cmath>
#include <random>

#include "doctest.h"
#include "zetaheat/kernels.hpp"
#include "zetaheat/spectrum.hpp"

using namespace zetaheat;
using namespace zetaheat::spectrum;

TEST_CASE("model construction validation") {
    CHECK_THROWS_AS(OperatorModel(1, 2, ExplicitSpectrum{{{-1.0, 1}}}),
                    std::domain_error);
    CHECK_THROWS_AS(OperatorModel(1, 2, ExplicitSpectrum{{{0.0, 1}}}), std::domain_error);
    CHECK_THROWS_AS(OperatorModel(2, 2, DirichletInterval{M_PI}), std::domain_error);
    CHECK_THROWS_AS(OperatorModel(1, 1, DirichletInterval{M_PI}), std::domain_error);
    CHECK_NOTHROW(OperatorModel(1, 2, DirichletInterval{M_PI}));
    CHECK_THROWS_AS(OperatorModel(1, 2, KnownSequence{-1.0, 2.0}), std::domain_error);
}

TEST_CASE("eigenvalues_up_to: dirichlet interval") {
    OperatorModel model(1, 2, DirichletInterval{M_PI});
    auto slice = eigenvalues_up_to(model, 10.0);
    REQUIRE(slice.eigenvalues.size() == 3);
    CHECK(slice.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(slice.eigenvalues[1] == doctest::Approx(4.0));
    CHECK(slice.eigenvalues[2] == doctest::Approx(9.0));
    CHECK(slice.complete);
}

TEST_CASE("eigenvalues_up_to: multiplicity expansion") {
    OperatorModel model(1, 2, ExplicitSpectrum{{{2.0, 3}}});
    auto slice = eigenvalues_up_to(model, 5.0);
    REQUIRE(slice.eigenvalues.size() == 3);
    for (double ev : slice.eigenvalues) CHECK(ev == doctest::Approx(2.0));
}

TEST_CASE("eigenvalues_up_to: tridiagonal closed form") {
    OperatorModel model(1, 2, TridiagonalMatrix{{2, 2, 2}, {-1, -1}});
    auto slice = eigenvalues_up_to(model, 4.0);
    REQUIRE(slice.eigenvalues.size() == 3);
    CHECK(slice.eigenvalues[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-10));
    CHECK(slice.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(slice.eigenvalues[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-10));
    auto partial = eigenvalues_up_to(model, 3.0);
    CHECK(partial.eigenvalues.size() == 2);
    CHECK(partial.complete);
}

TEST_CASE("prefix stability under cutoff doubling") {
    OperatorModel model(1, 2, KnownSequence{1.0, 2.0});
    auto a = eigenvalues_up_to(model, 50.0);
    auto b = eigenvalues_up_to(model, 100.0);
    REQUIRE(b.eigenvalues.size() >= a.eigenvalues.size());
    for (size_t i = 0; i < a.eigenvalues.size(); ++i)
        CHECK(a.eigenvalues[i] == b.eigenvalues[i]);
}

TEST_CASE("sturm count matches returned sizes") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    std::vector<double> diag, off;
    for (int i = 0; i < 12; ++i) diag.push_back(5.0 + u(rng));
    for (int i = 0; i < 11; ++i) off.push_back(0.3 * u(rng));
    auto eigs = tridiagonal_eigenvalues(diag, off);
    REQUIRE(eigs.size() == diag.size());
    for (size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i] >= eigs[i - 1]);
    OperatorModel model(1, 2, TridiagonalMatrix{diag, off});
    for (double cut : {5.0, 6.0, 7.0, 10.0}) {
        auto slice = eigenvalues_up_to(model, cut);
        size_t expected = 0;
        while (expected < eigs.size() && eigs[expected] <= cut) ++expected;
        CHECK(slice.eigenvalues.size() == expected);
    }
}

TEST_CASE("weyl tail bound") {
    OperatorModel expl(1, 2, ExplicitSpectrum{{{1.0, 1}, {2.0, 1}}});
    CHECK(weyl_tail_bound(expl, 5.0, 1.0) == 0.0);

    OperatorModel dirichlet(1, 2, DirichletInterval{M_PI});
    // Bound versus the brute-force modified tail at a cutoff where
    // lambda * tau^2 = 45.
    double tau = 0.5, cutoff = 45.0 / (tau * tau);
    kernels::KernelIndex idx(1, 2, 0);
    double brute = 0.0;
    for (int k = 1; k <= 4000; ++k) {
        double lam = static_cast<double>(k) * k;
        if (lam <= cutoff) continue;
        brute += std::abs(kernels::mode_kernel_polyexp(idx, lam)(tau));
    }
    auto head = kernels::trace_modified(dirichlet, idx, tau);
    CHECK(head.truncation_bound >= brute);
    // Head magnitude: sum of per-mode magnitudes (the signed head sum is
    // designed to cancel and is exponentially small here).
    double head_mag = 0.0;
    for (int k = 1; k * k <= cutoff; ++k)
        head_mag +=
            std::abs(kernels::mode_kernel_polyexp(idx, static_cast<double>(k) * k)(tau));
    CHECK(head.truncation_bound <= 1e-12 * head_mag);

    OperatorModel seq(1, 2, KnownSequence{1.0, 2.0});
    double b1 = weyl_tail_bound(seq, 30.0 / (tau * tau), tau);
    double b2 = weyl_tail_bound(seq, 60.0 / (tau * tau), tau);
    CHECK(b1 > 0.0);
    CHECK(b2 < b1);
}

TEST_CASE("dirichlet heat trace at t=1 matches truncated sum") {
    OperatorModel model(1, 2, DirichletInterval{M_PI});
    double reference = 0.0;
    for (int k = 40; k >= 1; --k) reference += std::exp(-static_cast<double>(k) * k);
    auto s = kernels::heat_trace(model, 1.0);
    CHECK(std::abs(s.value - reference) < 1e-15);
}

TEST_CASE("growth law metadata") {
    OperatorModel dirichlet(1, 2, DirichletInterval{2.0});
    auto law = dirichlet.growth_law();
    REQUIRE(law.has_value());
    CHECK(law->first == doctest::Approx(M_PI * M_PI / 4.0));
    CHECK(law->second == doctest::Approx(2.0));
    CHECK(dirichlet.exact_power_law());
    CHECK_FALSE(dirichlet.finite_spectrum());

    OperatorModel expl(1, 2, ExplicitSpectrum{{{1.0, 1}}});
    CHECK_FALSE(expl.growth_law().has_value());
    CHECK(expl.finite_spectrum());
}
