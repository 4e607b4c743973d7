#include <cmath>
#include <random>

#include "doctest.h"
#include "zetaheat/specfun.hpp"
#include "zetaheat/zeta.hpp"

using namespace zetaheat;
using namespace zetaheat::zeta;
using spectrum::DirichletInterval;
using spectrum::ExplicitSpectrum;
using spectrum::KnownSequence;
using spectrum::OperatorModel;

namespace {

OperatorModel three_modes() {
    return OperatorModel(1, 2, ExplicitSpectrum{{{1.0, 1}, {2.0, 1}, {3.0, 1}}});
}

OperatorModel dirichlet_pi() { return OperatorModel(1, 2, DirichletInterval{M_PI}); }

}  // namespace

TEST_CASE("plan_for picks the minimal strip-valid m") {
    OperatorModel model = dirichlet_pi();
    Engine eng(model);
    CHECK(eng.plan_for(1.0).m == 0);
    CHECK(eng.plan_for(0.1).m == 0);
    CHECK(eng.plan_for(-0.2).m == 0);
    // h s + m > -0.95: at s = -0.6, hs = -1.2, needs m = 1.
    CHECK(eng.plan_for(-0.6).m == 1);
    CHECK(eng.plan_for(-1.6).m == 3);
    for (double s : {2.0, 0.3, -0.7, -2.1}) {
        auto p = eng.plan_for(s);
        CHECK(model.order() * s + p.m > -1.0);
    }
}

TEST_CASE("zeta_direct examples") {
    OperatorModel m3 = three_modes();
    Engine e3(m3);
    CHECK(e3.zeta_direct(1.0).value == doctest::Approx(11.0 / 6.0).epsilon(1e-12));
    // Finite spectra converge at any s.
    CHECK(e3.zeta_direct(-1.0).value == doctest::Approx(6.0).epsilon(1e-12));
    // Infinite spectra do not converge below s = n/h.
    Engine eseq(OperatorModel(1, 2, KnownSequence{1.0, 2.0}));
    CHECK_THROWS_AS(eseq.zeta_direct(0.4), std::domain_error);

    OperatorModel dm = dirichlet_pi();
    Engine ed(dm);
    CHECK(ed.zeta_direct(1.0).value ==
          doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-10));
    CHECK(ed.zeta_direct(2.0).value ==
          doctest::Approx(std::pow(M_PI, 4) / 90.0).epsilon(1e-10));
}

TEST_CASE("zeta_heat_integral examples") {
    OperatorModel single(1, 2, ExplicitSpectrum{{{3.0, 1}}});
    Engine es(single);
    for (double s : {0.8, 1.5, 2.5})
        CHECK(es.zeta_heat_integral(s).value ==
              doctest::Approx(std::pow(3.0, -s)).epsilon(1e-8));

    OperatorModel m3 = three_modes();
    Engine e3(m3);
    double expected = 1.0 + std::pow(2.0, -1.5) + std::pow(3.0, -1.5);
    CHECK(e3.zeta_heat_integral(1.5).value == doctest::Approx(expected).epsilon(1e-8));

    OperatorModel dm = dirichlet_pi();
    Engine ed(dm);
    CHECK(std::abs(ed.zeta_heat_integral(1.0).value - M_PI * M_PI / 6.0) <=
          1e-7 * (M_PI * M_PI / 6.0));
}

TEST_CASE("zeta_continued: per-mode identity") {
    OperatorModel single(1, 2, ExplicitSpectrum{{{2.0, 1}}});
    Engine eng(single);
    for (int m = 0; m <= 3; ++m) {
        auto v = eng.zeta_continued(1.0, m);
        CHECK(v.value == doctest::Approx(0.5).epsilon(1e-8));
    }
}

TEST_CASE("zeta_continued: random per-mode draws") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ul(0.5, 10.0), us(-1.5, 3.0);
    int done = 0;
    while (done < 120) {
        int n = static_cast<int>(rng() % 4);
        if (n == 0) n = 1;
        int h = 1 + static_cast<int>(rng() % 3);
        double lambda = ul(rng);
        double s = us(rng);
        OperatorModel model(n, h, ExplicitSpectrum{{{lambda, 1}}});
        Engine eng(model);
        auto plan = eng.plan_for(s);
        if (plan.lattice_distance < 5e-3) continue;  // off-lattice draws only here
        auto v = eng.zeta_continued(s);
        double expected = std::pow(lambda, -s);
        CHECK(std::abs(v.value - expected) <= 1e-8 * std::abs(expected));
        ++done;
    }
}

TEST_CASE("zeta_continued: dirichlet oracle points") {
    OperatorModel dm = dirichlet_pi();
    Engine eng(dm);
    // zeta_D(s) = zeta_R(2s).
    auto a = eng.zeta_continued(0.25);
    CHECK(a.value == doctest::Approx(specfun::riemann_zeta(0.5)).epsilon(1e-6));
    // s = -1/2 sits on the lattice (n-j)/h; offset path.
    auto b = eng.zeta_continued(-0.5);
    CHECK(b.lattice_offset_used);
    CHECK(std::abs(b.value - (-1.0 / 12.0)) <= 1e-3);
    // Genuine pole at s = 1/2 must be rejected.
    CHECK_THROWS_AS(eng.zeta_continued(0.5), pole_error);
}

TEST_CASE("representation independence m vs m+1") {
    std::mt19937 rng(57);
    std::uniform_real_distribution<double> us(-1.2, 2.0);
    OperatorModel dm = dirichlet_pi();
    OperatorModel m3 = three_modes();
    Engine ed(dm), e3(m3);
    int done = 0;
    while (done < 30) {
        double s = us(rng);
        Engine& eng = (done % 2 == 0) ? ed : e3;
        auto plan = eng.plan_for(s);
        if (plan.lattice_distance < 5e-3) continue;
        if (eng.model().source().index() == 1 && std::abs(s - 0.5) < 0.05)
            continue;  // near the genuine Dirichlet pole
        auto a = eng.zeta_continued(s, plan.m);
        auto b = eng.zeta_continued(s, plan.m + 1);
        double tol = 3.0 * (a.error_estimate + b.error_estimate) +
                     1e-8 * std::max(std::abs(a.value), 1.0);
        CHECK(std::abs(a.value - b.value) <= tol);
        ++done;
    }
}

TEST_CASE("route overlap") {
    OperatorModel models[] = {three_modes(), dirichlet_pi(),
                              OperatorModel(1, 2, KnownSequence{2.0, 2.0})};
    for (auto& model : models) {
        Engine eng(model);
        double base = model.dimension() / model.order();
        for (double ds : {0.25, 1.0}) {
            double s = base + ds;
            double direct = eng.zeta_direct(s).value;
            double heat = eng.zeta_heat_integral(s).value;
            double cont = eng.zeta_continued(s).value;
            double scale = std::abs(direct);
            CHECK(std::abs(heat - direct) <= 1e-7 * scale);
            CHECK(std::abs(cont - direct) <= 1e-7 * scale);
        }
    }
}

TEST_CASE("zeta at zero") {
    Engine e3{three_modes()};
    CHECK(std::abs(e3.zeta_at_zero().value - 3.0) <= 1e-8);
    OperatorModel single(1, 2, ExplicitSpectrum{{{5.0, 1}}});
    Engine es(single);
    CHECK(std::abs(es.zeta_at_zero().value - 1.0) <= 1e-8);
    Engine ed{dirichlet_pi()};
    CHECK(std::abs(ed.zeta_at_zero().value + 0.5) <= 1e-4);
}

TEST_CASE("zeta prime at zero and determinant") {
    Engine e3{three_modes()};
    CHECK(e3.zeta_prime_at_zero().value == doctest::Approx(-std::log(6.0)).epsilon(1e-6));
    CHECK(e3.det_zeta() == doctest::Approx(6.0).epsilon(1e-6));

    OperatorModel me(1, 2, ExplicitSpectrum{{{std::exp(1.0), 1}}});
    Engine ee(me);
    CHECK(std::abs(ee.zeta_prime_at_zero().value + 1.0) <= 1e-8);

    Engine ed{dirichlet_pi()};
    CHECK(std::abs(ed.zeta_prime_at_zero().value + std::log(2.0 * M_PI)) <= 1e-3);
    CHECK(std::abs(ed.det_zeta() - 2.0 * M_PI) <= 1e-3 * 2.0 * M_PI);
}

TEST_CASE("residues on the dirichlet interval") {
    Engine eng{dirichlet_pi()};
    // k = 0: s0 = 1/2 with residue 1/2; a_0 = sqrt(pi)/2.
    auto r0 = eng.residue_at(0);
    CHECK(r0.s0 == doctest::Approx(0.5));
    CHECK(std::abs(r0.residue - 0.5) <= 1e-4);
    REQUIRE(r0.a_k.has_value());
    CHECK(std::abs(*r0.a_k - std::sqrt(M_PI) / 2.0) <= 1e-4);
    // k = 3: s0 = -1, residue forced to zero.
    auto r3 = eng.residue_at(3);
    CHECK(r3.s0 == doctest::Approx(-1.0));
    CHECK(std::abs(r3.residue) <= 1e-6);
    // s0 in {0, -1/2, -1, -3/2}: all vanish.
    for (int k : {1, 2, 3, 4}) {
        auto r = eng.residue_at(k);
        CHECK(std::abs(r.residue) <= 1e-6);
        if (r.boundary_residue)
            CHECK(std::abs(r.residue - *r.boundary_residue) <=
                  r.residue_error + *r.boundary_error + 1e-6);
    }
}

TEST_CASE("entire zeta for finite spectra") {
    Engine e3{three_modes()};
    for (int k = 0; k <= 8; ++k) {
        auto r = e3.residue_at(k);
        CHECK(std::abs(r.residue) <= 1e-6);
    }
    for (double s : {-1.3, -0.5, 0.3, 2.0}) {
        double exact = std::pow(1.0, -s) + std::pow(2.0, -s) + std::pow(3.0, -s);
        auto v = e3.zeta_continued(s);
        CHECK(std::abs(v.value - exact) <= 1e-7 * std::abs(exact));
    }
}

TEST_CASE("seeley coefficients on the dirichlet interval") {
    Engine eng{dirichlet_pi()};
    auto a0 = eng.seeley_coefficient(0);
    CHECK(std::abs(a0.value - std::sqrt(M_PI) / 2.0) <= 1e-4);
    CHECK(a0.route == "residue");
    auto a1 = eng.seeley_coefficient(1);
    CHECK(std::abs(a1.value + 0.5) <= 1e-3);
    auto a2 = eng.seeley_coefficient(2);
    CHECK(std::abs(a2.value) <= 1e-4);
}
