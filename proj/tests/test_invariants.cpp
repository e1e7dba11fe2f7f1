#include <doctest.h>

#include <cmath>

#include "prodfn/error.hpp"
#include "prodfn/invariants.hpp"
#include "support.hpp"

using namespace prodfn;
using prodfn::test::published_model;
using prodfn::test::rel_diff;

namespace {

ErrorCode code_of(auto &&call) {
    try {
        call();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::domain;
}

ExponentialModel unit_model(double b1, double b2, double b3) {
    return ExponentialModel(b1, b2, b3, 0.0, 0.0, 0.0);
}

const auto horizon = make_grid(0.0, 24.0, 0.25);

// Direct transcription of the additive-recombination formula with plain pow.
double generalized_ces_oracle(const ExponentialModel &m, double alpha, double L, double K) {
    const double L0 = std::exp(m.ln_L0()), K0 = std::exp(m.ln_K0()), Y0 = std::exp(m.ln_Y0());
    const double y_scale = std::pow(Y0, 1.0 / m.b3());
    const double k_part = alpha * y_scale / std::pow(K0, 1.0 / m.b2()) * std::pow(K, 1.0 / m.b2());
    const double l_part =
        y_scale / std::pow(L0, 1.0 / m.b1()) * (1.0 - alpha) * std::pow(L, 1.0 / m.b1());
    return std::pow(k_part + l_part, m.b3());
}

}  // namespace

TEST_CASE("fundamental_invariant_L") {
    SUBCASE("equal rates") {
        const ExponentialModel m(0.04, 0.07, 0.04, 1.5, 2.0, 3.25);
        const auto fn = fundamental_invariant_L(m);
        CHECK(fn.exponent() == 1.0);
        CHECK(fn.coeff() == doctest::Approx(std::exp(3.25) / std::exp(1.5)).epsilon(1e-14));
        CHECK(fn.input() == Input::labor);
    }
    SUBCASE("published model") {
        CHECK(fundamental_invariant_L(published_model()).exponent() ==
              doctest::Approx(1.40910101760861).epsilon(1e-13));
    }
    SUBCASE("Y = L^2 along the trajectory") {
        const auto m = unit_model(0.02, 0.3, 0.04);
        const auto fn = fundamental_invariant_L(m);
        CHECK(fn.coeff() == 1.0);
        CHECK(fn.exponent() == 2.0);
        for (double t : horizon) {
            const auto at = trajectory(m, t);
            CHECK(rel_diff(at.Y, at.L * at.L) < 1e-13);
        }
    }
    CHECK(code_of([] { fundamental_invariant_L(unit_model(0.0, 0.1, 0.1)); }) ==
          ErrorCode::degenerate);
}

TEST_CASE("fundamental_invariant_K") {
    const ExponentialModel m(0.01, 0.05, 0.05, 1.0, 2.0, 4.0);
    const auto fn = fundamental_invariant_K(m);
    CHECK(fn.exponent() == 1.0);
    CHECK(fn.coeff() == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(fn.input() == Input::capital);

    CHECK(fundamental_invariant_K(published_model()).exponent() ==
          doctest::Approx(0.5550583972595713).epsilon(1e-13));

    const auto half = unit_model(0.3, 0.06, 0.03);
    for (double t : horizon) {
        const auto at = trajectory(half, t);
        CHECK(rel_diff(at.Y, std::sqrt(at.K)) < 1e-13);
    }
    CHECK(code_of([] { fundamental_invariant_K(unit_model(0.1, 0.0, 0.1)); }) ==
          ErrorCode::degenerate);
}

TEST_CASE("cobb_douglas_member") {
    SUBCASE("all rates equal") {
        const ExponentialModel m(0.05, 0.05, 0.05, 1.0, 2.0, 3.0);
        for (double alpha : {0.1, 0.5, 0.9}) {
            const auto fn = cobb_douglas_member(m, alpha);
            CHECK(fn.beta() == doctest::Approx(1.0 - alpha).epsilon(1e-15));
            CHECK(fn.A() == doctest::Approx(std::exp(3.0 - alpha * 1.0 - (1 - alpha) * 2.0))
                                .epsilon(1e-14));
        }
    }
    SUBCASE("published model, published alpha") {
        const auto fn = cobb_douglas_member(published_model(), 0.7341175376);
        CHECK(std::abs(fn.beta() - 0.2658824627) < 1e-9);
    }
    SUBCASE("published model, alpha = 0.5") {
        const auto fn = cobb_douglas_member(published_model(), 0.5);
        CHECK(fn.beta() == doctest::Approx(0.35810360469205094).epsilon(1e-13));
    }
    CHECK(code_of([] { cobb_douglas_member(unit_model(0.1, 0.0, 0.1), 0.5); }) ==
          ErrorCode::degenerate);
    CHECK(code_of([] { cobb_douglas_member(published_model(), 1.0); }) == ErrorCode::domain);
    CHECK(code_of([] { cobb_douglas_member(published_model(), -0.1); }) == ErrorCode::domain);
}

TEST_CASE("crs_elasticities") {
    SUBCASE("published model") {
        const auto e = crs_elasticities(published_model());
        CHECK(std::abs(e.alpha - 0.7341175376) < 1e-9);
        CHECK(std::abs(e.beta - 0.2658824627) < 1e-9);
        CHECK(e.is_share());
        const double A = cobb_douglas_member(published_model(), e.alpha).A();
        CHECK(std::abs(A - 1.01) <= 0.005);
    }
    SUBCASE("midpoint") {
        const auto e = crs_elasticities(unit_model(0.0, 1.0, 0.5));
        CHECK(e.alpha == 0.5);
        CHECK(e.beta == 0.5);
    }
    SUBCASE("quarter split") {
        const auto e = crs_elasticities(unit_model(0.02, 0.06, 0.03));
        CHECK(e.alpha == doctest::Approx(0.75).epsilon(1e-14));
        CHECK(e.beta == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("b3 outside the rates warns but still returns") {
        const auto e = crs_elasticities(unit_model(0.02, 0.06, 0.08));
        CHECK_FALSE(e.is_share());
        CHECK(e.alpha < 0.0);
        REQUIRE(e.warnings.size() == 1);
    }
    SUBCASE("reversed order b2 < b3 < b1 is a share") {
        CHECK(crs_elasticities(unit_model(0.06, 0.02, 0.03)).is_share());
    }
    CHECK(code_of([] { crs_elasticities(unit_model(0.05, 0.05, 0.01)); }) ==
          ErrorCode::degenerate);
}

TEST_CASE("crs_elasticities properties") {
    test::Rng rng(41);
    for (int i = 0; i < 2000; ++i) {
        const auto m = unit_model(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                                  rng.uniform(-0.2, 0.2));
        const auto e = crs_elasticities(m);
        CHECK(std::abs(e.alpha + e.beta - 1.0) <= 1e-12);
        const bool between = (m.b1() < m.b3() && m.b3() < m.b2()) ||
                             (m.b2() < m.b3() && m.b3() < m.b1());
        CHECK((e.alpha > 0.0 && e.alpha < 1.0) == between);
        CHECK(e.is_share() == between);
        if (between && std::abs(m.b2()) >= 0.01) {
            // the CRS share is the family member whose capital exponent is 1 - alpha
            const double family_beta = m.b3() / m.b2() - e.alpha * m.b1() / m.b2();
            CHECK(std::abs(family_beta - e.beta) <= 1e-12);
        }
    }
}

TEST_CASE("ces_like_member") {
    SUBCASE("unit rates give the arithmetic mean") {
        const auto fn = ces_like_member(unit_model(1.0, 1.0, 1.0), 0.5);
        CHECK(evaluate(fn, 2.0, 6.0) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(fn.cK() == doctest::Approx(0.5));
        CHECK(fn.cL() == doctest::Approx(0.5));
    }
    SUBCASE("published model is constant along its trajectory") {
        const auto fn = ces_like_member(published_model(), 0.5);
        CHECK(constancy_check(fn, published_model(), make_grid(0.0, 24.0, 0.5)) <= 1e-9);
        CHECK(fn.eK() == 1.0 / 0.06472564);
        CHECK(fn.eL() == 1.0 / 0.02549605);
        CHECK(fn.outer() == 0.03592651);
    }
    SUBCASE("matches the direct pow oracle") {
        const auto m = published_model();
        for (double L : {80.0, 150.0, 300.0}) {
            for (double K : {90.0, 200.0, 400.0}) {
                const double expected = generalized_ces_oracle(m, 0.3, L, K);
                CHECK(rel_diff(evaluate(ces_like_member(m, 0.3), L, K), expected) < 1e-11);
            }
        }
    }
    SUBCASE("equal capital and labor rates match CES pointwise") {
        const auto fn = ces_like_member(unit_model(0.5, 0.5, 0.25), 0.4);
        const CES ces(1.0, 0.4, 2.0, 0.5);
        for (double L : {0.5, 1.0, 7.0, 300.0}) {
            for (double K : {0.25, 2.0, 40.0}) {
                CHECK(rel_diff(evaluate(fn, L, K), evaluate(ces, L, K)) < 1e-13);
            }
        }
    }
    CHECK(code_of([] { ces_like_member(unit_model(0.1, 0.1, 0.0), 0.5); }) ==
          ErrorCode::degenerate);
    CHECK(code_of([] { ces_like_member(unit_model(0.0, 0.1, 0.1), 0.5); }) ==
          ErrorCode::degenerate);
    CHECK(code_of([] { ces_like_member(unit_model(0.1, 0.1, 0.1), 0.0); }) == ErrorCode::domain);
}

TEST_CASE("ces_like_member symmetry between labor and capital") {
    test::Rng rng(43);
    for (int i = 0; i < 300; ++i) {
        const auto m = test::random_model(rng);
        const ExponentialModel swapped(m.b2(), m.b1(), m.b3(), m.ln_K0(), m.ln_L0(), m.ln_Y0());
        const double alpha = rng.uniform(0.05, 0.95);
        const auto fn = ces_like_member(m, alpha);
        const auto mirror = ces_like_member(swapped, 1.0 - alpha);
        const double L = rng.uniform(10.0, 1000.0), K = rng.uniform(10.0, 1000.0);
        CHECK(std::abs(log_evaluate(fn, L, K) - log_evaluate(mirror, K, L)) < 1e-12);
    }
}

TEST_CASE("ces_reduction") {
    SUBCASE("linear production") {
        const auto r = ces_reduction(unit_model(1.0, 1.0, 1.0), 0.3, 1e-9);
        CHECK(r.function.A() == 1.0);
        CHECK(r.function.p() == 1.0);
        CHECK(r.function.v() == 1.0);
        CHECK(r.function.alpha() == 0.3);
        CHECK_FALSE(r.function.sigma().has_value());
        CHECK(r.warnings.size() == 1);
    }
    SUBCASE("p = 2, v = 0.5") {
        const auto r = ces_reduction(unit_model(0.5, 0.5, 0.25), 0.4, 1e-9);
        CHECK(r.function == CES(1.0, 0.4, 2.0, 0.5));
        CHECK(*r.function.sigma() == -1.0);
        CHECK(r.warnings.size() == 1);
    }
    SUBCASE("p < 1 has no warning") {
        const auto r = ces_reduction(unit_model(-2.0, -2.0, 1.0), 0.4, 1e-9);
        CHECK(r.function.p() == -0.5);
        CHECK(r.warnings.empty());
    }
    SUBCASE("A from common initial level") {
        const double ln_c = std::log(100.0);
        const ExponentialModel m(0.04, 0.04, 0.03, ln_c, ln_c, ln_c);
        const auto r = ces_reduction(m, 0.5, 1e-9);
        CHECK(r.function.A() == doctest::Approx(std::pow(100.0, 1.0 - 0.03 / 0.04)).epsilon(1e-13));
        CHECK(constancy_check(r.function, m, horizon) <= 1e-9);
    }
    SUBCASE("preconditions") {
        CHECK(code_of([] { ces_reduction(unit_model(0.02, 0.06, 0.03), 0.5, 1e-6); }) ==
              ErrorCode::not_reducible);
        CHECK(code_of([] { ces_reduction(unit_model(0.0, 0.0, 0.03), 0.5, 1e-6); }) ==
              ErrorCode::not_reducible);
        CHECK(code_of([] {
                  ces_reduction(ExponentialModel(0.05, 0.05, 0.03, 0.0, 0.1, 0.0), 0.5, 1e-6);
              }) == ErrorCode::not_reducible);
        CHECK(code_of([] {
                  ces_reduction(ExponentialModel(0.05, 0.05, 0.03, 0.0, 0.0, 0.1), 0.5, 1e-6);
              }) == ErrorCode::not_reducible);
        try {
            (void)ces_reduction(unit_model(0.02, 0.06, 0.03), 0.5, 1e-6);
        } catch (const Error &e) {
            CHECK(std::string(e.what()).find("b1") != std::string::npos);
        }
        // near-equal values pass within tolerance
        CHECK_NOTHROW(ces_reduction(ExponentialModel(0.05, 0.05 * (1 + 1e-8), 0.03, 0.0, 1e-8, 0.0),
                                    0.5, 1e-6));
    }
}

TEST_CASE("constancy_check") {
    const auto m = published_model();
    SUBCASE("Cobb-Douglas member on its own model") {
        for (double alpha : {0.1, 0.5, 0.7341175376, 0.95}) {
            CHECK(constancy_check(cobb_douglas_member(m, alpha), m, make_grid(-10, 50, 0.1)) <=
                  1e-10);
        }
    }
    SUBCASE("fundamental invariants") {
        CHECK(constancy_check(fundamental_invariant_L(m), m, horizon) <= 1e-12);
        CHECK(constancy_check(fundamental_invariant_K(m), m, horizon) <= 1e-12);
    }
    SUBCASE("power law is judged by its invariant combination") {
        // a wrong exponent drifts, a wrong coefficient does not
        const auto good = fundamental_invariant_L(m);
        const PowerLaw drift = PowerLaw::from_log(good.ln_coeff(), good.exponent() + 0.01,
                                                  Input::labor);
        CHECK(constancy_check(drift, m, horizon) > 1e-4);
        const PowerLaw rescaled = PowerLaw::from_log(good.ln_coeff() + 1.0, good.exponent(),
                                                     Input::labor);
        CHECK(constancy_check(rescaled, m, horizon) <= 1e-12);
    }
    SUBCASE("perturbed exponent deviates more as t grows") {
        const auto base = cobb_douglas_member(m, 0.6);
        const auto bent = CobbDouglas::from_log(base.ln_A(), base.alpha(), base.beta() + 0.01);
        const double d0 = relative_deviation(bent, m, 0.0);
        const double d12 = relative_deviation(bent, m, 12.0);
        const double d24 = relative_deviation(bent, m, 24.0);
        CHECK(d0 > 0.0);
        CHECK(d12 > d0);
        CHECK(d24 > d12);
        CHECK(constancy_check(bent, m, horizon) == d24);
    }
    SUBCASE("single point at t = 0") {
        const std::vector<double> origin{0.0};
        CHECK(constancy_check(cobb_douglas_member(m, 0.3), m, origin) <= 1e-15);
        CHECK(constancy_check(ces_like_member(m, 0.3), m, origin) <= 1e-13);
    }
    SUBCASE("empty grid is rejected") {
        CHECK_THROWS_AS((void)constancy_check(fundamental_invariant_L(m), m, {}), Error);
    }
}

TEST_CASE("derived families are invariants of random models") {
    test::Rng rng(47);
    for (int i = 0; i < 200; ++i) {
        const auto m = test::random_model(rng);
        CHECK(constancy_check(fundamental_invariant_L(m), m, horizon) <= 1e-9);
        CHECK(constancy_check(fundamental_invariant_K(m), m, horizon) <= 1e-9);
        const double alpha = rng.uniform(0.01, 0.99);
        CHECK(constancy_check(cobb_douglas_member(m, alpha), m, horizon) <= 1e-9);
        CHECK(constancy_check(ces_like_member(m, alpha), m, horizon) <= 1e-9);
    }
}

TEST_CASE("CES reduction agrees with the generalized member") {
    test::Rng rng(53);
    for (int i = 0; i < 100; ++i) {
        const double b = rng.uniform(0.01, 0.1);
        const double ln_c = rng.uniform(0.0, 7.0);
        const ExponentialModel m(b, b, rng.uniform(0.01, 0.1), ln_c, ln_c, ln_c);
        const double alpha = rng.uniform(0.05, 0.95);
        const auto general = ces_like_member(m, alpha);
        const auto reduced = ces_reduction(m, alpha, 1e-12).function;
        for (double L : {10.0, 55.0, 400.0, 1000.0}) {
            for (double K : {10.0, 123.0, 1000.0}) {
                CHECK(std::abs(std::expm1(log_evaluate(general, L, K) -
                                          log_evaluate(reduced, L, K))) <= 1e-12);
            }
        }
    }
}

TEST_CASE("identity_chain_check") {
    CHECK(identity_chain_check(published_model(), 0.3, 1.0, 1.0) <= 1e-12);
    CHECK(identity_chain_check(published_model(), 0.7341175376, 150.0, 300.0) <= 1e-12);

    test::Rng rng(59);
    for (int i = 0; i < 300; ++i) {
        const auto m = test::random_model(rng, 0.01, 0.1);
        CHECK(identity_chain_check(m, rng.uniform(0.01, 0.99), rng.uniform(10.0, 1000.0),
                                   rng.uniform(10.0, 1000.0)) <= 1e-10);
    }
    CHECK(code_of([] { identity_chain_check(unit_model(0.1, 0.1, 0.0), 0.5, 2, 2); }) ==
          ErrorCode::degenerate);
}

TEST_CASE("make_grid") {
    CHECK(make_grid(0.0, 24.0, 0.25).size() == 97);
    CHECK(make_grid(0.0, 24.0, 0.25).back() == 24.0);
    CHECK(make_grid(0.0, 1.0, 0.1).size() == 11);
    CHECK(make_grid(0.0, 0.0, 1.0) == std::vector<double>{0.0});
    CHECK(make_grid(0.0, 0.95, 0.5).size() == 2);
    CHECK_THROWS_AS((void)make_grid(0.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS((void)make_grid(2.0, 1.0, 0.5), Error);
}
