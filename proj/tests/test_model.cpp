#include <doctest.h>

#include <cmath>

#include "gdicke/error.hpp"
#include "gdicke/model.hpp"

using namespace gdicke;

namespace {

errc code_of(const model_config& cfg) {
    try {
        model::validate(cfg);
    } catch (const error& e) {
        return e.code();
    }
    FAIL("validation succeeded");
    return errc::bad_config;
}

}  // namespace

TEST_SUITE("model") {
    TEST_CASE("xi preset is valid and resonant") {
        auto m = model::validate(presets::xi(4, 2.0, 4.0));
        REQUIRE(m.subsystems().size() == 2);
        CHECK(m.subsystems()[0].mu_bar == doctest::Approx(0.125).epsilon(1e-15));
        CHECK(m.subsystems()[1].mu_bar == doctest::Approx(0.375).epsilon(1e-15));
        CHECK(std::abs(m.subsystems()[0].delta) < 1e-15);
        CHECK(std::abs(m.subsystems()[1].delta) < 1e-15);
        CHECK(m.mu(0) == doctest::Approx(0.25));
        CHECK(m.mu(1) == doctest::Approx(1.5));
        CHECK(m.x(1) == doctest::Approx(4.0));
        CHECK(m.ell0() == 2);
    }

    TEST_CASE("mu_bar squared equals Omega omega_jk over four") {
        for (auto cfg : {presets::xi(3, 1, 1), presets::lambda(3, 1, 1), presets::vee(3, 1, 1)}) {
            auto m = model::validate(cfg);
            for (const auto& s : m.subsystems())
                CHECK(s.mu_bar * s.mu_bar == doctest::Approx(cfg.Omega[s.s] * s.omega_jk / 4).epsilon(1e-15));
            CHECK(m.subsystems().size() == cfg.couplings.size());
        }
    }

    TEST_CASE("detuning") {
        model_config cfg = presets::two_level(1, 1.0);
        cfg.omega = {0.0, 1.0};
        cfg.Omega = {0.5};
        auto m = model::validate(cfg);
        CHECK(m.subsystems()[0].delta == doctest::Approx(-0.5));
        cfg.Omega = {2.0};
        CHECK(model::validate(cfg).subsystems()[0].delta == doctest::Approx(1.0));
    }

    TEST_CASE("lambda preset resonant") {
        auto m = model::validate(presets::lambda(2, 1.0, 1.0));
        for (const auto& s : m.subsystems()) CHECK(std::abs(s.delta) < 1e-15);
    }

    TEST_CASE("coupling value") {
        two_level_subsystem sub;
        sub.mu_bar = 0.125;
        CHECK(coupling_value({0, 1, 0, 2.0, strength_kind::scaled}, sub) == doctest::Approx(0.25));
        CHECK(coupling_value({0, 1, 0, 0.0, strength_kind::scaled}, sub) == 0.0);
        CHECK(coupling_value({0, 1, 0, 0.3, strength_kind::raw}, sub) == 0.3);
    }

    TEST_CASE("validate is idempotent") {
        auto m = model::validate(presets::vee(2, 0.5, 1.5));
        CHECK(model::validate(m.config()) == m);
        model_config cfg = presets::two_level(1, 1.0);
        cfg.omega = {0.0, 0.5};
        cfg.Omega = {0.5};
        cfg.rescale = true;
        auto r = model::validate(cfg);
        CHECK(model::validate(r.config()) == r);
    }

    TEST_CASE("rescale opt-in") {
        model_config cfg = presets::two_level(1, 1.0);
        cfg.omega = {0.0, 0.5};
        cfg.Omega = {0.5};
        CHECK(code_of(cfg) == errc::bad_normalization);
        cfg.rescale = true;
        auto m = model::validate(cfg);
        CHECK(m.subsystems().size() == 1);
        CHECK(m.config().omega[1] == 1.0);
        CHECK(m.config().Omega[0] == doctest::Approx(1.0));
    }

    TEST_CASE("validation errors") {
        auto cfg = presets::xi(4, 1, 1);
        cfg.couplings.push_back({0, 1, 1, 1.0, strength_kind::scaled});
        CHECK(code_of(cfg) == errc::duplicate_transition);

        cfg = presets::xi(4, 1, 1);
        cfg.omega = {0.0, 1.0, 0.5};
        CHECK(code_of(cfg) == errc::non_monotone_levels);

        cfg = presets::xi(4, 1, 1);
        cfg.omega = {0.0, 0.0, 1.0};
        CHECK(code_of(cfg) == errc::degenerate_pair);

        cfg = presets::xi(4, 1, 1);
        cfg.couplings[0].k = 5;
        CHECK(code_of(cfg) == errc::bad_index);

        cfg = presets::xi(4, 1, 1);
        cfg.couplings[0].strength = -1.0;
        CHECK(code_of(cfg) == errc::bad_strength);

        cfg = presets::xi(0, 1, 1);
        CHECK(code_of(cfg) == errc::bad_size);
    }

    TEST_CASE("reversed pair is normalized") {
        auto cfg = presets::xi(1, 1, 1);
        std::swap(cfg.couplings[0].j, cfg.couplings[0].k);
        auto m = model::validate(cfg);
        CHECK(m.config().couplings[0].j == 0);
        CHECK(m.config().couplings[0].k == 1);
    }

    TEST_CASE("several pairs on one mode form one component") {
        model_config cfg;
        cfg.n = 3;
        cfg.ell = 1;
        cfg.atoms = 2;
        cfg.omega = {0.0, 0.5, 1.0};
        cfg.Omega = {0.5};
        cfg.couplings = {{0, 1, 0, 1.0, strength_kind::scaled}, {1, 2, 0, 1.0, strength_kind::scaled}};
        auto m = model::validate(cfg);
        CHECK(m.ell0() == 1);
        cfg.ell0 = 2;
        CHECK(model::validate(cfg).ell0() == 2);
    }

    TEST_CASE("with_x replaces strengths") {
        auto m = model::validate(presets::xi(4, 0, 0)).with_x({2.0, 4.0});
        CHECK(m.x(0) == 2.0);
        CHECK(m.mu(1) == doctest::Approx(1.5));
    }
}
