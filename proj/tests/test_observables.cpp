#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "gdicke/basis.hpp"
#include "gdicke/error.hpp"
#include "gdicke/model.hpp"
#include "gdicke/observables.hpp"
#include "gdicke/solver.hpp"
#include "gdicke/symmetry.hpp"

using namespace gdicke;

namespace {

ground_state manual_state(std::vector<int> flat, std::vector<double> c, int ell = 1, int n = 2) {
    ground_state g;
    g.space = std::make_shared<const basis>(ell, n, std::move(flat));
    g.coeffs = std::move(c);
    return g;
}

}  // namespace

TEST_SUITE("observables") {
    TEST_CASE("vacuum") {
        auto g = manual_state({0, 3, 0}, {1.0});
        auto o = expectations(g);
        CHECK(o.photon_mean[0] == 0.0);
        CHECK(o.photon_var[0] == 0.0);
        CHECK(o.population == std::vector<double>{3.0, 0.0});
    }

    TEST_CASE("equal superposition") {
        const double s = std::sqrt(0.5);
        auto o = expectations(manual_state({0, 1, 0, 2, 1, 0}, {s, s}));
        CHECK(o.photon_mean[0] == doctest::Approx(1.0));
        CHECK(o.photon_var[0] == doctest::Approx(1.0));
        CHECK(o.photon_std(0) == doctest::Approx(1.0));
    }

    TEST_CASE("populations sum to the particle number") {
        auto m = model::validate(presets::xi(4, 1.8, 2.6));
        auto sym = find_constants(m);
        auto b = std::make_shared<const basis>(build_truncated({{0, 0}, {40, 20}, {20, 20}}, m, sym));
        auto g = ground_state_on(b, m, model_kind::dicke);
        auto o = expectations(g);
        double total = 0.0;
        for (double p : o.population) total += p;
        CHECK(std::abs(total - 4.0) < 1e-10);
        for (double v : o.photon_var) CHECK(v >= 0.0);
        CHECK(o.photon_mean[1] > 0.0);

        auto zero = model::validate(presets::xi(4, 0, 0));
        auto g0 = ground_state_on(b, zero, model_kind::dicke);
        auto o0 = expectations(g0);
        CHECK(o0.photon_var[0] < 1e-20);
        CHECK(o0.photon_var[1] < 1e-20);
    }

    TEST_CASE("error metrics") {
        observable_set a;
        a.photon_var = {4.0, 1.0};
        observable_set b;
        b.photon_var = {1.0, 1.0};
        auto same = compare(-2.0, a, -2.0, a);
        CHECK(same.delta_energy == 0.0);
        CHECK(same.delta_fluct == std::vector<double>{0.0, 0.0});
        CHECK(compare(-2.0, a, -1.9, b).delta_energy == doctest::Approx(0.05));
        CHECK(compare(-2.0, a, -1.9, b).delta_fluct[0] == doctest::Approx(1.0));
        CHECK(compare(0.0, a, 5.0, b).delta_energy == 0.0);
        CHECK(compare(1e-14, a, 1e-13, b).delta_energy == 0.0);
        CHECK(compare(1e-14, a, 1e-13, b, 0.0).delta_energy > 0.0);
    }

    TEST_CASE("separatrix of a constant grid is empty") {
        auto g = manual_state({0, 1, 0}, {1.0});
        std::vector<ground_state> grid(9, g);
        auto mark = separatrix(grid, 3, 3);
        for (bool v : mark) CHECK_FALSE(v);
        CHECK_THROWS_AS(separatrix(std::vector<ground_state>(4, g), 2, 2), error);
    }

    TEST_CASE("separatrix marks a fidelity dip") {
        std::vector<double> fx(4 * 4, 1.0), fy(5 * 3, 1.0);
        // Row j = 1: bond between points 2 and 3 dips.
        fx[1 * 4 + 2] = 0.5;
        auto mark = separatrix_from_bonds(fx, fy, 5, 4);
        for (std::size_t p = 0; p < mark.size(); ++p) CHECK(mark[p] == (p == 1 * 5 + 2 || p == 1 * 5 + 3));

        auto line = separatrix_line({0.999, 0.995, 0.97, 0.98, 0.999});
        CHECK(line == std::vector<bool>{false, false, true, true, false, false});
        auto shallow = separatrix_line({0.999, 0.995, 0.991, 0.998});
        for (bool v : shallow) CHECK_FALSE(v);
        separatrix_options loose{0.9999};
        CHECK(separatrix_line({0.999, 0.995, 0.991, 0.998}, loose)[2]);
        CHECK_THROWS_AS(separatrix_line({0.5}), error);
    }

    TEST_CASE("two-level transition is detected near the critical coupling") {
        auto base = model::validate(presets::two_level(12, 0.0));
        auto sym = find_constants(base);
        auto b = std::make_shared<const basis>(build_truncated({{0}, {80}, {80}}, base, sym));
        std::vector<double> bonds;
        std::vector<ground_state> states;
        std::vector<double> xs;
        for (int i = 0; i <= 20; ++i) xs.push_back(0.1 * i);
        for (double x : xs) states.push_back(ground_state_on(b, base.with_x({x}), model_kind::dicke));
        for (std::size_t i = 0; i + 1 < states.size(); ++i) bonds.push_back(fidelity(states[i], states[i + 1]));
        auto mark = separatrix_line(bonds);
        bool near = false;
        for (std::size_t i = 0; i < mark.size(); ++i) {
            if (!mark[i]) continue;
            CHECK(xs[i] > 0.7);
            CHECK(xs[i] < 1.6);
            near = true;
        }
        CHECK(near);
    }
}
