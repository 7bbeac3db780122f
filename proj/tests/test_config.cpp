#include <doctest.h>

#include <sstream>
#include <string>

#include "gdicke/config.hpp"
#include "gdicke/error.hpp"
#include "gdicke/model.hpp"

using namespace gdicke;

namespace {

const char* ladder = R"(# ladder, four atoms
[levels]
count = 3
energies = 0, 0.25, 1
atoms = 4

[modes]
count = 2
frequencies = 0.25 0.75

[couplings]
coupling = 1 2 1 2 x
coupling = 2 3 2 0.3 mu   # raw strength

[run]
kind = tc
err = 1e-12
sectors = ee, oo
orders = 0 0, 1 1
axis = 1 0 4 9
axis = 2 0 4 5
workers = 3
out = /tmp/ladder
cutoff = photon
policy = cover
basis = point
threshold = 0.95
probes = 5
)";

config_file parse(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

errc code_of(const std::string& text) {
    try {
        parse(text);
    } catch (const error& e) {
        return e.code();
    }
    FAIL("parse succeeded");
    return errc::bad_size;
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("full file") {
        auto cf = parse(ladder);
        CHECK(cf.model.n == 3);
        CHECK(cf.model.ell == 2);
        CHECK(cf.model.atoms == 4);
        CHECK(cf.model.omega == std::vector<double>{0.0, 0.25, 1.0});
        CHECK(cf.model.Omega == std::vector<double>{0.25, 0.75});
        REQUIRE(cf.model.couplings.size() == 2);
        CHECK(cf.model.couplings[0] == coupling_spec{0, 1, 0, 2.0, strength_kind::scaled});
        CHECK(cf.model.couplings[1] == coupling_spec{1, 2, 1, 0.3, strength_kind::raw});
        CHECK(cf.run.kind == model_kind::tavis_cummings);
        CHECK(cf.run.err == 1e-12);
        CHECK(cf.run.sectors == std::vector<std::vector<int>>{{0, 0}, {1, 1}});
        CHECK(cf.run.orders == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
        REQUIRE(cf.run.axes.size() == 2);
        CHECK(cf.run.axes[1].subsystem == 1);
        CHECK(cf.run.axes[0].values().size() == 9);
        CHECK(cf.run.axes[0].values()[8] == 4.0);
        CHECK(cf.run.workers == 3);
        CHECK(cf.run.out == "/tmp/ladder");
        CHECK(cf.run.rule == cutoff_rule::photon);
        CHECK(cf.run.policy == cutoff_policy::parity_cover);
        CHECK(cf.run.mode == basis_mode::point);
        CHECK(cf.run.threshold == 0.95);
        CHECK(cf.run.max_probes == 5);
        auto m = model::validate(cf.model);
        CHECK(m.x(1) == doctest::Approx(0.3 / 0.375));
    }

    TEST_CASE("defaults") {
        auto cf = parse("[levels]\ncount = 2\nenergies = 0 1\natoms = 1\n[modes]\ncount = 1\nfrequencies = 1\n");
        CHECK(cf.run.kind == model_kind::dicke);
        CHECK(cf.run.err == 1e-10);
        CHECK(cf.run.sectors.empty());
        CHECK(cf.run.workers == 1);
        CHECK(cf.run.rule == cutoff_rule::excitation);
        CHECK(cf.run.policy == cutoff_policy::sector_parity);
        CHECK(cf.run.max_probes == 40);
    }

    TEST_CASE("errors") {
        CHECK(code_of("count = 2\n") == errc::bad_config);
        CHECK(code_of("[levels]\ncount = 2\ncount = 3\n") == errc::bad_config);
        CHECK(code_of("[bogus]\n") == errc::bad_config);
        CHECK(code_of("[levels]\nfoo = 1\n") == errc::bad_config);
        CHECK(code_of("[couplings]\ncoupling = 1 2\n") == errc::bad_config);
        CHECK(code_of("[run]\nerr = 0\n") == errc::bad_config);
        CHECK(code_of("[run]\nworkers = 0\n") == errc::bad_config);
        CHECK(code_of("[run]\nprobes = -1\n") == errc::bad_config);
        CHECK(code_of("[run]\nkind = quantum\n") == errc::bad_config);
        CHECK(code_of("[run]\naxis = 1 4 0 3\n") == errc::bad_config);
        CHECK(code_of("[levels]\ncount = two\n") == errc::bad_config);
        CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), error);
    }

    TEST_CASE("list parsers") {
        CHECK(parse_orders("0,0,1,1") == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
        CHECK(parse_orders("2 2") == std::vector<std::pair<int, int>>{{2, 2}});
        CHECK_THROWS_AS(parse_orders("1"), error);
        CHECK(parse_sectors("all").empty());
        CHECK(parse_sectors("eo") == std::vector<std::vector<int>>{{0, 1}});
        CHECK(parse_kind("GTCM") == model_kind::tavis_cummings);
        CHECK(parse_kind("dicke") == model_kind::dicke);
    }
}
