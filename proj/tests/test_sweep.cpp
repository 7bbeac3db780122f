#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gdicke/config.hpp"
#include "gdicke/model.hpp"
#include "gdicke/solver.hpp"
#include "gdicke/sweep.hpp"

using namespace gdicke;

namespace {

sweep_spec small_ladder(int workers) {
    sweep_spec spec;
    spec.model = presets::xi(2, 0, 0);
    spec.run.axes = {{0, 0.0, 2.0, 3}, {1, 0.0, 2.0, 3}};
    spec.run.orders = {{0, 0}, {1, 1}};
    spec.run.workers = workers;
    return spec;
}

std::string csv_of(const sweep_result& r, int order) {
    std::ostringstream os;
    write_point_csv(os, r, order);
    return os.str();
}

}  // namespace

TEST_SUITE("sweep") {
    TEST_CASE("output is deterministic and independent of the worker count") {
        auto a = run_sweep(small_ladder(1));
        auto b = run_sweep(small_ladder(1));
        auto c = run_sweep(small_ladder(3));
        REQUIRE(a.points.size() == 9);
        for (int o : {-1, 0, 1}) {
            CHECK(csv_of(a, o) == csv_of(b, o));
            CHECK(csv_of(a, o) == csv_of(c, o));
        }
    }

    TEST_CASE("grid raster and variational order") {
        auto r = run_sweep(small_ladder(2));
        CHECK(r.nx == 3);
        CHECK(r.ny == 3);
        for (std::size_t p = 0; p < r.points.size(); ++p) {
            const auto& pt = r.points[p];
            REQUIRE(pt.ok);
            CHECK(pt.x[0] == r.x1[p % 3]);
            CHECK(pt.x[1] == r.x2[p / 3]);
            CHECK(pt.label == std::vector<int>{0, 0});
            CHECK(pt.orders[0].energy >= pt.orders[1].energy - 1e-10);
            CHECK(pt.orders[1].energy >= pt.energy - 1e-10);
            CHECK(pt.orders[0].dim <= pt.orders[1].dim);
            CHECK(pt.orders[1].dim <= pt.dim);
        }
        CHECK(std::abs(r.points[0].energy) < 1e-12);
        CHECK(r.points[0].orders[0].err.delta_energy == 0.0);
        auto csv = csv_of(r, 0);
        CHECK(csv.rfind("# raster: row-major, x1 varies fastest\n", 0) == 0);
        CHECK(csv.find("x1,x2,sector,energy,k1,k2,dim,nphot1,nphot2,var1,var2,pop1,pop2,pop3,is_separatrix,"
                       "delta_energy,delta_fluct1,delta_fluct2\n") != std::string::npos);
    }

    TEST_CASE("single point at the origin") {
        sweep_spec spec;
        spec.model = presets::xi(4, 0, 0);
        auto r = run_sweep(spec);
        REQUIRE(r.points.size() == 1);
        CHECK(r.points[0].ok);
        CHECK(std::abs(r.points[0].energy) < 1e-12);
        std::istringstream is(csv_of(r, -1));
        std::string line;
        int rows = 0;
        while (std::getline(is, line)) ++rows;
        CHECK(rows == 3);
    }

    TEST_CASE("unswept couplings are reported as coordinates") {
        sweep_spec spec;
        spec.model = presets::xi(1, 0.5, 0.75);
        auto csv = csv_of(run_sweep(spec), -1);
        CHECK(csv.find("\n0.5,0.75,ee,") != std::string::npos);
    }

    TEST_CASE("GTCM sweep") {
        sweep_spec spec;
        spec.model = presets::xi(2, 0, 0);
        spec.run.kind = model_kind::tavis_cummings;
        spec.run.axes = {{0, 0.0, 3.0, 3}};
        auto r = run_sweep(spec);
        REQUIRE(r.points.size() == 3);
        CHECK(r.points[0].label == std::vector<int>{0, 0});
        CHECK(r.points[0].energy == 0.0);
        CHECK(r.points[2].energy < 0.0);
        CHECK(csv_of(r, -1).find("\n0,0,0:0,0,") != std::string::npos);
    }

    TEST_CASE("point mode agrees with region mode at a single point") {
        sweep_spec spec;
        spec.model = presets::xi(2, 1.5, 1.0);
        auto region = run_sweep(spec);
        spec.run.mode = basis_mode::point;
        auto point = run_sweep(spec);
        CHECK(region.points[0].energy == doctest::Approx(point.points[0].energy).epsilon(1e-12));
    }

    TEST_CASE("failures are recorded and the sweep continues") {
        auto spec = small_ladder(1);
        spec.solver.dense_limit = 0;
        spec.solver.krylov = 2;
        spec.solver.max_restarts = 0;
        auto r = run_sweep(spec);
        REQUIRE(r.points.size() == 9);
        int failed = 0;
        for (const auto& p : r.points)
            if (!p.ok) {
                ++failed;
                CHECK(p.message.find("NoConvergence") != std::string::npos);
            }
        CHECK(failed > 0);
        auto dir = std::filesystem::temp_directory_path() / "gdicke_sweep_test";
        std::filesystem::create_directories(dir);
        auto files = write_sweep(r, (dir / "s").string());
        CHECK(files.size() == 6);
        std::ifstream err((dir / "s_errors.csv").string());
        std::string line;
        int rows = -1;
        while (std::getline(err, line)) ++rows;
        CHECK(rows == failed);
    }

    TEST_CASE("cached cutoffs equal fresh ones") {
        mbar_cache cache;
        CHECK(cache.get(3, 1.5, 0.0, 1e-10, 0) == converge_two_level(3, 1.5, 0.0, 0, 1e-10));
        CHECK(cache.get(3, 1.5, 0.0, 1e-10, 0) == converge_two_level(3, 1.5, 0.0, 0, 1e-10));
        CHECK(cache.size() == 1);
        cache.get(3, 1.5, 0.0, 1e-10, 1);
        CHECK(cache.size() == 2);
    }

    TEST_CASE("number formatting") {
        CHECK(format_number(0.1 + 0.2) == "0.3");
        CHECK(format_number(-0.0) == "0");
        CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    }
}
