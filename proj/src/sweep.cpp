#include "gdicke/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <utility>

#include "gdicke/error.hpp"

namespace gdicke {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

int mbar_cache::get(int atoms, double x, double delta, double err, int parity, const solver_options& opts) {
    key k{atoms, std::llround(x * 1e12), std::llround(delta * 1e12), err, parity};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = values_.find(k);
        if (it != values_.end()) return it->second;
    }
    int v = converge_two_level(atoms, x, delta, parity, err, opts);
    std::lock_guard<std::mutex> lock(mu_);
    values_.emplace(k, v);
    return v;
}

std::size_t mbar_cache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return values_.size();
}

namespace {

struct sector_blocks {
    std::vector<int> sigma;
    std::shared_ptr<const basis> full;
    hamiltonian_pattern full_pattern;
    std::vector<std::shared_ptr<const basis>> reduced;
    std::vector<hamiltonian_pattern> reduced_patterns;
};

// Cutoffs covering every value in xs of each subsystem.
std::vector<int> region_cutoffs(const model& m, const symmetry_set& sym, std::span<const int> sigma,
                                const std::vector<std::vector<double>>& xs, const run_params& run,
                                mbar_cache& cache, const solver_options& opts) {
    auto parity = subsystem_parities(m, sym, sigma);
    std::vector<int> mbar;
    for (std::size_t c = 0; c < parity.size(); ++c) {
        const bool free = parity[c] < 0;
        int best = 0;
        for (double x : xs[c])
            best = std::max(best, cache.get(m.atoms(), x, m.subsystems()[c].delta, run.err, free ? 0 : parity[c], opts));
        if (free && run.policy == cutoff_policy::parity_cover) ++best;
        mbar.push_back(best);
    }
    return mbar;
}

sector_blocks make_blocks(const model& m, const symmetry_set& sym, const std::vector<int>& sigma,
                          const std::vector<int>& mbar, const run_params& run) {
    sector_blocks sb;
    sb.sigma = sigma;
    truncation t{sigma, assemble_kappa(mbar, m, sym), mbar, run.rule};
    sb.full = std::make_shared<const basis>(build_truncated(t, m, sym));
    if (!sb.full->empty()) sb.full_pattern = build_pattern(*sb.full, m, run.kind);
    for (auto [o1, o2] : run.orders) {
        auto b = std::make_shared<const basis>(build_reduced(t, o1, o2, m, sym));
        sb.reduced_patterns.push_back(b->empty() ? hamiltonian_pattern{} : build_pattern(*b, m, run.kind));
        sb.reduced.push_back(std::move(b));
    }
    return sb;
}

void solve_dicke_point(const model& pm, const std::vector<sector_blocks>& blocks, const solver_options& opts,
                       const run_params& run, sweep_point& pt, ground_state& winner) {
    bool have = false;
    std::size_t win = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& sb = blocks[i];
        if (sb.full->empty()) continue;
        auto g = solve_ground(instantiate(sb.full_pattern, pm), sb.full, opts);
        pt.sectors.push_back({sb.sigma, g.energy, sb.full->size()});
        if (!have || lower_energy(g.energy, winner.energy, run.err)) {
            winner = std::move(g);
            win = i;
            have = true;
        }
    }
    if (!have) throw error(errc::bad_size, "all requested sectors are empty");
    const auto& sb = blocks[win];
    pt.label = sb.sigma;
    pt.kappa = sb.full->meta().kappa;
    pt.energy = winner.energy;
    pt.dim = sb.full->size();
    pt.obs = expectations(winner);
    for (std::size_t o = 0; o < run.orders.size(); ++o) {
        order_row row;
        row.o1 = run.orders[o].first;
        row.o2 = run.orders[o].second;
        row.dim = sb.reduced[o]->size();
        if (row.dim == 0) throw error(errc::bad_size, "reduced basis is empty");
        auto g = solve_ground(instantiate(sb.reduced_patterns[o], pm), sb.reduced[o], opts);
        row.energy = g.energy;
        row.obs = expectations(g);
        row.err = compare(winner.energy, pt.obs, g.energy, row.obs);
        pt.orders.push_back(std::move(row));
    }
}

std::string label_text(const std::vector<int>& label, model_kind kind) {
    if (kind == model_kind::dicke) return sigma_label(label);
    std::string s;
    for (std::size_t i = 0; i < label.size(); ++i) s += (i ? ":" : "") + std::to_string(label[i]);
    return s;
}

// Axis values for swept coordinates, the point's own couplings otherwise.
std::pair<double, double> coords(const sweep_result& r, std::size_t p) {
    const auto& x = r.points[p].x;
    const auto& axes = r.spec.run.axes;
    std::vector<bool> used(x.size(), false);
    for (const auto& a : axes) used[a.subsystem] = true;
    std::size_t next = 0;
    auto fallback = [&]() {
        while (next < x.size() && used[next]) ++next;
        return next < x.size() ? x[next++] : 0.0;
    };
    const double x1 = r.x1.empty() ? fallback() : r.x1[p % r.nx];
    const double x2 = r.x2.empty() ? fallback() : r.x2[p / r.nx];
    return {x1, x2};
}

}  // namespace

sweep_result run_sweep(const sweep_spec& spec) {
    const auto& run = spec.run;
    const model base = model::validate(spec.model);
    const symmetry_set sym = find_constants(base);
    const std::size_t ncoup = base.subsystems().size();
    for (const auto& a : run.axes)
        if (a.subsystem < 0 || static_cast<std::size_t>(a.subsystem) >= ncoup)
            throw error(errc::bad_config, "sweep axis refers to coupling " + std::to_string(a.subsystem + 1));

    sweep_result res;
    res.spec = spec;
    res.x1 = run.axes.size() > 0 ? run.axes[0].values() : std::vector<double>{};
    res.x2 = run.axes.size() > 1 ? run.axes[1].values() : std::vector<double>{};
    res.nx = std::max<std::size_t>(1, res.x1.size());
    res.ny = std::max<std::size_t>(1, res.x2.size());
    const std::size_t npts = res.nx * res.ny;

    std::vector<double> base_x(ncoup);
    for (std::size_t c = 0; c < ncoup; ++c) base_x[c] = base.x(c);
    auto point_x = [&](std::size_t p) {
        auto x = base_x;
        if (!res.x1.empty()) x[run.axes[0].subsystem] = res.x1[p % res.nx];
        if (!res.x2.empty()) x[run.axes[1].subsystem] = res.x2[p / res.nx];
        return x;
    };
    std::vector<std::vector<double>> values(ncoup);
    for (std::size_t c = 0; c < ncoup; ++c) values[c] = {base_x[c]};
    for (const auto& a : run.axes) values[a.subsystem] = a.values();

    std::vector<std::vector<int>> labels = run.sectors;
    if (labels.empty())
        for (const auto& s : sectors(sym, base))
            if (s.realizable) labels.push_back(s.sigma);
    for (const auto& l : labels)
        if (static_cast<int>(l.size()) != sym.zeta0())
            throw error(errc::bad_config, "sector labels need " + std::to_string(sym.zeta0()) + " parities");

    mbar_cache cache;
    std::vector<sector_blocks> region;
    std::vector<std::vector<int>> tc_labels;
    std::map<std::vector<int>, std::shared_ptr<const basis>> tc_index;
    if (run.kind == model_kind::dicke && run.mode == basis_mode::region) {
        for (const auto& sigma : labels)
            region.push_back(make_blocks(base, sym, sigma, region_cutoffs(base, sym, sigma, values, run, cache, spec.solver), run));
    } else if (run.kind == model_kind::tavis_cummings) {
        std::vector<double> top(ncoup);
        for (std::size_t c = 0; c < ncoup; ++c) top[c] = *std::max_element(values[c].begin(), values[c].end());
        auto bound = tc_kappa_bound(base.with_x(top), sym, run.err, spec.solver);
        for (auto& b : rwa_sectors_upto(bound, base, sym)) {
            auto k = b.meta().kappa;
            tc_labels.push_back(k);
            tc_index.emplace(std::move(k), std::make_shared<const basis>(std::move(b)));
        }
    }

    res.points.resize(npts);
    std::vector<ground_state> winners(npts);
#pragma omp parallel for schedule(dynamic, 1) num_threads(run.workers)
    for (std::size_t p = 0; p < npts; ++p) {
        auto& pt = res.points[p];
        pt.x = point_x(p);
        try {
            const model pm = base.with_x(pt.x);
            if (run.kind == model_kind::tavis_cummings) {
                auto scan = ground_over_sectors(
                    pm, model_kind::tavis_cummings, tc_labels,
                    [&](const std::vector<int>& k) { return tc_index.at(k); }, spec.solver, run.err);
                pt.label = scan.best_label;
                pt.kappa = scan.best_label;
                pt.energy = scan.best.energy;
                pt.dim = scan.best.space->size();
                pt.obs = expectations(scan.best);
                pt.sectors = scan.all;
                winners[p] = std::move(scan.best);
            } else if (run.mode == basis_mode::region) {
                solve_dicke_point(pm, region, spec.solver, run, pt, winners[p]);
            } else {
                std::vector<std::vector<double>> here(ncoup);
                for (std::size_t c = 0; c < ncoup; ++c) here[c] = {pt.x[c]};
                std::vector<sector_blocks> local;
                for (const auto& sigma : labels)
                    local.push_back(make_blocks(pm, sym, sigma, region_cutoffs(pm, sym, sigma, here, run, cache, spec.solver), run));
                solve_dicke_point(pm, local, spec.solver, run, pt, winners[p]);
            }
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.message = e.what();
        }
    }

    bool all_ok = std::all_of(res.points.begin(), res.points.end(), [](const sweep_point& p) { return p.ok; });
    if (all_ok) {
        separatrix_options so{run.threshold};
        std::vector<bool> mark;
        if (res.nx >= 3 && res.ny >= 3) {
            mark = separatrix(winners, res.nx, res.ny, so);
        } else if (res.ny == 1 && res.nx >= 3) {
            std::vector<double> bonds;
            for (std::size_t i = 0; i + 1 < res.nx; ++i) bonds.push_back(fidelity(winners[i], winners[i + 1]));
            mark = separatrix_line(bonds, so);
        }
        for (std::size_t p = 0; p < mark.size(); ++p) res.points[p].separatrix = mark[p];
    }
    return res;
}

void write_point_csv(std::ostream& os, const sweep_result& r, int order_index) {
    const auto& run = r.spec.run;
    const int ell = r.spec.model.ell;
    const int n = r.spec.model.n;
    const sweep_point* first = nullptr;
    for (const auto& p : r.points)
        if (p.ok) {
            first = &p;
            break;
        }
    const std::size_t nk = first ? first->kappa.size() : 0;
    os << "# raster: row-major, x1 varies fastest\n";
    os << "x1,x2,sector,energy";
    for (std::size_t z = 0; z < nk; ++z) os << ",k" << z + 1;
    os << ",dim";
    for (int s = 0; s < ell; ++s) os << ",nphot" << s + 1;
    for (int s = 0; s < ell; ++s) os << ",var" << s + 1;
    for (int k = 0; k < n; ++k) os << ",pop" << k + 1;
    os << ",is_separatrix";
    if (order_index >= 0) {
        os << ",delta_energy";
        for (int s = 0; s < ell; ++s) os << ",delta_fluct" << s + 1;
    }
    os << "\n";
    for (std::size_t p = 0; p < r.points.size(); ++p) {
        const auto& pt = r.points[p];
        if (!pt.ok) continue;
        const auto [x1, x2] = coords(r, p);
        const bool ord = order_index >= 0;
        const auto& obs = ord ? pt.orders[order_index].obs : pt.obs;
        const double e = ord ? pt.orders[order_index].energy : pt.energy;
        const std::size_t dim = ord ? pt.orders[order_index].dim : pt.dim;
        os << format_number(x1) << ',' << format_number(x2) << ',' << label_text(pt.label, run.kind) << ','
           << format_number(e);
        for (int k : pt.kappa) os << ',' << k;
        os << ',' << dim;
        for (double v : obs.photon_mean) os << ',' << format_number(v);
        for (double v : obs.photon_var) os << ',' << format_number(v);
        for (double v : obs.population) os << ',' << format_number(v);
        os << ',' << (pt.separatrix ? 1 : 0);
        if (ord) {
            const auto& em = pt.orders[order_index].err;
            os << ',' << format_number(em.delta_energy);
            for (double v : em.delta_fluct) os << ',' << format_number(v);
        }
        os << "\n";
    }
}

std::vector<std::string> write_sweep(const sweep_result& r, const std::string& prefix) {
    std::vector<std::string> files;
    auto open = [&](const std::string& name) {
        files.push_back(name);
        std::ofstream f(name);
        if (!f) throw error(errc::bad_config, "cannot write " + name);
        return f;
    };
    {
        auto f = open(prefix + "_full.csv");
        write_point_csv(f, r, -1);
    }
    const bool tc = r.spec.run.kind == model_kind::tavis_cummings;
    if (!tc)
        for (std::size_t o = 0; o < r.spec.run.orders.size(); ++o) {
            auto [o1, o2] = r.spec.run.orders[o];
            auto f = open(prefix + "_o" + std::to_string(o1) + std::to_string(o2) + ".csv");
            write_point_csv(f, r, static_cast<int>(o));
        }
    {
        auto f = open(prefix + "_separatrix.csv");
        f << "x1,x2\n";
        for (std::size_t p = 0; p < r.points.size(); ++p)
            if (r.points[p].separatrix) {
                const auto [x1, x2] = coords(r, p);
                f << format_number(x1) << ',' << format_number(x2) << "\n";
            }
    }
    {
        auto f = open(prefix + "_errors.csv");
        f << "x1,x2,message\n";
        for (std::size_t p = 0; p < r.points.size(); ++p)
            if (!r.points[p].ok) {
                std::string msg = r.points[p].message;
                std::replace(msg.begin(), msg.end(), '"', '\'');
                const auto [x1, x2] = coords(r, p);
                f << format_number(x1) << ',' << format_number(x2) << ",\"" << msg << "\"\n";
            }
    }
    {
        auto f = open(prefix + ".gp");
        auto base = prefix.substr(prefix.find_last_of('/') + 1);
        f << "set datafile separator ','\n"
          << "set key autotitle columnhead\n"
          << "set xlabel 'x1'\nset ylabel 'x2'\n"
          << "set terminal pngcairo size 900,700\n"
          << "set output '" << base << "_energy.png'\n"
          << "splot '" << base << "_full.csv' using 1:2:4 with points palette pt 7 title 'ground energy', \\\n"
          << "      '" << base << "_separatrix.csv' using 1:2:(0) with points pt 2 lc rgb 'black' title 'separatrix'\n";
        if (!tc)
            for (auto [o1, o2] : r.spec.run.orders) {
                auto tag = std::to_string(o1) + std::to_string(o2);
                f << "set output '" << base << "_delta_o" << tag << ".png'\n"
                  << "splot '" << base << "_o" << tag << ".csv' using 1:2:'delta_energy' with points palette pt 7 "
                  << "title 'relative energy error [" << o1 << "," << o2 << "]'\n";
            }
    }
    return files;
}

std::vector<table2_row> reproduce_table2(const std::vector<double>& errs, const std::vector<double>& xs,
                                         const std::vector<int>& atoms, bool global_probe,
                                         const solver_options& opts) {
    std::vector<table2_row> rows;
    for (int na : atoms)
        for (double err : errs)
            for (double x : xs) {
                const model m = model::validate(presets::xi(na, x, x));
                const symmetry_set sym = find_constants(m);
                const std::vector<int> ee(sym.zeta0(), 0);
                table2_row row;
                row.atoms = na;
                row.err = err;
                row.x = x;
                if (global_probe) {
                    convergence_options co;
                    co.err = err;
                    co.solver = opts;
                    auto rep = converge_full(m, sym, ee, co);
                    row.mbar = rep.mbar;
                    row.kappa = rep.kappa;
                    row.dim = rep.dim;
                    row.probes = rep.iterations;
                } else {
                    row.mbar = subsystem_cutoffs(m, sym, ee, err, cutoff_policy::sector_parity, opts);
                    row.kappa = assemble_kappa(row.mbar, m, sym);
                    row.dim = build_truncated({ee, row.kappa, row.mbar, cutoff_rule::excitation}, m, sym).size();
                }
                rows.push_back(row);
            }
    return rows;
}

void write_table2(std::ostream& os, const std::vector<table2_row>& rows) {
    os << "N_a,err,x,mbar12,mbar23,k1,k2,dim,probes\n";
    for (const auto& r : rows)
        os << r.atoms << ',' << format_number(r.err) << ',' << format_number(r.x) << ',' << r.mbar[0] << ','
           << r.mbar[1] << ',' << r.kappa[0] << ',' << r.kappa[1] << ',' << r.dim << ',' << r.probes << "\n";
}

std::vector<dim_row> reproduce_dim_study(const std::vector<int>& atoms, double x, double err,
                                         const std::vector<std::pair<int, int>>& orders, cutoff_policy policy,
                                         const solver_options& opts) {
    std::vector<dim_row> rows;
    for (int na : atoms) {
        const model m = model::validate(presets::xi(na, x, x));
        const symmetry_set sym = find_constants(m);
        const std::vector<int> ee(sym.zeta0(), 0);
        dim_row row;
        row.atoms = na;
        row.mbar = subsystem_cutoffs(m, sym, ee, err, policy, opts);
        row.kappa = assemble_kappa(row.mbar, m, sym);
        truncation t{ee, row.kappa, row.mbar, cutoff_rule::excitation};
        row.full = build_truncated(t, m, sym).size();
        for (auto [o1, o2] : orders) row.reduced.push_back(build_reduced(t, o1, o2, m, sym).size());
        row.estimate = estimate_dimension(row.mbar, na, m.levels(), sym.sector_count());
        rows.push_back(row);
    }
    return rows;
}

void write_dim_study(std::ostream& os, const std::vector<dim_row>& rows,
                     const std::vector<std::pair<int, int>>& orders) {
    os << "N_a,mbar12,mbar23,k1,k2,dim_full";
    for (auto [o1, o2] : orders) os << ",dim_" << o1 << o2;
    os << ",estimate\n";
    for (const auto& r : rows) {
        os << r.atoms << ',' << r.mbar[0] << ',' << r.mbar[1] << ',' << r.kappa[0] << ',' << r.kappa[1] << ','
           << r.full;
        for (auto d : r.reduced) os << ',' << d;
        os << ',' << format_number(r.estimate) << "\n";
    }
}

}  // namespace gdicke
