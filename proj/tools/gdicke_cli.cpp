#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gdicke/basis.hpp"
#include "gdicke/config.hpp"
#include "gdicke/error.hpp"
#include "gdicke/model.hpp"
#include "gdicke/solver.hpp"
#include "gdicke/sweep.hpp"
#include "gdicke/symmetry.hpp"

namespace {

using namespace gdicke;

constexpr int exit_config = 2;
constexpr int exit_convergence = 3;

struct overrides {
    std::string config;
    std::optional<double> err;
    std::string orders;
    std::string sectors;
    std::string kind;
    std::string out;
    std::optional<int> workers;
};

config_file load(const overrides& o) {
    if (o.config.empty()) throw error(errc::bad_config, "--config is required");
    auto cf = load_config(o.config);
    if (o.err) cf.run.err = *o.err;
    if (!o.orders.empty()) cf.run.orders = parse_orders(o.orders);
    if (!o.sectors.empty()) cf.run.sectors = parse_sectors(o.sectors);
    if (!o.kind.empty()) cf.run.kind = parse_kind(o.kind);
    if (!o.out.empty()) cf.run.out = o.out;
    if (o.workers) cf.run.workers = *o.workers;
    if (!(cf.run.err > 0.0)) throw error(errc::bad_config, "err must be positive");
    if (cf.run.workers < 1) throw error(errc::bad_config, "workers must be at least 1");
    return cf;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        std::stringstream ts(tok);
        T v;
        if (!(ts >> v)) throw error(errc::bad_config, "bad list entry '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::ostream& sink(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw error(errc::bad_config, "cannot write " + path);
    return file;
}

int cmd_validate(const overrides& o) {
    auto cf = load(o);
    auto m = model::validate(cf.model);
    std::cout << "levels " << m.levels() << ", modes " << m.modes() << ", atoms " << m.atoms() << ", subsystems "
              << m.subsystems().size() << ", ell0 " << m.ell0() << "\n";
    std::cout << "j,k,mode,omega_jk,mu_bar,delta,x,mu\n";
    for (std::size_t c = 0; c < m.subsystems().size(); ++c) {
        const auto& s = m.subsystems()[c];
        std::cout << s.j + 1 << ',' << s.k + 1 << ',' << s.s + 1 << ',' << format_number(s.omega_jk) << ','
                  << format_number(s.mu_bar) << ',' << format_number(s.delta) << ',' << format_number(m.x(c)) << ','
                  << format_number(m.mu(c)) << "\n";
    }
    return 0;
}

int cmd_symmetry(const overrides& o, bool csv) {
    auto m = model::validate(load(o).model);
    auto sym = find_constants(m);
    auto secs = sectors(sym, m);
    if (csv) {
        std::cout << "op";
        for (int s = 0; s < m.modes(); ++s) std::cout << ",eta" << s + 1;
        for (int k = 0; k < m.levels(); ++k) std::cout << ",lambda" << k + 1;
        std::cout << "\n";
        for (int z = 0; z < sym.zeta0(); ++z) {
            std::cout << "K" << z + 1;
            for (int v : sym.ops[z].eta) std::cout << ',' << v;
            for (int v : sym.ops[z].lambda) std::cout << ',' << v;
            std::cout << "\n";
        }
        std::cout << "sector,realizable";
        for (int z = 0; z < sym.zeta0(); ++z) std::cout << ",kappa_min" << z + 1;
        std::cout << "\n";
        for (const auto& s : secs) {
            std::cout << s.label() << ',' << (s.realizable ? 1 : 0);
            for (int v : s.kappa_min) std::cout << ',' << v;
            std::cout << "\n";
        }
        return 0;
    }
    std::cout << "rank " << sym.rank << ", zeta0 " << sym.zeta0() << ", sectors " << sym.sector_count() << "\n";
    for (int z = 0; z < sym.zeta0(); ++z) {
        std::cout << "K" << z + 1 << "  eta = (";
        for (int s = 0; s < m.modes(); ++s) std::cout << (s ? "," : "") << sym.ops[z].eta[s];
        std::cout << ")  lambda = (";
        for (int k = 0; k < m.levels(); ++k) std::cout << (k ? "," : "") << sym.ops[z].lambda[k];
        std::cout << ")\n";
    }
    for (const auto& s : secs) {
        std::cout << "sector " << s.label() << "  kappa_min = (";
        for (std::size_t z = 0; z < s.kappa_min.size(); ++z) std::cout << (z ? "," : "") << s.kappa_min[z];
        std::cout << ")" << (s.realizable ? "" : "  excluded") << "\n";
    }
    return 0;
}

int cmd_basis_dims(int atoms_max, int k1_max, const std::string& out) {
    std::ofstream file;
    auto& os = sink(out, file);
    os << "config,N_a,k1,k2,dim_formula,dim_enumerated\n";
    struct entry {
        const char* name;
        model_config (*make)(int, double, double, double);
        long long (*formula)(int, int, int);
        int extra;
    };
    const entry table[] = {{"lambda", presets::lambda, dim_lambda, 1}, {"xi", presets::xi, dim_xi, 0},
                           {"v", presets::vee, dim_v, 0}};
    for (const auto& e : table)
        for (int na = 1; na <= atoms_max; ++na) {
            auto m = model::validate(e.make(na, 1.0, 1.0, 0.25));
            auto sym = find_constants(m);
            for (int k1 = 0; k1 <= k1_max; ++k1)
                for (int k2 = 0; k2 <= k1 + e.extra * na; ++k2) {
                    std::vector<int> k{k1, k2};
                    os << e.name << ',' << na << ',' << k1 << ',' << k2 << ',' << e.formula(na, k1, k2) << ','
                       << enumerate_rwa_sector(k, m, sym).size() << "\n";
                }
        }
    return 0;
}

int cmd_converge(const overrides& o) {
    auto cf = load(o);
    auto m = model::validate(cf.model);
    auto sym = find_constants(m);
    auto labels = cf.run.sectors;
    if (labels.empty())
        for (const auto& s : sectors(sym, m))
            if (s.realizable) labels.push_back(s.sigma);
    convergence_options co;
    co.err = cf.run.err;
    co.rule = cf.run.rule;
    co.policy = cf.run.policy;
    co.kind = cf.run.kind;
    co.max_iterations = cf.run.max_probes;
    std::ofstream file;
    auto& os = sink(o.out, file);
    os << "sector";
    for (std::size_t c = 0; c < m.subsystems().size(); ++c) os << ",mbar" << c + 1;
    for (int z = 0; z < sym.zeta0(); ++z) os << ",k" << z + 1;
    os << ",iterations,deficit,err,dim\n";
    for (const auto& sigma : labels) {
        auto rep = converge_full(m, sym, sigma, co);
        os << sigma_label(sigma);
        for (int v : rep.mbar) os << ',' << v;
        for (int v : rep.kappa) os << ',' << v;
        os << ',' << rep.iterations << ',' << format_number(rep.deficit) << ',' << format_number(rep.err) << ','
           << rep.dim << "\n";
    }
    return 0;
}

int sweep_exit(const sweep_result& r) {
    for (const auto& p : r.points)
        if (!p.ok) return p.message.rfind("NoConvergence", 0) == 0 ? exit_convergence : exit_config;
    return 0;
}

int cmd_solve(const overrides& o) {
    auto cf = load(o);
    cf.run.axes.clear();
    sweep_spec spec{cf.model, cf.run, {}};
    auto r = run_sweep(spec);
    const auto& pt = r.points.front();
    if (!pt.ok) {
        std::cerr << pt.message << "\n";
        return sweep_exit(r);
    }
    std::cout << "ground energy " << format_number(pt.energy) << " in "
              << (cf.run.kind == model_kind::dicke ? "sector " + sigma_label(pt.label) : "kappa block")
              << ", dim " << pt.dim << "\n";
    std::cout << "label,energy,dim\n";
    for (const auto& s : pt.sectors) {
        if (cf.run.kind == model_kind::dicke)
            std::cout << sigma_label(s.label);
        else
            for (std::size_t i = 0; i < s.label.size(); ++i) std::cout << (i ? ":" : "") << s.label[i];
        std::cout << ',' << format_number(s.energy) << ',' << s.dim << "\n";
    }
    write_point_csv(std::cout, r, -1);
    for (std::size_t i = 0; i < pt.orders.size(); ++i) write_point_csv(std::cout, r, static_cast<int>(i));
    return 0;
}

int cmd_sweep(const overrides& o) {
    auto cf = load(o);
    sweep_spec spec{cf.model, cf.run, {}};
    auto r = run_sweep(spec);
    for (const auto& f : write_sweep(r, cf.run.out)) std::cout << f << "\n";
    return sweep_exit(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Dicke model: symmetry-adapted bases, truncation and ground states"};
    app.require_subcommand(1);
    overrides o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "configuration file");
        sub->add_option("--err", o.err, "fidelity tolerance");
        sub->add_option("--orders", o.orders, "reduction orders o1,o2[,o1,o2...]");
        sub->add_option("--sectors", o.sectors, "parity sectors, e.g. ee,eo or all");
        sub->add_option("--kind", o.kind, "dicke or tc");
        sub->add_option("--out", o.out, "output path or prefix");
        sub->add_option("--workers", o.workers, "worker threads");
    };

    auto* validate = app.add_subcommand("validate", "check a configuration and list its subsystems");
    common(validate);
    bool csv = false;
    auto* symmetry = app.add_subcommand("symmetry", "constants of motion and parity sectors");
    common(symmetry);
    symmetry->add_flag("--csv", csv, "CSV output");
    auto* basis_cmd = app.add_subcommand("basis", "basis utilities");
    basis_cmd->require_subcommand(1);
    auto* dims = basis_cmd->add_subcommand("dims", "closed-form versus enumerated RWA sector dimensions");
    int atoms_max = 5;
    int k1_max = 12;
    std::string dims_out;
    dims->add_option("--atoms-max", atoms_max, "largest particle number");
    dims->add_option("--k1-max", k1_max, "largest k1");
    dims->add_option("--out", dims_out, "CSV path");
    auto* converge = app.add_subcommand("converge", "fidelity convergence report per sector");
    common(converge);
    auto* solve = app.add_subcommand("solve", "ground state at the configured couplings");
    common(solve);
    auto* sweep = app.add_subcommand("sweep", "phase-diagram sweep");
    common(sweep);

    auto* table2 = app.add_subcommand("table2", "truncated-basis dimensions of the resonant ladder");
    std::string t2_err = "1e-10,1e-15";
    std::string t2_x = "1.5,3";
    std::string t2_atoms = "1,2,3,4,5";
    std::string t2_out;
    bool no_probe = false;
    table2->add_option("--err", t2_err, "comma-separated tolerances");
    table2->add_option("--x", t2_x, "comma-separated symmetric couplings");
    table2->add_option("--atoms", t2_atoms, "comma-separated particle numbers");
    table2->add_option("--out", t2_out, "CSV path");
    table2->add_flag("--no-probe", no_probe, "skip the global fidelity probe");
    table2->add_option("--workers", o.workers, "unused; accepted for uniformity");

    auto* dimstudy = app.add_subcommand("dimstudy", "full versus reduced basis dimensions");
    std::string ds_atoms = "1,10";
    double ds_x = 4.0;
    double ds_err = 1e-10;
    std::string ds_orders = "2,2,1,1,0,0";
    std::string ds_policy = "sector";
    std::string ds_out;
    dimstudy->add_option("--atoms", ds_atoms, "comma-separated particle numbers");
    dimstudy->add_option("--x", ds_x, "symmetric coupling");
    dimstudy->add_option("--err", ds_err, "fidelity tolerance");
    dimstudy->add_option("--orders", ds_orders, "reduction orders");
    dimstudy->add_option("--policy", ds_policy, "sector or cover");
    dimstudy->add_option("--out", ds_out, "CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*symmetry) return cmd_symmetry(o, csv);
        if (*dims) return cmd_basis_dims(atoms_max, k1_max, dims_out);
        if (*converge) return cmd_converge(o);
        if (*solve) return cmd_solve(o);
        if (*sweep) return cmd_sweep(o);
        if (*table2) {
            auto rows = reproduce_table2(parse_list<double>(t2_err), parse_list<double>(t2_x),
                                         parse_list<int>(t2_atoms), !no_probe);
            std::ofstream file;
            write_table2(sink(t2_out, file), rows);
            return 0;
        }
        if (*dimstudy) {
            cutoff_policy policy = ds_policy == "cover" ? cutoff_policy::parity_cover : cutoff_policy::sector_parity;
            if (ds_policy != "cover" && ds_policy != "sector")
                throw error(errc::bad_config, "policy must be sector or cover");
            auto orders = parse_orders(ds_orders);
            auto rows = reproduce_dim_study(parse_list<int>(ds_atoms), ds_x, ds_err, orders, policy);
            std::ofstream file;
            write_dim_study(sink(ds_out, file), rows, orders);
            return 0;
        }
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == errc::no_convergence ? exit_convergence : exit_config;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return exit_config;
    }
    return 0;
}
