#include "gdicke/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "gdicke/error.hpp"
#include "gdicke/symmetry.hpp"

namespace gdicke {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw error(errc::bad_config, "line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) fail(line, "bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(line, "bad number '" + s + "'");
    }
}

int to_int(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) fail(line, "bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(line, "bad integer '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string::npos) {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

std::vector<double> to_doubles(const std::string& s, int line) {
    std::vector<double> v;
    for (const auto& t : split(s, ", \t")) v.push_back(to_double(t, line));
    return v;
}

bool to_bool(const std::string& s, int line) {
    auto v = lower(s);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(line, "bad boolean '" + s + "'");
}

}  // namespace

std::vector<double> axis::values() const {
    std::vector<double> v;
    if (points <= 1) return {lo};
    for (int i = 0; i < points; ++i) v.push_back(lo + (hi - lo) * i / (points - 1));
    return v;
}

std::vector<std::pair<int, int>> parse_orders(const std::string& text) {
    auto t = split(text, ",; \t");
    if (t.size() % 2 != 0) throw error(errc::bad_config, "orders come in o1,o2 pairs");
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < t.size(); i += 2) {
        int a = to_int(t[i], 0);
        int b = to_int(t[i + 1], 0);
        if (a < 0 || b < 0) throw error(errc::bad_config, "orders must be nonnegative");
        out.emplace_back(a, b);
    }
    return out;
}

std::vector<std::vector<int>> parse_sectors(const std::string& text) {
    std::vector<std::vector<int>> out;
    if (lower(trim(text)) == "all" || trim(text).empty()) return out;
    for (const auto& t : split(text, ", \t")) out.push_back(parse_sigma(t));
    return out;
}

model_kind parse_kind(const std::string& text) {
    auto v = lower(trim(text));
    if (v == "dicke" || v == "gdm") return model_kind::dicke;
    if (v == "tc" || v == "gtcm" || v == "tavis-cummings") return model_kind::tavis_cummings;
    throw error(errc::bad_config, "kind must be dicke or tc, got '" + text + "'");
}

config_file parse_config(std::istream& is) {
    config_file cf;
    auto& m = cf.model;
    auto& r = cf.run;
    std::string section;
    std::string raw;
    int line = 0;
    std::map<std::string, int> seen;
    while (std::getline(is, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') fail(line, "unterminated section header");
            section = lower(trim(text.substr(1, text.size() - 2)));
            if (section != "levels" && section != "modes" && section != "couplings" && section != "run")
                fail(line, "unknown section '" + section + "'");
            continue;
        }
        auto eq = text.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        std::string key = lower(trim(text.substr(0, eq)));
        std::string val = trim(text.substr(eq + 1));
        if (section.empty()) fail(line, "key outside of a section");
        if (key != "coupling" && key != "axis" && seen[section + "." + key]++)
            fail(line, "duplicate key '" + key + "'");

        if (section == "levels") {
            if (key == "count")
                m.n = to_int(val, line);
            else if (key == "energies")
                m.omega = to_doubles(val, line);
            else if (key == "atoms")
                m.atoms = to_int(val, line);
            else if (key == "rescale")
                m.rescale = to_bool(val, line);
            else if (key == "subsystems")
                m.ell0 = to_int(val, line);
            else
                fail(line, "unknown key '" + key + "' in [levels]");
        } else if (section == "modes") {
            if (key == "count")
                m.ell = to_int(val, line);
            else if (key == "frequencies")
                m.Omega = to_doubles(val, line);
            else
                fail(line, "unknown key '" + key + "' in [modes]");
        } else if (section == "couplings") {
            if (key != "coupling") fail(line, "unknown key '" + key + "' in [couplings]");
            auto t = split(val, ", \t");
            if (t.size() != 4 && t.size() != 5) fail(line, "coupling = lower upper mode strength [x|mu]");
            coupling_spec c;
            c.j = to_int(t[0], line) - 1;
            c.k = to_int(t[1], line) - 1;
            c.s = to_int(t[2], line) - 1;
            c.strength = to_double(t[3], line);
            if (t.size() == 5) {
                auto unit = lower(t[4]);
                if (unit == "x")
                    c.kind = strength_kind::scaled;
                else if (unit == "mu")
                    c.kind = strength_kind::raw;
                else
                    fail(line, "strength unit must be x or mu");
            }
            m.couplings.push_back(c);
        } else {
            if (key == "kind")
                r.kind = parse_kind(val);
            else if (key == "err")
                r.err = to_double(val, line);
            else if (key == "sectors")
                r.sectors = parse_sectors(val);
            else if (key == "orders")
                r.orders = parse_orders(val);
            else if (key == "axis") {
                auto t = split(val, ", \t");
                if (t.size() != 4) fail(line, "axis = subsystem min max points");
                axis a{to_int(t[0], line) - 1, to_double(t[1], line), to_double(t[2], line), to_int(t[3], line)};
                if (a.points < 1 || a.lo > a.hi) fail(line, "axis needs points >= 1 and min <= max");
                r.axes.push_back(a);
            } else if (key == "workers")
                r.workers = to_int(val, line);
            else if (key == "out")
                r.out = val;
            else if (key == "cutoff") {
                auto v = lower(val);
                if (v == "excitation")
                    r.rule = cutoff_rule::excitation;
                else if (v == "photon")
                    r.rule = cutoff_rule::photon;
                else
                    fail(line, "cutoff must be excitation or photon");
            } else if (key == "policy") {
                auto v = lower(val);
                if (v == "sector")
                    r.policy = cutoff_policy::sector_parity;
                else if (v == "cover")
                    r.policy = cutoff_policy::parity_cover;
                else
                    fail(line, "policy must be sector or cover");
            } else if (key == "basis") {
                auto v = lower(val);
                if (v == "region")
                    r.mode = basis_mode::region;
                else if (v == "point")
                    r.mode = basis_mode::point;
                else
                    fail(line, "basis must be region or point");
            } else if (key == "threshold")
                r.threshold = to_double(val, line);
            else if (key == "probes")
                r.max_probes = to_int(val, line);
            else
                fail(line, "unknown key '" + key + "' in [run]");
        }
    }
    if (!(r.err > 0.0)) throw error(errc::bad_config, "err must be positive");
    if (r.workers < 1) throw error(errc::bad_config, "workers must be at least 1");
    if (r.axes.size() > 2) throw error(errc::bad_config, "at most two sweep axes");
    if (r.max_probes < 0) throw error(errc::bad_config, "probes must be nonnegative");
    return cf;
}

config_file load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::bad_config, "cannot open " + path);
    return parse_config(in);
}

}  // namespace gdicke
