#include "rfso/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rfso/errors.hpp"

namespace rfso::cli {

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct RawScenario {
    std::string name;
    std::map<std::pair<std::string, std::string>, RawEntry> entries;

    [[noreturn]] void fail(int line, const std::string& msg) const {
        std::ostringstream os;
        os << name << ":" << line << ": " << msg;
        throw config_error(os.str());
    }

    RawEntry* find(const std::string& sec, const std::string& key) {
        auto it = entries.find({sec, key});
        if (it == entries.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    std::string require(const std::string& sec, const std::string& key) {
        RawEntry* e = find(sec, key);
        if (!e) {
            std::ostringstream os;
            os << name << ": missing required key '" << key << "' in [" << sec << "]";
            throw config_error(os.str());
        }
        return e->value;
    }
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

const char* kSections[] = {"channel", "link", "power", "engine", "output"};

RawScenario tokenize(const std::string& text, const std::string& name) {
    RawScenario raw;
    raw.name = name;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') raw.fail(lineno, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (std::find_if(std::begin(kSections), std::end(kSections), [&](const char* s) {
                    return section == s;
                }) == std::end(kSections))
                raw.fail(lineno, "unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) raw.fail(lineno, "expected 'key = value'");
        if (section.empty()) raw.fail(lineno, "key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) raw.fail(lineno, "empty key");
        if (value.empty()) raw.fail(lineno, "empty value for key '" + key + "'");
        if (!raw.entries.emplace(std::make_pair(section, key), RawEntry{value, lineno}).second)
            raw.fail(lineno, "duplicate key '" + key + "' in [" + section + "]");
    }
    return raw;
}

double parse_double(const RawScenario& raw, const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size() || !std::isfinite(v)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        raw.fail(e.line, "value of '" + key + "' is not a number: '" + e.value + "'");
    }
}

long long parse_int(const RawScenario& raw, const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        raw.fail(e.line, "value of '" + key + "' is not an integer: '" + e.value + "'");
    }
}

std::uint64_t parse_u64(const RawScenario& raw, const RawEntry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        raw.fail(e.line, "value of '" + key + "' is not an unsigned integer: '" + e.value + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

std::vector<double> parse_grid(const RawScenario& raw, const RawEntry& e) {
    std::vector<double> grid;
    if (e.value.find(':') != std::string::npos) {
        const auto parts = split(e.value, ':');
        if (parts.size() != 3 && parts.size() != 4)
            raw.fail(e.line, "grid must be 'min:max:count[:log]' or a comma list");
        double lo, hi;
        long long count;
        try {
            lo = std::stod(parts[0]);
            hi = std::stod(parts[1]);
            count = std::stoll(parts[2]);
        } catch (const std::exception&) {
            raw.fail(e.line, "malformed grid range '" + e.value + "'");
        }
        bool log_scale = false;
        if (parts.size() == 4) {
            if (parts[3] != "log") raw.fail(e.line, "grid scale must be 'log'");
            log_scale = true;
        }
        if (count < 1) raw.fail(e.line, "grid count must be >= 1");
        if (count == 1) {
            if (lo != hi) raw.fail(e.line, "single-point grid needs min == max");
            return {lo};
        }
        if (!(hi > lo)) raw.fail(e.line, "grid needs max > min");
        if (log_scale && !(lo > 0.0)) raw.fail(e.line, "log grid needs min > 0");
        for (long long i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(count - 1);
            grid.push_back(log_scale ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
        }
        return grid;
    }
    for (const std::string& tok : split(e.value, ',')) {
        try {
            grid.push_back(std::stod(tok));
        } catch (const std::exception&) {
            raw.fail(e.line, "malformed grid value '" + tok + "'");
        }
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            raw.fail(e.line, "grid values must be strictly increasing");
    return grid;
}

} // namespace

std::string engine_choice_name(EngineChoice e) {
    switch (e) {
        case EngineChoice::clt: return "clt";
        case EngineChoice::clt_exactq: return "clt_exactq";
        case EngineChoice::minkowski: return "minkowski";
        case EngineChoice::montecarlo: return "montecarlo";
        case EngineChoice::all: return "all";
    }
    return "unknown";
}

ScenarioFile parse_scenario_text(const std::string& text, const std::string& source_name) {
    RawScenario raw = tokenize(text, source_name);
    ScenarioFile sc;

    // [channel]
    if (RawEntry* e = raw.find("channel", "a")) sc.channel.a = parse_double(raw, *e, "a");
    if (RawEntry* e = raw.find("channel", "b")) sc.channel.b = parse_double(raw, *e, "b");
    if (!(sc.channel.a > 0.0) || !(sc.channel.b > 0.0))
        throw config_error(source_name + ": channel shapes a, b must be positive");

    bool rician = false;
    int rf_model_line = 0;
    if (RawEntry* e = raw.find("channel", "rf_model")) {
        rf_model_line = e->line;
        if (e->value == "rayleigh")
            rician = false;
        else if (e->value == "rician")
            rician = true;
        else
            raw.fail(e->line, "rf_model must be 'rayleigh' or 'rician'");
    }
    RawEntry* nu_entry = raw.find("channel", "nu");
    RawEntry* omega_entry = raw.find("channel", "omega");
    if (rician) {
        RicianParams rp{0.0995, 0.7036};
        if (nu_entry) rp.nu = parse_double(raw, *nu_entry, "nu");
        if (omega_entry) rp.omega = parse_double(raw, *omega_entry, "omega");
        if (!(rp.nu >= 0.0) || !(rp.omega > 0.0))
            throw config_error(source_name + ": need nu >= 0 and omega > 0");
        sc.rf_model = RfChannelModel::make_rician(rp);
    } else {
        if (nu_entry) raw.fail(nu_entry->line, "'nu' is only valid with rf_model = rician");
        if (omega_entry) raw.fail(omega_entry->line, "'omega' is only valid with rf_model = rician");
        sc.rf_model = RfChannelModel::make_rayleigh();
        (void)rf_model_line;
    }

    // [output] parsed early because other requirements depend on the sweep
    sc.csv_path = raw.require("output", "csv");
    {
        const std::string s = raw.require("output", "sweep");
        if (s == "power")
            sc.sweep = SweepVar::power;
        else if (s == "rate")
            sc.sweep = SweepVar::rate;
        else if (s == "budget")
            sc.sweep = SweepVar::budget;
        else
            throw config_error(source_name + ": sweep must be power, rate or budget");
    }
    {
        RawEntry* e = raw.find("output", "grid");
        if (!e) throw config_error(source_name + ": missing required key 'grid' in [output]");
        sc.grid = parse_grid(raw, *e);
        for (double v : sc.grid)
            if (!(v > 0.0)) raw.fail(e->line, "grid values must be positive");
    }

    // [link]
    {
        RawEntry* e = raw.find("link", "n_fso");
        if (!e) throw config_error(source_name + ": missing required key 'n_fso' in [link]");
        const long long n = parse_int(raw, *e, "n_fso");
        if (n < 1) raw.fail(e->line, "n_fso must be >= 1");
        sc.n_fso = static_cast<int>(n);
    }
    {
        RawEntry* e = raw.find("link", "max_rounds");
        if (!e) throw config_error(source_name + ": missing required key 'max_rounds' in [link]");
        const long long m = parse_int(raw, *e, "max_rounds");
        if (m < 1) raw.fail(e->line, "max_rounds must be >= 1");
        sc.max_rounds = static_cast<int>(m);
    }
    {
        RawEntry* e = raw.find("link", "rate");
        if (sc.sweep == SweepVar::rate) {
            if (e) raw.fail(e->line, "rate is the sweep variable; remove link.rate");
        } else {
            if (!e) throw config_error(source_name + ": missing required key 'rate' in [link]");
            sc.rate = parse_double(raw, *e, "rate");
            if (!(sc.rate > 0.0)) raw.fail(e->line, "rate must be positive");
        }
    }

    // [power]
    {
        const std::string mode = raw.require("power", "mode");
        if (mode == "peak")
            sc.power_mode = PowerMode::peak;
        else if (mode == "expected_energy")
            sc.power_mode = PowerMode::expected_energy;
        else
            throw config_error(source_name + ": power mode must be peak or expected_energy");
    }
    if ((sc.sweep == SweepVar::budget) != (sc.power_mode == PowerMode::expected_energy))
        throw config_error(source_name +
                           ": budget sweeps pair with mode = expected_energy, power/rate sweeps "
                           "with mode = peak");
    {
        RawEntry* e = raw.find("power", "value");
        const bool swept = sc.sweep == SweepVar::power || sc.sweep == SweepVar::budget;
        if (swept) {
            if (e) raw.fail(e->line, "power is the sweep variable; remove power.value");
        } else {
            if (!e) throw config_error(source_name + ": missing required key 'value' in [power]");
            sc.power_value = parse_double(raw, *e, "value");
            if (!(sc.power_value > 0.0)) raw.fail(e->line, "power value must be positive");
        }
    }
    if (RawEntry* e = raw.find("power", "rf_fso_split")) {
        sc.rf_split = parse_double(raw, *e, "rf_fso_split");
        if (!(sc.rf_split >= 0.0) || !(sc.rf_split <= 1.0))
            raw.fail(e->line, "rf_fso_split must lie in [0,1]");
    }

    // [engine]
    {
        const std::string eng = raw.require("engine", "engine");
        if (eng == "clt")
            sc.engine = EngineChoice::clt;
        else if (eng == "clt_exactq")
            sc.engine = EngineChoice::clt_exactq;
        else if (eng == "minkowski")
            sc.engine = EngineChoice::minkowski;
        else if (eng == "montecarlo")
            sc.engine = EngineChoice::montecarlo;
        else if (eng == "all")
            sc.engine = EngineChoice::all;
        else
            throw config_error(source_name + ": unknown engine '" + eng + "'");
    }
    if (RawEntry* e = raw.find("engine", "trials")) {
        sc.trials = parse_int(raw, *e, "trials");
        if (sc.trials < 1) raw.fail(e->line, "trials must be positive");
    }
    if (RawEntry* e = raw.find("engine", "seed")) sc.seed = parse_u64(raw, *e, "seed");
    if (RawEntry* e = raw.find("engine", "batch_count")) {
        sc.batch_count = static_cast<int>(parse_int(raw, *e, "batch_count"));
        if (sc.batch_count < 2) raw.fail(e->line, "batch_count must be >= 2");
    }
    if (RawEntry* e = raw.find("engine", "max_n")) {
        sc.max_n = static_cast<int>(parse_int(raw, *e, "max_n"));
        if (sc.max_n < 1) raw.fail(e->line, "max_n must be >= 1");
    }
    if (RawEntry* e = raw.find("engine", "grid_resolution")) {
        sc.grid_resolution = static_cast<int>(parse_int(raw, *e, "grid_resolution"));
        if (sc.grid_resolution < 50) raw.fail(e->line, "grid_resolution must be >= 50");
    }

    if (sc.engine == EngineChoice::minkowski && sc.n_fso > sc.max_n)
        throw config_error(source_name + ": engine minkowski requires n_fso <= max_n (" +
                           std::to_string(sc.max_n) + "), got n_fso = " +
                           std::to_string(sc.n_fso) + "; use the clt engine for large n_fso");
    if (sc.engine == EngineChoice::montecarlo || sc.engine == EngineChoice::all) {
        if (sc.trials < 10000)
            throw config_error(source_name + ": Monte Carlo runs need trials >= 10000");
        if (sc.trials % sc.batch_count != 0)
            throw config_error(source_name + ": batch_count must divide trials");
    }

    // fail closed on anything not consumed above
    const RawEntry* stray = nullptr;
    std::pair<std::string, std::string> stray_key;
    for (const auto& [k, v] : raw.entries) {
        if (!v.used && (!stray || v.line < stray->line)) {
            stray = &v;
            stray_key = k;
        }
    }
    if (stray) raw.fail(stray->line, "unknown key '" + stray_key.second + "' in [" +
                                         stray_key.first + "]");

    return sc;
}

ScenarioFile parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

} // namespace rfso::cli
