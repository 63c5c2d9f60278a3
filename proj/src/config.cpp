#include <qslit/config.hpp>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace qslit {

RunConfig default_config() { return RunConfig{}; }

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail(line, "trailing characters after number '" + tok + "'");
        return v;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(line, "expected a number, got '" + tok + "'");
    }
}

TomlValue parse_value(const std::string& raw, int line) {
    if (raw.empty()) fail(line, "missing value");
    if (raw == "true") return true;
    if (raw == "false") return false;
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
        return raw.substr(1, raw.size() - 2);
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') fail(line, "unterminated array");
        std::vector<double> vals;
        std::string inner = raw.substr(1, raw.size() - 2);
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) fail(line, "empty array element");
            vals.push_back(parse_number(tok, line));
        }
        return vals;
    }
    // bare scalar: integer when it looks like one, float otherwise
    if (raw.find_first_of(".eE") == std::string::npos) {
        long long iv = 0;
        const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), iv);
        if (res.ec == std::errc() && res.ptr == raw.data() + raw.size()) return iv;
    }
    return parse_number(raw, line);
}

// strips a trailing comment, respecting quoted strings
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

double as_double(const TomlValue& v, const std::string& key) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<long long>(&v)) return static_cast<double>(*i);
    throw config_error("key '" + key + "' must be a number");
}

long long as_int(const TomlValue& v, const std::string& key) {
    if (const auto* i = std::get_if<long long>(&v)) return *i;
    throw config_error("key '" + key + "' must be an integer");
}

bool as_bool(const TomlValue& v, const std::string& key) {
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    throw config_error("key '" + key + "' must be true or false");
}

std::string as_string(const TomlValue& v, const std::string& key) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw config_error("key '" + key + "' must be a quoted string");
}

std::vector<double> as_array(const TomlValue& v, const std::string& key, std::size_t want) {
    if (const auto* a = std::get_if<std::vector<double>>(&v)) {
        if (want != 0 && a->size() != want)
            throw config_error("key '" + key + "' must hold " + std::to_string(want) + " numbers");
        return *a;
    }
    throw config_error("key '" + key + "' must be an array of numbers");
}

}  // namespace

TomlTable parse_toml(std::istream& is) {
    TomlTable table;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(lineno, "empty section name");
            table[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (section.empty()) fail(lineno, "key outside any [section]");
        if (table[section].count(key)) fail(lineno, "duplicate key '" + key + "'");
        table[section][key] = parse_value(val, lineno);
    }
    return table;
}

RunConfig config_from_table(const TomlTable& table) {
    RunConfig cfg = default_config();

    for (const auto& [section, entries] : table) {
        for (const auto& [key, value] : entries) {
            const std::string where = section + "." + key;
            if (section == "physics") {
                if (key == "m") cfg.physics.m = as_double(value, where);
                else if (key == "omega") cfg.physics.omega = as_double(value, where);
                else if (key == "v0") cfg.physics.v0 = as_double(value, where);
                else if (key == "alpha") cfg.physics.alpha = as_double(value, where);
                else if (key == "hbar") cfg.physics.hbar = as_double(value, where);
                else if (key == "u") { cfg.physics.u = as_double(value, where); cfg.ensemble.u = cfg.physics.u; }
                else throw config_error("unknown key '" + where + "'");
            } else if (section == "integrator") {
                if (key == "rtol") cfg.integrator.rtol = as_double(value, where);
                else if (key == "atol") cfg.integrator.atol = as_double(value, where);
                else if (key == "h0") cfg.integrator.h0 = as_double(value, where);
                else if (key == "h_max") cfg.integrator.h_max = as_double(value, where);
                else if (key == "t_max") cfg.integrator.t_max = as_double(value, where);
                else if (key == "x_screen") cfg.integrator.x_screen = as_double(value, where);
                else if (key == "x_reflect") cfg.integrator.x_reflect = as_double(value, where);
                else throw config_error("unknown key '" + where + "'");
            } else if (section == "ensemble") {
                if (key == "n") cfg.ensemble.n = static_cast<int>(as_int(value, where));
                else if (key == "y_range") {
                    const auto r = as_array(value, where, 2);
                    cfg.ensemble.y_min = r[0];
                    cfg.ensemble.y_max = r[1];
                }
                else if (key == "sampler") cfg.ensemble.sampler = sampler_from_name(as_string(value, where));
                else if (key == "seed") cfg.ensemble.seed = static_cast<std::uint64_t>(as_int(value, where));
                else if (key == "sigma") cfg.ensemble.sigma = as_double(value, where);
                else if (key == "x0") cfg.ensemble.x0 = as_double(value, where);
                else if (key == "px0") cfg.ensemble.px0 = as_double(value, where);
                else if (key == "py0") cfg.ensemble.py0 = as_double(value, where);
                else if (key == "sx0") cfg.ensemble.sx0 = as_double(value, where);
                else if (key == "sy0") cfg.ensemble.sy0 = as_double(value, where);
                else if (key == "u") cfg.ensemble.u = as_double(value, where);
                else if (key == "retain_trajectories") cfg.ensemble.retain_trajectories = as_bool(value, where);
                else if (key == "threads") cfg.ensemble.threads = static_cast<int>(as_int(value, where));
                else throw config_error("unknown key '" + where + "'");
            } else if (section == "histogram") {
                if (key == "bin_width") cfg.histogram.bin_width = as_double(value, where);
                else if (key == "y_range") {
                    const auto r = as_array(value, where, 2);
                    cfg.histogram.y_min = r[0];
                    cfg.histogram.y_max = r[1];
                }
                else if (key == "smoothing") cfg.histogram.smoothing = as_double(value, where);
                else throw config_error("unknown key '" + where + "'");
            } else if (section == "output") {
                if (key == "dir") cfg.output.dir = as_string(value, where);
                else if (key == "svg") cfg.output.svg = as_bool(value, where);
                else if (key == "envelope") cfg.output.envelope = as_bool(value, where);
                else if (key == "snapshot_times") cfg.output.snapshot_times = as_array(value, where, 0);
                else throw config_error("unknown key '" + where + "'");
            } else {
                throw config_error("unknown section '[" + section + "]'");
            }
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file '" + path + "'");
    const TomlTable table = parse_toml(is);
    return config_from_table(table);
}

void validate_config(const RunConfig& cfg) {
    validate_params(cfg.physics);
    validate_integrator(cfg.integrator);
    validate_ensemble(cfg.ensemble, cfg.physics);
    if (!(cfg.histogram.bin_width > 0)) throw domain_error("bin_width", "must be positive");
    if (!(cfg.histogram.y_min < cfg.histogram.y_max))
        throw domain_error("histogram.y_range", "must be non-degenerate");
    if (cfg.histogram.smoothing < 0) throw domain_error("smoothing", "must be non-negative");
}

}  // namespace qslit
