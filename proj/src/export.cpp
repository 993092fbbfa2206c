#include "gkw/export.hpp"
#include "gkw/errors.hpp"

#include <sstream>

namespace gkw {

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    return {
        {"command", command},
        {"precision_bits", std::to_string(precision_bits)},
        {"v_max", std::to_string(v_max)},
        {"mass_target", mass_target},
        {"j_cap", j_cap ? std::to_string(*j_cap) : "auto"},
        {"dim", std::to_string(dim)},
        {"count", std::to_string(count)},
        {"ell", std::to_string(ell)},
        {"ell_max", std::to_string(ell_max)},
        {"n_max", std::to_string(n_max)},
        {"power", std::to_string(power)},
        {"n", n_range},
        {"format", format},
        {"out", out},
        {"jobs", std::to_string(jobs)},
    };
}

SpectralOptions RunConfig::spectral_options() const {
    SpectralOptions o;
    o.v_max = v_max;
    o.precision = Precision(precision_bits);
    try {
        o.window.mass_deficit = std::stod(mass_target);
    } catch (const std::exception&) {
        throw ConfigError("mass_target is not a number: " + mass_target);
    }
    o.window.j_cap = j_cap;
    return o;
}

namespace {

long parse_long(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw ConfigError("config: " + key + " expects an integer, got '" + value + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_value(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "precision_bits" || key == "prec") c.precision_bits = parse_long(key, value);
    else if (key == "v_max" || key == "vmax") c.v_max = parse_long(key, value);
    else if (key == "mass_target") c.mass_target = value;
    else if (key == "j_cap" || key == "jcap") c.j_cap = value == "auto" ? std::nullopt : std::optional<long>(parse_long(key, value));
    else if (key == "dim") c.dim = parse_long(key, value);
    else if (key == "count") c.count = parse_long(key, value);
    else if (key == "ell") c.ell = parse_long(key, value);
    else if (key == "ell_max" || key == "lmax") c.ell_max = parse_long(key, value);
    else if (key == "n_max" || key == "nmax") c.n_max = parse_long(key, value);
    else if (key == "power") c.power = parse_long(key, value);
    else if (key == "n") c.n_range = value;
    else if (key == "format") c.format = value;
    else if (key == "out") c.out = value;
    else if (key == "jobs") c.jobs = parse_long(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
}

void apply_config_text(RunConfig& config, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void write_csv_header(std::ostream& out, const RunConfig& config) {
    out << "# schema=" << kCsvSchema << '\n';
    for (const auto& [k, v] : config.entries()) out << "# " << k << '=' << v << '\n';
}

nlohmann::ordered_json config_json(const RunConfig& config) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config.entries()) j[k] = v;
    return j;
}

nlohmann::ordered_json to_json(const EigenvalueResult& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["lambda"] = r.lambda.to_string();
    j["lambda_extrapolated"] = r.lambda_extrapolated.to_string();
    j["extrapolation_error"] = r.extrapolation_error.to_string(6);
    auto layers = nlohmann::ordered_json::array();
    for (const auto& w : r.layers) layers.push_back(w.to_string());
    j["layers"] = std::move(layers);
    j["window"] = {r.j_lo, r.j_hi};
    j["v_max"] = r.v_max;
    j["precision_bits"] = r.precision.bits;
    j["tail_conservative"] = r.tail_conservative.to_string(6);
    j["tail_heuristic"] = r.tail_heuristic.to_string(6);
    j["fitted_c"] = r.fitted_c.to_string(6);
    return j;
}

nlohmann::ordered_json eigen_document(const RunConfig& config, const std::vector<EigenvalueResult>& results) {
    nlohmann::ordered_json doc;
    doc["schema"] = kJsonSchema;
    doc["config"] = config_json(config);
    auto records = nlohmann::ordered_json::array();
    for (const auto& r : results) records.push_back(to_json(r));
    doc["records"] = std::move(records);
    return doc;
}

void write_eigen_csv(std::ostream& out, const std::vector<EigenvalueResult>& results) {
    out << "n,lambda,lambda_extrapolated,extrapolation_error,tail_conservative,tail_heuristic,v_max,j_lo,j_hi,precision_bits\n";
    for (const auto& r : results) {
        out << r.n << ',' << r.lambda.to_string() << ',' << r.lambda_extrapolated.to_string() << ','
            << r.extrapolation_error.to_string(6) << ',' << r.tail_conservative.to_string(6) << ','
            << r.tail_heuristic.to_string(6) << ',' << r.v_max << ',' << r.j_lo << ',' << r.j_hi << ','
            << r.precision.bits << '\n';
    }
}

}  // namespace gkw
