#include "gkw/analysis.hpp"
#include "gkw/errors.hpp"
#include "gkw/export.hpp"
#include "gkw/kernel.hpp"
#include "gkw/oracle.hpp"
#include "gkw/spectral.hpp"
#include "gkw/traces.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace {

using namespace gkw;

constexpr int kExitValidation = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUsage = 4;

struct ValidationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs fn(i) for i < count on up to `jobs` threads. Results keep index order;
// the lowest-index exception is rethrown.
template <class T, class Fn>
std::vector<T> parallel_map(long count, long jobs, Fn fn) {
    std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<long> next{0};
    auto worker = [&] {
        for (long i = next++; i < count; i = next++) {
            try {
                slots[static_cast<std::size_t>(i)].emplace(fn(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    const long threads = std::max(1L, std::min(jobs, count));
    std::vector<std::thread> pool;
    for (long t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<T> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

std::pair<long, long> parse_range(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || v < 1) throw ConfigError("--n expects N or A..B with positive integers, got '" + text + "'");
        return v;
    };
    if (text.empty()) throw ConfigError("--n is required");
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const long n = number(text);
        return {n, n};
    }
    const long a = number(text.substr(0, dots));
    const long b = number(text.substr(dots + 2));
    if (b < a) throw ConfigError("--n range is empty: " + text);
    return {a, b};
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// CSV body (header row first) to an array of objects with string values.
nlohmann::ordered_json csv_records(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    const auto header = split_csv_line(line);
    auto records = nlohmann::ordered_json::array();
    while (std::getline(in, line)) {
        const auto cells = split_csv_line(line);
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < header.size(); ++i) rec[header[i]] = i < cells.size() ? cells[i] : "";
        records.push_back(std::move(rec));
    }
    return records;
}

std::string render_table(const RunConfig& cfg, const std::string& body) {
    std::ostringstream out;
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        doc["schema"] = kJsonSchema;
        doc["config"] = config_json(cfg);
        doc["records"] = csv_records(body);
        out << doc.dump(2) << '\n';
    } else {
        write_csv_header(out, cfg);
        out << body;
    }
    return out.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open output file: " + cfg.out);
    f << text;
    if (!f) throw std::ios_base::failure("write failed: " + cfg.out);
}

std::string cmd_eigen(const RunConfig& cfg) {
    const auto [a, b] = parse_range(cfg.n_range);
    const SpectralOptions opts = cfg.spectral_options();
    const auto results = parallel_map<EigenvalueResult>(b - a + 1, cfg.jobs, [&](long i) { return eigenvalue(a + i, opts); });
    if (cfg.format == "json") return eigen_document(cfg, results).dump(2) + "\n";
    std::ostringstream body;
    write_eigen_csv(body, results);
    return render_table(cfg, body.str());
}

std::string verdict_row(const IdentityReport& r, double threshold, bool& ok) {
    const bool pass = r.residual.to_double() < threshold;
    ok = ok && pass;
    std::ostringstream row;
    row << r.ell << ',' << r.n_max << ',' << r.lhs.to_string() << ',' << r.target.to_string() << ','
        << r.residual.to_string(6) << ',' << threshold << ',' << (pass ? "pass" : "fail") << '\n';
    return row.str();
}

std::string validate_kernel(const RunConfig& cfg, bool& ok) {
    const long lmax = cfg.ell_max;
    if (lmax < 1) throw ConfigError("--lmax must be positive");
    std::ostringstream body;
    body << "check,ell,value,threshold,verdict\n";
    for (long ell = 1; ell <= lmax; ++ell) {
        bool sym = true;
        for (long j = 1; j <= lmax && sym; ++j)
            sym = k_coeff(j, ell) * Rational(ell) == k_coeff(ell, j) * Rational(j);
        ok = ok && sym;
        body << "symmetry," << ell << ',' << (sym ? "exact" : "mismatch") << ",0," << (sym ? "pass" : "fail") << '\n';
    }
    const Precision p(cfg.precision_bits);
    const auto opts = cfg.spectral_options();
    const BigFloat allowed(opts.window.mass_deficit, p);
    for (long ell = 1; ell <= lmax; ++ell) {
        const KernelTable row = k_window(ell, BigFloat(1L, p) - allowed, cfg.j_cap);
        const BigFloat deficit = BigFloat(1L, p) - quad_to_float(row.exact_mass(), p);
        const bool pass = deficit < allowed;
        ok = ok && pass;
        body << "row_mass_deficit," << ell << ',' << deficit.to_string(6) << ',' << cfg.mass_target << ','
             << (pass ? "pass" : "fail") << '\n';
    }
    return body.str();
}

std::string validate_trace(const RunConfig& cfg, bool& ok) {
    const Precision p(cfg.precision_bits);
    const int power = static_cast<int>(cfg.power);
    if (power != 1 && power != 2) throw ConfigError("--power must be 1 or 2");
    constexpr double kAgreement = 1e-10;
    std::vector<TraceReport> reports;
    try {
        reports = trace_power(power, power == 1 ? 400 : 200, p, kAgreement);
    } catch (const ConsistencyError& e) {
        ok = false;
        return std::string("check,value\nerror,") + e.what() + "\n";
    }
    std::ostringstream body;
    body << "method,value,terms,tail_bound\n";
    for (const auto& r : reports) body << r.method << ',' << r.value.to_string() << ',' << r.terms << ',' << r.tail_bound.to_string(6) << '\n';
    return body.str();
}

std::string cmd_validate(const RunConfig& cfg, const std::string& identity) {
    bool ok = true;
    std::string body;
    const auto opts = cfg.spectral_options();
    constexpr double kIdentityThreshold = 1e-6;
    auto identity_table = [&](const IdentityReport& r) {
        return "ell,n_max,lhs,target,residual,threshold,verdict\n" + verdict_row(r, kIdentityThreshold, ok);
    };
    if (identity == "column") body = identity_table(column_identity(cfg.ell, cfg.n_max, opts));
    else if (identity == "pair") body = identity_table(pair_identity(cfg.ell, cfg.n_max, opts));
    else if (identity == "omega") body = identity_table(omega_trace_identity(static_cast<int>(cfg.power), cfg.ell, cfg.n_max, opts));
    else if (identity == "kernel") body = validate_kernel(cfg, ok);
    else if (identity == "trace") body = validate_trace(cfg, ok);
    else throw ConfigError("unknown identity '" + identity + "' (column|pair|omega|kernel|trace)");
    emit(cfg, render_table(cfg, body));
    if (!ok) throw ValidationFailed("validate " + identity + ": failed");
    return {};
}

std::string cmd_oracle(const RunConfig& cfg) {
    const auto values = oracle_eigenvalues(cfg.dim, cfg.count, Precision(cfg.precision_bits));
    std::ostringstream body;
    write_spectrum_csv(body, cfg.dim, values);
    return render_table(cfg, body.str());
}

std::string cmd_asympt(const RunConfig& cfg) {
    if (cfg.n_max < 1) throw ConfigError("--nmax must be positive");
    const auto opts = cfg.spectral_options();
    const auto results = parallel_map<EigenvalueResult>(cfg.n_max, cfg.jobs, [&](long i) { return eigenvalue(i + 1, opts); });
    std::vector<long> ns;
    std::vector<BigFloat> lambdas, errors;
    for (const auto& r : results) {
        ns.push_back(r.n);
        lambdas.push_back(r.lambda_extrapolated);
        errors.push_back(r.extrapolation_error);
    }
    std::ostringstream body;
    write_asymptotics_csv(body, asymptotics_table(ns, lambdas, errors));
    return render_table(cfg, body.str());
}

std::string cmd_export_matrix(const RunConfig& cfg) {
    std::ostringstream body;
    write_decomposition_csv(body, decomposition_matrix(cfg.n_max, cfg.ell_max, cfg.spectral_options()));
    return render_table(cfg, body.str());
}

std::string cmd_kernel_row(const RunConfig& cfg) {
    const Precision p(cfg.precision_bits);
    const BigFloat allowed(cfg.spectral_options().window.mass_deficit, p);
    const KernelTable row = k_window(cfg.ell, BigFloat(1L, p) - allowed, cfg.j_cap);
    std::ostringstream body;
    write_kernel_row_csv(body, row, p);
    return render_table(cfg, body.str());
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file: " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectrum of the Gauss transfer operator: eigenvalues, identities, oracle"};
    app.require_subcommand(1);
    app.fallthrough();

    // Each flag is kept as text and applied over the config file afterwards.
    std::vector<std::pair<std::string, CLI::Option*>> flags;
    std::map<std::string, std::string> values;
    auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
        flags.emplace_back(key, app.add_option(name, values[key], help));
    };
    flag("--n", "n", "index N or range A..B");
    flag("--prec", "precision_bits", "working precision in bits (default 128)");
    flag("--vmax", "v_max", "number of layers (default 32)");
    flag("--mass-target", "mass_target", "allowed kernel row-mass deficit (default 1e-20)");
    flag("--jcap", "j_cap", "hard cap on the window size");
    flag("--dim", "dim", "oracle truncation size (default 40)");
    flag("--count", "count", "number of oracle eigenvalues (default 6)");
    flag("--ell", "ell", "column / kernel row index (default 1)");
    flag("--lmax", "ell_max", "largest column (default 5)");
    flag("--nmax", "n_max", "largest eigenvalue index (default 20)");
    flag("--power", "power", "trace power (default 1)");
    flag("--format", "format", "csv or json (default csv)");
    flag("--out", "out", "output path (default stdout)");
    flag("--jobs", "jobs", "worker threads for range commands (default 1)");
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file; flags override it");

    auto* eigen = app.add_subcommand("eigen", "eigenvalues from the layer recurrence");
    auto* validate = app.add_subcommand("validate", "check an identity and report residuals");
    std::string identity;
    validate->add_option("identity", identity, "column|pair|omega|kernel|trace")->required();
    auto* oracle = app.add_subcommand("oracle", "eigenvalues of the truncated Taylor matrix");
    auto* asympt = app.add_subcommand("asympt", "c(n) table for n = 1..nmax");
    auto* export_matrix = app.add_subcommand("export-matrix", "layer decomposition matrix with marginals");
    auto* kernel_row = app.add_subcommand("kernel-row", "exact kernel row K(., ell)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_text(cfg, read_file(config_path));
        for (const auto& [key, opt] : flags)
            if (opt->count() > 0) apply_config_value(cfg, key, values[key]);
        if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
        if (cfg.jobs < 1) throw ConfigError("--jobs must be positive");

        if (*eigen) {
            cfg.command = "eigen";
            emit(cfg, cmd_eigen(cfg));
        } else if (*validate) {
            cfg.command = "validate " + identity;
            cmd_validate(cfg, identity);
        } else if (*oracle) {
            cfg.command = "oracle";
            emit(cfg, cmd_oracle(cfg));
        } else if (*asympt) {
            cfg.command = "asympt";
            emit(cfg, cmd_asympt(cfg));
        } else if (*export_matrix) {
            cfg.command = "export-matrix";
            emit(cfg, cmd_export_matrix(cfg));
        } else if (*kernel_row) {
            cfg.command = "kernel-row";
            emit(cfg, cmd_kernel_row(cfg));
        }
    } catch (const ValidationFailed& e) {
        std::cerr << e.what() << '\n';
        return kExitValidation;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ConfigError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PrecisionError& e) {
        std::cerr << "precision: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const TruncationError& e) {
        std::cerr << "truncation: " << e.what() << " (achieved mass " << e.achieved_mass() << ")\n";
        return kExitPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
