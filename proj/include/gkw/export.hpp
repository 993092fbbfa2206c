#pragma once

#include "gkw/spectral.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace gkw {

inline constexpr const char* kCsvSchema = "gkw-csv/1";
inline constexpr const char* kJsonSchema = "gkw-json/1";

// Everything that determines a run's output. Written verbatim into every
// artifact so that a file can be regenerated from its own header.
struct RunConfig {
    std::string command;
    long precision_bits = 128;
    long v_max = 32;
    std::string mass_target = "1e-20";  // allowed layer-1 mass change
    std::optional<long> j_cap;
    long dim = 40;
    long count = 6;
    long ell = 1;
    long ell_max = 5;
    long n_max = 20;
    long power = 1;
    std::string n_range;
    std::string format = "csv";
    std::string out;
    long jobs = 1;

    // Ordered key/value view used for serialization.
    std::vector<std::pair<std::string, std::string>> entries() const;
    SpectralOptions spectral_options() const;
};

// Applies `key=value` lines (blank lines and '#' comments ignored). Unknown
// keys raise ConfigError.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value);

void write_csv_header(std::ostream& out, const RunConfig& config);

nlohmann::ordered_json to_json(const EigenvalueResult& r);
nlohmann::ordered_json config_json(const RunConfig& config);
// {"schema": ..., "config": {...}, "records": [...]}
nlohmann::ordered_json eigen_document(const RunConfig& config, const std::vector<EigenvalueResult>& results);

// CSV columns n,lambda,lambda_extrapolated,extrapolation_error,tail_conservative,
// tail_heuristic,v_max,j_lo,j_hi,precision_bits.
void write_eigen_csv(std::ostream& out, const std::vector<EigenvalueResult>& results);

}  // namespace gkw
