#include "gkw/errors.hpp"
#include "gkw/export.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

using namespace gkw;

namespace {

EigenvalueResult small_result(long n) {
    SpectralOptions o;
    o.v_max = 8;
    return eigenvalue(n, o);
}

}  // namespace

TEST_CASE("config text and flag values") {
    RunConfig c;
    apply_config_text(c, "# run\n\nprec = 256\nvmax=64\nmass_target=1e-25\njcap=900\nn=3..6\nformat=json\n");
    CHECK(c.precision_bits == 256);
    CHECK(c.v_max == 64);
    CHECK(c.j_cap == 900);
    CHECK(c.n_range == "3..6");
    const SpectralOptions o = c.spectral_options();
    CHECK(o.precision == Precision(256));
    CHECK(o.window.mass_deficit == 1e-25);
    CHECK(o.window.j_cap == 900);
    apply_config_value(c, "jcap", "auto");
    CHECK(!c.j_cap);
    CHECK_THROWS_AS(apply_config_text(c, "colour=blue"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "prec"), ConfigError);
    CHECK_THROWS_AS(apply_config_value(c, "vmax", "12x"), ConfigError);
    c.mass_target = "tiny";
    CHECK_THROWS_AS(c.spectral_options(), ConfigError);
}

TEST_CASE("every config entry round-trips through the text form") {
    RunConfig a;
    a.command = "eigen";
    a.precision_bits = 192;
    a.j_cap = 300;
    a.dim = 44;
    a.count = 3;
    a.ell = 2;
    a.ell_max = 7;
    a.n_max = 30;
    a.power = 2;
    a.n_range = "2";
    a.format = "json";
    a.out = "x.json";
    a.jobs = 3;
    std::string text;
    for (const auto& [k, v] : a.entries())
        if (k != "command") text += k + "=" + v + "\n";
    RunConfig b;
    b.command = a.command;
    apply_config_text(b, text);
    CHECK(b.entries() == a.entries());
}

TEST_CASE("CSV provenance header") {
    RunConfig c;
    c.command = "oracle";
    std::ostringstream out;
    write_csv_header(out, c);
    const std::string s = out.str();
    CHECK(s.rfind("# schema=gkw-csv/1\n# command=oracle\n", 0) == 0);
    CHECK(s.find("# mass_target=1e-20\n") != std::string::npos);
    CHECK(s.find("# j_cap=auto\n") != std::string::npos);
}

TEST_CASE("eigenvalue JSON keeps full precision as strings") {
    const auto r = small_result(2);
    const auto j = to_json(r);
    CHECK(j["n"] == 2);
    CHECK(j["window"][0] == 1);
    CHECK(j["window"][1] == r.j_hi);
    CHECK(j["layers"].size() == r.layers.size());
    CHECK(j["precision_bits"] == 128);
    const auto text = j["lambda_extrapolated"].get<std::string>();
    CHECK(BigFloat::parse(text, r.precision) == r.lambda_extrapolated);
    CHECK(BigFloat::parse(j["layers"][3].get<std::string>(), r.precision) == r.layers[3]);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys.front() == "n");
    CHECK(std::find(keys.begin(), keys.end(), "tail_heuristic") != keys.end());
}

TEST_CASE("documents are deterministic") {
    RunConfig c;
    c.command = "eigen";
    c.n_range = "1..2";
    const std::vector<EigenvalueResult> a{small_result(1), small_result(2)};
    const std::vector<EigenvalueResult> b{small_result(1), small_result(2)};
    CHECK(eigen_document(c, a).dump(2) == eigen_document(c, b).dump(2));
    const auto doc = eigen_document(c, a);
    CHECK(doc["schema"] == kJsonSchema);
    CHECK(doc["config"]["n"] == "1..2");
    CHECK(doc["records"].size() == 2);
    std::ostringstream x, y;
    write_eigen_csv(x, a);
    write_eigen_csv(y, b);
    CHECK(x.str() == y.str());
    CHECK(x.str().rfind("n,lambda,lambda_extrapolated,", 0) == 0);
}
