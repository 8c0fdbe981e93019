#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ricciwave/harness.hpp"

using namespace ricciwave;

namespace {

std::string write_temp(const std::string& text) {
    static int counter = 0;
    const std::string path =
        "/tmp/ricciwave_test_cfg_" + std::to_string(counter++) + ".ini";
    std::ofstream out(path);
    out << text;
    return path;
}

ResultTable small_table() {
    ResultTable t;
    t.columns = {"x", "y"};
    t.rows = {{2.0, 0.5}, {4.0, 0.25}, {8.0, 0.125}};
    t.meta = {{"config_hash", "00000000deadbeef"}};
    return t;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("registry lists the seven experiments") {
    const auto reg = experiment_registry();
    REQUIRE(reg.size() == 7);
    const std::vector<std::string> expected{
        "euclid-residual", "euclid-wave-sweep", "sphere-wave-sweep", "rays-oracle",
        "wf-classify",     "f-monotonicity",    "forward-heat"};
    for (const std::string& name : expected) {
        bool found = false;
        for (const auto& info : reg) found = found || name == info.name;
        CHECK_MESSAGE(found, "missing experiment ", name);
    }
}

TEST_CASE("config file sections, overrides, and hashing") {
    const std::string path = write_temp(
        "# global defaults\n"
        "seed = 7\n"
        "[rays-oracle]\n"
        "n_rays = 13\n"
        "step = 2e-3\n"
        "; other sections do not leak\n"
        "[euclid-wave-sweep]\n"
        "n_rays = 999\n");
    const ExperimentConfig cfg = load_config(path, "rays-oracle", {"step=5e-3"});
    CHECK(cfg.experiment == "rays-oracle");
    CHECK(cfg.get_int("seed", 0) == 7);          // global key applies
    CHECK(cfg.get_int("n_rays", 0) == 13);       // section key applies
    CHECK(cfg.get_double("step", 0.0) == 5e-3);  // --set override wins
    CHECK(cfg.get_str("absent", "dflt") == "dflt");
    CHECK(cfg.has("n_rays"));
    CHECK(!cfg.has("absent"));

    // hash is stable across loads and sensitive to values
    const ExperimentConfig again = load_config(path, "rays-oracle", {"step=5e-3"});
    CHECK(cfg.hash == again.hash);
    const ExperimentConfig other = load_config(path, "rays-oracle", {"step=6e-3"});
    CHECK(cfg.hash != other.hash);

    CHECK_THROWS_AS((void)load_config(path, "rays-oracle", {"no-equals-sign"}),
                    ConfigError);
    CHECK_THROWS_AS((void)load_config("/tmp/ricciwave_no_such_file.ini", "rays-oracle", {}),
                    ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("typed accessors validate their input") {
    const ExperimentConfig cfg = load_config("", "euclid-residual", {"ns=8,16,32", "bad=zzz"});
    CHECK(cfg.get_ints("ns", {}) == std::vector<int>{8, 16, 32});
    CHECK_THROWS_AS((void)cfg.get_double("bad", 0.0), ConfigError);
    CHECK_THROWS_AS((void)cfg.get_int("bad", 0), ConfigError);
    CHECK_THROWS_AS((void)cfg.get_ints("bad", {}), ConfigError);
}

TEST_CASE("fit_rate on exact power laws") {
    const RateFit f = fit_rate(small_table(), "x", "y");
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    ResultTable flat = small_table();
    for (auto& row : flat.rows) row[1] = 3.0;
    CHECK(fit_rate(flat, "x", "y").slope == doctest::Approx(0.0).epsilon(1e-12));

    ResultTable bad = small_table();
    bad.rows[1][1] = -1.0;
    CHECK_THROWS_AS((void)fit_rate(bad, "x", "y"), DomainError);
    CHECK_THROWS_AS((void)fit_rate(small_table(), "x", "nope"), DomainError);
}

TEST_CASE("CSV emission: header, LF endings, 17-digit round trip") {
    ResultTable t = small_table();
    t.rows[0][1] = 0.1;  // not exactly representable: exercises the round trip
    std::ostringstream os;
    emit(t, "csv", os);
    const std::string text = os.str();
    CHECK(text.find("x,y\n") == 0);
    CHECK(text.find('\r') == std::string::npos);
    // parse back the first data value
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);  // header
    std::getline(is, line);
    const std::size_t comma = line.find(',');
    CHECK(std::strtod(line.c_str() + comma + 1, nullptr) == 0.1);

    ResultTable empty;
    empty.columns = {"a", "b"};
    std::ostringstream es;
    emit(empty, "csv", es);
    CHECK(es.str() == "a,b\n");

    CHECK_THROWS_AS(emit(t, "xml", os), ConfigError);
}

TEST_CASE("JSON emission carries columns, rows, and the config hash") {
    std::ostringstream os;
    emit(small_table(), "json", os);
    const nlohmann::json j = nlohmann::json::parse(os.str());
    CHECK(j["columns"] == nlohmann::json({"x", "y"}));
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][2][1] == 0.125);
    CHECK(j["meta"]["config_hash"] == "00000000deadbeef");
}

TEST_CASE("run_experiment is deterministic and stamps metadata") {
    const ExperimentConfig cfg =
        load_config("", "rays-oracle", {"seed=1", "n_rays=5", "s_max=2"});
    const ResultTable a = run_experiment(cfg);
    const ResultTable b = run_experiment(cfg);
    CHECK(a.rows == b.rows);  // byte-identical modulo wall time
    CHECK(a.meta.at("experiment") == "rays-oracle");
    CHECK(a.meta.at("config_hash").size() == 16);
    CHECK(a.meta.count("wall_time_s") == 1);

    const ExperimentConfig bad = load_config("", "no-such-experiment", {});
    CHECK_THROWS_AS((void)run_experiment(bad), ConfigError);
}

TEST_CASE("euclid-residual rows halve exactly as N doubles") {
    const ExperimentConfig cfg = load_config("", "euclid-residual", {"ns=8,16,32"});
    const ResultTable t = run_experiment(cfg);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0][1] / t.rows[1][1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(t.rows[1][1] / t.rows[2][1] == doctest::Approx(2.0).epsilon(1e-9));
    const RateFit f = fit_rate(t, "N", "residual_max");
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("forward-heat experiment stays on the widening-kernel oracle") {
    const ExperimentConfig cfg = load_config("", "forward-heat", {"dx=0.1", "dt=2e-3"});
    const ResultTable t = run_experiment(cfg);
    REQUIRE(!t.rows.empty());
    for (const auto& row : t.rows) CHECK(row[1] < 1e-3);
}

}  // TEST_SUITE
