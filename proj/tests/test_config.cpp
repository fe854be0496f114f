#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "prandtl/config.hpp"
#include "prandtl/report_io.hpp"

using namespace prandtl;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("prandtl_test_" + tag);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("minimal config fills the documented defaults") {
    const auto cfg = parse_config(
        R"({"command":"solve","coefficient":{"kind":"elliptic","p0":2.0},"rhs":{"kind":"one"}})");
    CHECK(cfg.command == Command::solve);
    CHECK(cfg.coefficient.kind == "elliptic");
    CHECK(cfg.coefficient.p0 == 2.0);
    CHECK(cfg.grid.n == 4096);
    CHECK(cfg.grid.half_width == 12.0);
    CHECK(cfg.solver.tol == 1e-10);
    CHECK(cfg.solver.max_iter == 5000);
    CHECK(cfg.rhs.kind == "one");
}

TEST_CASE("grid validation names the offending field") {
    CHECK_THROWS_WITH(parse_config(R"({"grid":{"n":1000}})"),
                      Catch::Matchers::ContainsSubstring("n must be a power of two"));
    CHECK_THROWS_WITH(parse_config(R"({"grid":{"n":128}})"),
                      Catch::Matchers::ContainsSubstring("[256, 1048576]"));
    CHECK_THROWS_WITH(parse_config(R"({"grid":{"L":2.0}})"),
                      Catch::Matchers::ContainsSubstring("grid.L"));
    CHECK_THROWS_WITH(parse_config(R"({"grid":{"L":50.0}})"),
                      Catch::Matchers::ContainsSubstring("[4, 40]"));
    CHECK_THROWS_WITH(parse_config(R"({"solver":{"tol":1e-3}})"),
                      Catch::Matchers::ContainsSubstring("solver.tol"));
    CHECK_THROWS_WITH(parse_config(R"({"solver":{"tol":1e-15}})"),
                      Catch::Matchers::ContainsSubstring("[1e-14, 1e-4]"));
}

TEST_CASE("triangular coefficient auto-sets its bound") {
    const auto cfg = parse_config(R"({"coefficient":{"kind":"triangular","p0":1.0}})");
    CHECK(cfg.resolved_bound() == 2.0);
    CHECK(cfg.coefficient_spec().bound() == 2.0);

    const auto cfg2 = parse_config(R"({"coefficient":{"kind":"elliptic","p0":4.0}})");
    CHECK(cfg2.resolved_bound() == 0.25);

    // explicit M may only loosen the preset bound
    const auto cfg3 = parse_config(R"({"coefficient":{"kind":"elliptic","p0":4.0,"M":0.5}})");
    CHECK(cfg3.coefficient_spec().bound() == 0.5);
    CHECK_THROWS_AS(
        parse_config(R"({"coefficient":{"kind":"elliptic","p0":4.0,"M":0.1}})").coefficient_spec(),
        ConfigError);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_WITH(parse_config(R"({"commund":"solve"})"),
                      Catch::Matchers::ContainsSubstring("commund"));
    CHECK_THROWS_WITH(parse_config(R"({"grid":{"n":512,"step":0.1}})"),
                      Catch::Matchers::ContainsSubstring("grid.step"));
    CHECK_THROWS_WITH(parse_config(R"({"solver":{"tolerance":1e-8}})"),
                      Catch::Matchers::ContainsSubstring("solver.tolerance"));
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_config("{\n  \"command\": \"solve\",\n  \"grid\": {\n}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("line"));
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("column"));
    }
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1,2,3]"), ConfigError);
}

TEST_CASE("command and kind enumerations are validated") {
    CHECK_THROWS_AS(parse_config(R"({"command":"explode"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"coefficient":{"kind":"parabolic"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"rhs":{"kind":"two"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"function":"heaviside"})"), ConfigError);
    CHECK(parse_config(R"({"command":"verify"})").command == Command::verify);
    CHECK(parse_config(R"({"command":"transform","function":"gauss"})").function == "gauss");
}

TEST_CASE("tabulated sections require samples") {
    CHECK_THROWS_AS(parse_config(R"({"coefficient":{"kind":"tabulated"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"rhs":{"kind":"tabulated","samples":[[0.0,1.0]]}})"),
                    ConfigError);
    const auto cfg = parse_config(
        R"({"coefficient":{"kind":"tabulated","M":1.5,"samples":[[-0.5,1.0],[0.5,1.0]]},
            "rhs":{"kind":"tabulated","samples":[[-0.9,0.0],[0.0,1.0],[0.9,0.0]]}})");
    CHECK(cfg.coefficient_spec().bound() == 1.5);
    CHECK(cfg.rhs_callable()(0.0) == 1.0);
    CHECK_THAT(cfg.rhs_callable()(0.95), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("solve run writes the documented artifacts") {
    TempDir tmp("solve");
    auto cfg = parse_config(
        R"({"command":"solve","coefficient":{"kind":"elliptic","p0":2.0},"rhs":{"kind":"one"},
            "grid":{"n":512,"L":12.0}})");
    cfg.output = (tmp.path / "run1").string();
    std::ostringstream log;
    CHECK(run(cfg, log) == exit_ok);

    for (const char* name : {"solution.csv", "spectrum.csv", "report.txt", "report.json"})
        CHECK(std::filesystem::exists(tmp.path / "run1" / name));

    const std::string solution = slurp(tmp.path / "run1" / "solution.csv");
    CHECK_THAT(solution,
               Catch::Matchers::StartsWith("j,omega,x,u_real,u_imag,u_prime_weighted\n"));
    const std::string spectrum = slurp(tmp.path / "run1" / "spectrum.csv");
    CHECK_THAT(spectrum, Catch::Matchers::StartsWith("k,xi,U_real,U_imag,multiplier\n"));

    // identical config produces bit-identical artifacts
    cfg.output = (tmp.path / "run2").string();
    CHECK(run(cfg, log) == exit_ok);
    CHECK(slurp(tmp.path / "run1" / "solution.csv") == slurp(tmp.path / "run2" / "solution.csv"));
    CHECK(slurp(tmp.path / "run1" / "spectrum.csv") == slurp(tmp.path / "run2" / "spectrum.csv"));
    CHECK(slurp(tmp.path / "run1" / "report.json") == slurp(tmp.path / "run2" / "report.json"));

    // report.json carries the documented keys
    const std::string rep = slurp(tmp.path / "run1" / "report.json");
    for (const char* key : {"norms", "bounds", "iterations", "residual", "spectral_tail", "grid"})
        CHECK_THAT(rep, Catch::Matchers::ContainsSubstring(std::string{"\""} + key + "\""));
}

TEST_CASE("solution artifact matches the closed form") {
    TempDir tmp("closed");
    auto cfg = parse_config(
        R"({"command":"solve","coefficient":{"kind":"elliptic","p0":2.0},"rhs":{"kind":"one"},
            "grid":{"n":512,"L":16.0}})");
    cfg.output = (tmp.path / "out").string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == exit_ok);

    std::ifstream csv(tmp.path / "out" / "solution.csv");
    std::string line;
    std::getline(csv, line);  // header
    double max_dev = 0.0;
    while (std::getline(csv, line)) {
        std::stringstream ls(line);
        std::string field;
        std::getline(ls, field, ',');  // j
        std::getline(ls, field, ',');
        const double omega = std::stod(field);
        std::getline(ls, field, ',');  // x
        std::getline(ls, field, ',');
        const double u_real = std::stod(field);
        max_dev = std::max(max_dev, std::abs(u_real - 1.0 / std::cosh(omega)));
    }
    CHECK(max_dev < 1e-6);

    const std::string rep = slurp(tmp.path / "out" / "report.txt");
    CHECK_THAT(rep, Catch::Matchers::ContainsSubstring("pass"));
    CHECK_THAT(rep, !Catch::Matchers::ContainsSubstring("FAIL"));
}

TEST_CASE("convergence failure surfaces as its own exit code") {
    TempDir tmp("conv");
    auto cfg = parse_config(
        R"({"command":"solve","coefficient":{"kind":"constant","p0":1.0},"rhs":{"kind":"one"},
            "grid":{"n":256,"L":12.0},"solver":{"max_iter":2}})");
    cfg.output = (tmp.path / "out").string();
    std::ostringstream log;
    CHECK(run(cfg, log) == exit_convergence_failure);
}

TEST_CASE("unwritable output surfaces as an io error") {
    auto cfg = parse_config(
        R"({"command":"solve","coefficient":{"kind":"constant","p0":1.0},"rhs":{"kind":"one"},
            "grid":{"n":256,"L":12.0}})");
    cfg.output = "/proc/definitely/not/writable";
    std::ostringstream log;
    CHECK(run(cfg, log) == exit_io_error);
}

TEST_CASE("verify command prints a per-check table and exits clean") {
    auto cfg = parse_config(R"({"command":"verify"})");
    std::ostringstream log;
    CHECK(run(cfg, log, /*quick=*/true) == exit_ok);
    CHECK_THAT(log.str(), Catch::Matchers::ContainsSubstring("PASS"));
    CHECK_THAT(log.str(), Catch::Matchers::ContainsSubstring("multiplier-identity"));
    CHECK_THAT(log.str(), !Catch::Matchers::ContainsSubstring("FAIL"));
}

TEST_CASE("transform run reports round-trip diagnostics") {
    TempDir tmp("transform");
    auto cfg = parse_config(R"({"command":"transform","function":"sech","grid":{"n":512}})");
    cfg.output = (tmp.path / "t").string();
    std::ostringstream log;
    CHECK(run(cfg, log) == exit_ok);
    CHECK_THAT(log.str(), Catch::Matchers::ContainsSubstring("roundtrip max err"));
    CHECK(std::filesystem::exists(tmp.path / "t" / "transform.csv"));

    // stdout-only mode
    auto cfg2 = parse_config(R"({"command":"transform","function":"sech2","grid":{"n":512}})");
    cfg2.output.clear();
    std::ostringstream log2;
    CHECK(run(cfg2, log2) == exit_ok);
}
