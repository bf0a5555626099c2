#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = teur::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("teur-cli-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("verify --analytic") {
    const auto dir = scratch("analytic");
    const auto r = invoke({"--out", dir.string(), "verify", "--analytic"});
    CHECK(r.code == teur::cli::kExitOk);
    CHECK(fs::exists(dir / "verify-analytic" / "summary.csv"));
    CHECK(fs::exists(dir / "verify-analytic" / "summary.json"));
    CHECK(fs::exists(dir / "verify-analytic" / "run.json"));
    CHECK(r.out.find("0 violations") != std::string::npos);
}

TEST_CASE("qac on a chain instance") {
    const auto dir = scratch("qac");
    std::ofstream(dir / "chain3.json") << R"({"n": 3, "couplings": [[0, 1, -1.0], [1, 2, -1.0]]})";
    const auto r = invoke({"--out", dir.string(), "qac", "--instance", (dir / "chain3.json").string(), "--schedule",
                           "linear", "--T", "1,4,16"});
    CHECK(r.code == teur::cli::kExitOk);
    std::size_t reports = 0;
    for (const auto& e : fs::directory_iterator(dir / "qac" / "reports")) reports += e.path().extension() == ".json";
    CHECK(reports == 3);
}

TEST_CASE("ensemble writes a summary") {
    const auto dir = scratch("ensemble");
    const auto r = invoke({"--out", dir.string(), "--steps", "400", "ensemble", "--dim", "8", "--seeds", "0..6"});
    CHECK(r.code == teur::cli::kExitOk);
    const auto summary = json::parse(slurp(dir / "ensemble" / "summary.json"));
    CHECK(summary["summary"]["runs"] == 6);
    CHECK(summary["summary"]["margin_quantiles"].contains("general"));
    CHECK(fs::exists(dir / "ensemble" / "margins.csv"));

    // summaries are reproducible byte for byte; run.json holds the timestamp
    const auto again = scratch("ensemble2");
    invoke({"--out", again.string(), "--steps", "400", "ensemble", "--dim", "8", "--seeds", "0..6"});
    for (const char* f : {"summary.csv", "summary.json", "margins.csv"}) {
        CHECK(slurp(dir / "ensemble" / f) == slurp(again / "ensemble" / f));
    }
}

TEST_CASE("decay writes trajectory data") {
    const auto dir = scratch("decay");
    const auto r = invoke({"--out", dir.string(), "decay", "--energies", "0,1", "--state", "uniform", "--horizon", "4"});
    CHECK(r.code == teur::cli::kExitOk);
    const auto csv = slurp(dir / "decay" / "trajectory.csv");
    CHECK(csv.rfind("t,re_overlap,im_overlap,survival,d_beta0,rhs_beta0", 0) == 0);
    CHECK(csv.find("survival_bound") != std::string::npos);
    const auto report = json::parse(slurp(dir / "decay" / "report.json"));
    CHECK(report["events"]["orthogonal"]["triggered"] == true);
    CHECK(report["all_satisfied"] == true);
}

TEST_CASE("entangle and report") {
    const auto dir = scratch("entangle");
    CHECK(invoke({"--out", dir.string(), "--steps", "500", "entangle", "--subdim", "2", "--seeds", "0..3"}).code == 0);
    const auto r = invoke({"report", "--input", (dir / "entangle").string()});
    CHECK(r.code == teur::cli::kExitOk);
    CHECK(r.out.find("6 reports, 0 violations") != std::string::npos);
}

TEST_CASE("violations exit with 1") {
    // a report directory containing a recorded violation
    const auto dir = scratch("violation");
    fs::create_directories(dir / "reports");
    json fake{{"provenance", {{"key", "fake"}}},
              {"report",
               {{"events",
                 {{"orthogonal", {{"triggered", false}}}, {"antipodal", {{"triggered", false}}}}}}},
              {"violations", {"general[beta0]: lhs 2 > rhs 1"}}};
    std::ofstream(dir / "reports" / "fake.json") << fake.dump();
    const auto r = invoke({"report", "--input", dir.string()});
    CHECK(r.code == teur::cli::kExitViolation);
    CHECK(r.err.find("VIOLATION") != std::string::npos);
}

TEST_CASE("configuration and input errors exit with 2") {
    const auto dir = scratch("errors");
    std::ofstream(dir / "bad.json") << "{\n  \"n\": 3,\n  \"couplings\": [[0, 1, -1.0]\n}";
    const auto bad = invoke({"--out", dir.string(), "qac", "--instance", (dir / "bad.json").string()});
    CHECK(bad.code == teur::cli::kExitConfig);
    CHECK(bad.err.find("line 4") != std::string::npos);

    std::ofstream(dir / "field.json") << R"({"n": 2, "coupling": []})";
    const auto field = invoke({"--out", dir.string(), "qac", "--instance", (dir / "field.json").string()});
    CHECK(field.code == teur::cli::kExitConfig);
    CHECK(field.err.find("coupling") != std::string::npos);

    CHECK(invoke({"--out", dir.string(), "ensemble", "--seeds", "5..5"}).code == teur::cli::kExitConfig);
    CHECK(invoke({"--out", dir.string(), "--method", "euler", "verify", "--analytic"}).code ==
          teur::cli::kExitConfig);
    CHECK(invoke({"--out", dir.string(), "--hbar", "-1", "verify", "--analytic"}).code == teur::cli::kExitConfig);
    CHECK(invoke({"frobnicate"}).code == teur::cli::kExitConfig);
    CHECK(invoke({}).code == teur::cli::kExitConfig);
    CHECK(invoke({"--out", dir.string(), "qac", "--instance", (dir / "missing.json").string()}).code ==
          teur::cli::kExitConfig);
}

TEST_CASE("environment default output directory") {
    const auto dir = scratch("env");
    setenv(teur::cli::kOutDirEnv, dir.string().c_str(), 1);
    const auto r = invoke({"verify", "--analytic"});
    unsetenv(teur::cli::kOutDirEnv);
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "verify-analytic" / "summary.csv"));
}
