#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "teur/errors.hpp"
#include "teur/io.hpp"

using namespace teur;
namespace fs = std::filesystem;

namespace {

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("teur-io-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("Ising instance round trip") {
    const auto j = parse_json(R"({"n": 3, "couplings": [[0, 1, -1.0], [1, 2, -1.0]], "fields": [[2, 0.5]]})", "chain");
    const auto inst = ising_from_json(j);
    CHECK(inst.n == 3);
    REQUIRE(inst.couplings.size() == 2);
    CHECK(inst.couplings[1].J == -1.0);
    CHECK(inst.fields[0].h == 0.5);
    CHECK(to_json(inst) == j);

    CHECK(ising_from_json(parse_json(R"({"n": 2})", "bare")).couplings.empty());
}

TEST_CASE("instance diagnostics name the field") {
    CHECK(message_of([] { ising_from_json(parse_json(R"({"n": 2, "coupling": []})", "x")); })
              .find("unknown field 'coupling'") != std::string::npos);
    CHECK(message_of([] { ising_from_json(parse_json(R"({"couplings": []})", "x")); })
              .find("missing field 'n'") != std::string::npos);
    CHECK(message_of([] { ising_from_json(parse_json(R"({"n": 2, "fields": [[0, "a"]]})", "x")); })
              .find("fields[0]") != std::string::npos);
    CHECK_THROWS_AS(ising_from_json(parse_json(R"({"n": 2, "couplings": [[0, 5, 1.0]]})", "x")), InputError);
    CHECK_THROWS_AS(ising_from_json(parse_json(R"({"n": -1})", "x")), InputError);
}

TEST_CASE("syntax errors carry line and column") {
    const auto msg = message_of([] { parse_json("{\n  \"n\": 3,\n  \"fields\": [[0, 1.0]\n}", "broken.json"); });
    CHECK(msg.find("broken.json") != std::string::npos);
    CHECK(msg.find("line 4") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
    CHECK_THROWS_AS(load_json("/nonexistent/instance.json"), InputError);
}

TEST_CASE("schedule formats") {
    const auto lin = schedule_from_json(parse_json(R"({"kind": "linear"})", "s"));
    CHECK(lin.name() == "linear");
    const auto poly = schedule_from_arg("poly:2");
    CHECK(poly.g(0.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS(schedule_from_arg("poly:x"), InputError);
    CHECK_THROWS_AS(schedule_from_arg("poly:2x"), InputError);

    const auto tab = schedule_from_json(parse_json(
        R"({"kind": "tabulated", "knots": [[0, 1, 0], [0.5, 0.4, 0.6], [1, 0, 1]], "h": {"kind": "sine", "amplitude": 0.2}})",
        "s"));
    CHECK(tab.g(0.25) == doctest::Approx(0.3));
    CHECK(tab.h(0.5) == doctest::Approx(0.2));
    const auto back = schedule_from_json(to_json(tab));
    CHECK(back.g(0.75) == doctest::Approx(tab.g(0.75)));
    CHECK(back.h(0.25) == doctest::Approx(tab.h(0.25)));
    CHECK(to_json(poly) == to_json(schedule_from_json(to_json(poly))));

    CHECK_THROWS_AS(schedule_from_json(parse_json(R"({"kind": "cubic"})", "s")), InputError);
    CHECK_THROWS_AS(schedule_from_json(parse_json(R"({"kind": "tabulated", "knots": [[0, 1, 0.2], [1, 0, 1]]})", "s")),
                    InputError);

    const auto dir = scratch("sched");
    std::ofstream(dir / "s.json") << R"({"kind": "poly", "power": 3})";
    CHECK(schedule_from_arg((dir / "s.json").string()).g(0.5) == doctest::Approx(0.125));
}

TEST_CASE("campaign definitions") {
    const auto dir = scratch("campaign");
    std::ofstream(dir / "chain.json") << R"({"n": 2, "couplings": [[0, 1, -1.0]]})";
    const auto j = parse_json(R"({
        "kind": "qac-ising",
        "instance": "chain.json",
        "schedule": "poly:2",
        "T": [1, 4],
        "integrator": {"method": "rk4", "steps": 500, "hbar": 1.0},
        "beta_policies": ["zero", "mean", "g:0.3"],
        "events": {"tolerance": 1e-7},
        "workers": 2
    })", "campaign");
    const auto c = campaign_from_json(j, dir);
    CHECK(c.kind == CampaignKind::QacIsing);
    REQUIRE(c.instance);
    CHECK(c.instance->n == 2);
    CHECK(c.instance_name == "chain");
    CHECK(c.total_times == std::vector<double>{1.0, 4.0});
    CHECK(c.integrator.method == Method::Rk4);
    CHECK(c.integrator.steps == 500);
    CHECK(c.beta_policies.size() == 3);
    CHECK(c.events.tolerance == 1e-7);
    CHECK(c.workers == 2);

    // re-reading the serialized form preserves the config hash
    CHECK(campaign_from_json(to_json(c), dir).config_hash() == c.config_hash());

    CHECK(message_of([&] { campaign_from_json(parse_json(R"({"kind": "gue-ensemble", "seed": [0, 1]})", "c"), dir); })
              .find("unknown field 'seed'") != std::string::npos);
    CHECK(message_of([&] {
              campaign_from_json(parse_json(R"({"kind": "gue-ensemble", "integrator": {"dt": "small"}})", "c"), dir);
          }).find("integrator.dt") != std::string::npos);
    CHECK_THROWS_AS(campaign_from_json(parse_json(R"({"kind": "qac-ising", "instance": "missing.json"})", "c"), dir),
                    InputError);
}

TEST_CASE("trajectory CSV") {
    IntegratorConfig cfg;
    cfg.steps = 10;
    const auto tr = evolve(Generator(HermitianOperator::diagonal({0.0, 1.0})), StateVector::uniform(2), 1.0, cfg,
                           {BetaPolicy::zero(), BetaPolicy::constant(0.5)});
    std::ostringstream os;
    std::vector<double> bound(tr.size(), 0.25);
    write_trajectory_csv(os, tr, {{"bound", bound}});
    const auto ls = lines(os.str());
    REQUIRE(ls.size() == 12);
    CHECK(ls[0] == "t,re_overlap,im_overlap,survival,d_beta0,rhs_beta0,d_beta_const(0.5),rhs_beta_const(0.5),bound");
    std::vector<double> first;
    std::istringstream row(ls[1]);
    for (std::string cell; std::getline(row, cell, ',');) first.push_back(std::stod(cell));
    const std::vector<double> want{0, 1, 0, 1, 0, 0, 0, 0, 0.25};
    REQUIRE(first.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(first[i] == doctest::Approx(want[i]).epsilon(1e-14));
    CHECK_THROWS_AS(write_trajectory_csv(os, tr, {{"short", {1.0}}}), InputError);

    const auto meta = trajectory_metadata(tr, 7);
    CHECK(meta["seed"] == 7);
    CHECK(meta["method"] == "midpoint-exponential");
    CHECK(meta["dt"].get<double>() == doctest::Approx(0.1));
    CHECK(meta["hbar"] == 1.0);
}

TEST_CASE("campaign output layout") {
    const auto r = run_analytic_suite();
    const auto dir = scratch("out");
    write_campaign(r, dir);
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "margins.csv"));
    std::size_t reports = 0;
    for (const auto& e : fs::directory_iterator(dir / "reports")) reports += e.path().extension() == ".json";
    CHECK(reports == r.runs.size());

    const auto summary = load_json(dir / "summary.json");
    CHECK(summary["summary"]["runs"] == 5);
    CHECK(summary["summary"]["violations"] == 0);

    std::ifstream csv(dir / "summary.csv");
    std::stringstream ss;
    ss << csv.rdbuf();
    CHECK(lines(ss.str()).size() == 6);

    const auto report = to_json(r.runs.front());
    CHECK(report.contains("provenance"));
    CHECK(report["provenance"].contains("config_hash"));
    for (const char* key : {"context", "moments", "characteristic_times", "events", "margins", "numerical_slack"}) {
        CHECK(report["report"].contains(key));
    }

    // same inputs, same bytes
    const auto dir2 = scratch("out2");
    write_campaign(run_analytic_suite(), dir2);
    for (const char* f : {"summary.csv", "summary.json", "margins.csv"}) {
        std::ifstream a(dir / f);
        std::ifstream b(dir2 / f);
        std::stringstream sa;
        std::stringstream sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
    }
    CHECK_THROWS_AS(write_campaign(r, "/proc/teur-cannot-write"), ConfigError);
}
