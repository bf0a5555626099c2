#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "teur/errors.hpp"
#include "teur/io.hpp"

namespace teur::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string out_dir;
    double hbar = 1.0;
    double dt = 0.0;
    std::size_t steps = 2000;
    std::string method = "midpoint-exponential";
    std::vector<std::string> betas;
    double tolerance = 1e-6;
    std::size_t workers = 1;
    bool verbose = false;

    bool analytic = false;
    std::string campaign_file;

    std::string instance_file;
    std::string schedule = "linear";
    std::string t_values = "1,4,16";

    std::size_t dim = 8;
    std::string seeds = "0..50";
    double horizon_mult = 4.0;
    bool shift = false;
    std::size_t subdim = 2;

    std::string energies;
    std::string state = "uniform";
    std::uint64_t seed = 0;
    double horizon = 0.0;

    std::string input_dir;
};

SeedRange parse_seeds(const std::string& s) {
    auto num = [&](const std::string& t) -> std::uint64_t {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::logic_error&) {
            throw InputError("--seeds: cannot parse '" + s + "' (expected N or A..B)");
        }
    };
    if (auto pos = s.find(".."); pos != std::string::npos) {
        SeedRange r{num(s.substr(0, pos)), num(s.substr(pos + 2))};
        if (r.size() == 0) throw InputError("--seeds: empty range '" + s + "'");
        return r;
    }
    const auto v = num(s);
    return {v, v + 1};
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InputError(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw InputError(std::string(what) + ": empty list");
    return out;
}

Campaign base_campaign(const Options& o) {
    Campaign c;
    c.integrator.method = method_from_string(o.method);
    c.integrator.constants.hbar = o.hbar;
    c.integrator.steps = o.steps;
    if (o.dt > 0.0) c.integrator.dt = o.dt;
    c.events.tolerance = o.tolerance;
    c.workers = o.workers;
    if (!o.betas.empty()) {
        c.beta_policies.clear();
        for (const auto& b : o.betas) c.beta_policies.push_back(BetaSpec::parse(b));
    }
    return c;
}

void write_metadata(const fs::path& dir, const std::string& subcommand, const std::vector<std::string>& args,
                    const Options& o) {
    fs::create_directories(dir);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    json meta{{"subcommand", subcommand},
              {"args", args},
              {"units", "hbar-relative; hbar = " + std::to_string(o.hbar)},
              {"timestamp", ts.str()}};
    std::ofstream(dir / "run.json") << meta.dump(2) << '\n';
}

int finish(const CampaignResult& res, const fs::path& dir, bool verbose, std::ostream& out, std::ostream& err) {
    write_campaign(res, dir);
    const auto& s = res.summary;
    if (verbose) {
        auto t = [](const EventResult& e) { return e.triggered ? std::to_string(*e.time) : std::string("-"); };
        for (const auto& r : res.runs) {
            out << "  " << r.provenance.key() << "  orth " << t(r.report.orthogonal) << "  antipodal "
                << t(r.report.antipodal) << "  violations " << r.violations.size() << '\n';
        }
    }
    out << to_string(res.kind) << ": " << s.runs << " runs, " << s.violations << " violations, "
        << "orthogonality trigger rate " << s.orthogonal_trigger_rate << ", antipodal trigger rate "
        << s.antipodal_trigger_rate << '\n';
    for (const auto& [k, v] : s.extra) out << "  " << k << " = " << v << '\n';
    out << "results: " << dir.string() << '\n';
    if (!res.ok()) {
        for (const auto& v : res.violations) {
            err << "VIOLATION " << v.provenance.key() << ": " << v.what << '\n';
        }
        err << "reports: " << (dir / "reports").string() << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

StateVector parse_state(const std::string& s, std::size_t dim) {
    if (s == "uniform" || s == "plus") return StateVector::uniform(dim);
    if (s.rfind("basis:", 0) == 0) return StateVector::basis(dim, std::stoul(s.substr(6)));
    if (s.rfind("seed:", 0) == 0) return random_state(dim, std::stoull(s.substr(5)));
    throw InputError("--state: expected uniform, basis:<k> or seed:<n>, got '" + s + "'");
}

int cmd_decay(const Options& o, const fs::path& dir, std::ostream& out, std::ostream& err) {
    const Campaign c = base_campaign(o);
    HermitianOperator h = HermitianOperator::zero(2);
    std::optional<StateVector> psi0;
    std::optional<std::uint64_t> seed;
    if (!o.energies.empty()) {
        h = HermitianOperator::diagonal(parse_list(o.energies, "--energies"));
        psi0 = parse_state(o.state, h.dim());
    } else {
        h = random_hermitian(o.dim, o.seed);
        if (o.shift) h = shift_ground_to_zero(h);
        psi0 = o.state == "uniform" ? random_state(o.dim, o.seed) : parse_state(o.state, o.dim);
        seed = o.seed;
    }
    const MomentPair m = moments(h, *psi0);
    const double hbar = o.hbar;
    const auto ct = char_times_ti(m, hbar);
    double horizon = o.horizon;
    if (!(horizon > 0.0)) horizon = o.horizon_mult * ct.t_orth.value_or(ct.t_any.value_or(1.0));

    const Generator gen(h);
    std::vector<BetaPolicy> policies;
    for (const auto& b : c.beta_policies) {
        const auto p = b.resolve(m.energy, false);
        if (std::find(policies.begin(), policies.end(), p) == policies.end()) policies.push_back(p);
    }
    const Trajectory tr = evolve(gen, *psi0, horizon, c.integrator, policies);
    EventQuery oq = c.events;
    EventQuery aq = c.events;
    aq.kind = EventKind::Antipodal;
    const auto orth = first_orthogonal(tr, gen, oq);
    const auto anti = first_antipodal(tr, gen, aq);
    const BoundReport rep = check_inequalities({tr, gen, Context::TimeIndependent, m, orth, anti});

    std::vector<double> bound(tr.size());
    std::vector<double> expd(tr.size());
    std::vector<double> regime(tr.size());
    for (std::size_t k = 0; k < tr.size(); ++k) {
        bound[k] = survival_lower_bound_ti(tr.times[k], m.spread, hbar).value;
        const auto d = exp_decay_diagnostic(tr.times[k], m.spread, m.energy, hbar);
        expd[k] = d.bound;
        regime[k] = d.regime_ok ? 1.0 : 0.0;
    }
    fs::create_directories(dir);
    {
        std::ofstream csv(dir / "trajectory.csv");
        write_trajectory_csv(csv, tr, {{"survival_bound", bound}, {"exp_decay", expd}, {"exp_regime", regime}});
    }
    std::ofstream(dir / "trajectory.json") << trajectory_metadata(tr, seed).dump(2) << '\n';
    std::ofstream(dir / "report.json") << to_json(rep).dump(2) << '\n';

    out << "E0 = " << m.energy << ", dE0 = " << m.spread << ", horizon = " << horizon << '\n';
    out << "t_any = " << (ct.t_any ? std::to_string(*ct.t_any) : "unbounded")
        << ", t_orth = " << (ct.t_orth ? std::to_string(*ct.t_orth) : "unbounded") << '\n';
    out << "orthogonal: " << (orth.triggered ? std::to_string(*orth.time) : "not triggered")
        << ", antipodal: " << (anti.triggered ? std::to_string(*anti.time) : "not triggered") << '\n';
    out << "results: " << dir.string() << '\n';
    if (!rep.all_satisfied()) {
        for (const auto* v : rep.violations()) err << "VIOLATION " << v->name << '\n';
        err << "reports: " << (dir / "report.json").string() << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
    const fs::path dir = o.input_dir;
    const fs::path reports = dir / "reports";
    if (!fs::is_directory(reports)) throw InputError(reports.string() + ": not a results directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(reports)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::size_t violations = 0;
    out << std::left << std::setw(56) << "run" << std::setw(12) << "orth" << std::setw(12) << "antipodal"
        << "violations\n";
    for (const auto& f : files) {
        const json j = load_json(f);
        const auto& ev = j.at("report").at("events");
        auto t = [](const json& e) {
            return e.at("triggered").get<bool>() ? std::to_string(e.at("time").get<double>()) : std::string("-");
        };
        const auto nv = j.at("violations").size();
        violations += nv;
        out << std::setw(56) << j.at("provenance").at("key").get<std::string>() << std::setw(12)
            << t(ev.at("orthogonal")) << std::setw(12) << t(ev.at("antipodal")) << nv << '\n';
        for (const auto& v : j.at("violations")) err << "VIOLATION " << f.filename().string() << ": " << v << '\n';
    }
    out << files.size() << " reports, " << violations << " violations\n";
    return violations ? kExitViolation : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-energy bound verification for time-independent and interpolated Hamiltonians", "teur"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv(kOutDirEnv)) o.out_dir = env;
    if (o.out_dir.empty()) o.out_dir = "teur-out";

    app.add_option("-o,--out", o.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or teur-out)");
    app.add_option("--hbar", o.hbar, "Reduced Planck constant; all inputs are hbar-relative")
        ->check(CLI::PositiveNumber);
    app.add_option("--dt", o.dt, "Fixed integration step (overrides --steps)")->check(CLI::PositiveNumber);
    app.add_option("--steps", o.steps, "Steps per horizon")->check(CLI::Range(1, 100000000));
    app.add_option("--method", o.method, "midpoint-exponential | rk4");
    app.add_option("--beta", o.betas, "beta policies: zero, mean, constant:<x>, g:<x>");
    app.add_option("--tol", o.tolerance, "Event tolerance")->check(CLI::PositiveNumber);
    app.add_option("--workers", o.workers, "Parallel campaign members")->check(CLI::Range(1, 256));
    app.add_flag("-v,--verbose", o.verbose, "Print one line per run");

    auto* verify = app.add_subcommand("verify", "Run the analytic suite or a campaign file");
    verify->add_flag("--analytic", o.analytic, "Closed-form two-level suite");
    verify->add_option("--campaign", o.campaign_file, "Campaign definition JSON")->check(CLI::ExistingFile);

    auto* qac = app.add_subcommand("qac", "Interpolated Ising runs");
    qac->add_option("--instance", o.instance_file, "Ising instance JSON")->required();
    qac->add_option("--schedule", o.schedule, "linear | poly:<p> | schedule JSON");
    qac->add_option("--T", o.t_values, "Comma-separated end times");
    qac->add_flag("--shift", o.shift, "Shift the problem ground energy to zero");

    auto* decay = app.add_subcommand("decay", "Single time-independent run with survival data");
    decay->add_option("--energies", o.energies, "Diagonal Hamiltonian entries, comma-separated");
    decay->add_option("--state", o.state, "uniform | basis:<k> | seed:<n>");
    decay->add_option("--dim", o.dim, "GUE dimension when --energies is absent");
    decay->add_option("--seed", o.seed, "GUE / Haar seed");
    decay->add_option("--horizon", o.horizon, "Evolution horizon");
    decay->add_option("--horizon-mult", o.horizon_mult, "Horizon in units of the orthogonality time");
    decay->add_flag("--shift", o.shift, "Shift the ground energy to zero");

    auto* ensemble = app.add_subcommand("ensemble", "GUE ensemble campaign");
    ensemble->add_option("--dim", o.dim, "Hilbert-space dimension");
    ensemble->add_option("--seeds", o.seeds, "Seed range A..B (half-open) or a single seed");
    ensemble->add_option("--horizon-mult", o.horizon_mult, "Horizon in units of the orthogonality time");
    ensemble->add_flag("--shift", o.shift, "Shift the ground energy to zero");

    auto* entangle = app.add_subcommand("entangle", "Product vs entangled decay comparison");
    entangle->add_option("--subdim", o.subdim, "Subsystem dimension");
    entangle->add_option("--seeds", o.seeds, "Seed range A..B (half-open) or a single seed");
    entangle->add_option("--horizon-mult", o.horizon_mult, "Horizon in units of the orthogonality time");

    auto* report = app.add_subcommand("report", "Summarize an existing results directory");
    report->add_option("--input", o.input_dir, "Results directory")->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        out << "# units: hbar-relative, hbar = " << o.hbar << '\n';
        const fs::path root = o.out_dir;
        if (*report) return cmd_report(o, out, err);

        const std::string sub = app.get_subcommands().front()->get_name();
        fs::path dir = root / sub;
        Campaign c = base_campaign(o);
        CampaignResult res;
        if (*verify) {
            if (!o.campaign_file.empty()) {
                c = campaign_from_json(load_json(o.campaign_file), fs::path(o.campaign_file).parent_path());
                dir = root / ("verify-" + fs::path(o.campaign_file).stem().string());
                write_metadata(dir, sub, args, o);
                res = run_campaign(c);
            } else {
                dir = root / "verify-analytic";
                write_metadata(dir, sub, args, o);
                res = run_analytic_suite(c.integrator, c.events);
            }
        } else if (*qac) {
            const IsingInstance inst = ising_from_json(load_json(o.instance_file));
            const Schedule sched = schedule_from_arg(o.schedule);
            for (const auto& note : sched.notes()) err << "note: schedule " << note << '\n';
            c.instance_name = fs::path(o.instance_file).stem().string();
            c.shift_ground = o.shift;
            write_metadata(dir, sub, args, o);
            res = run_qac(inst, sched, parse_list(o.t_values, "--T"), c);
        } else if (*decay) {
            write_metadata(dir, sub, args, o);
            return cmd_decay(o, dir, out, err);
        } else if (*ensemble) {
            c.shift_ground = o.shift;
            write_metadata(dir, sub, args, o);
            res = run_gue_ensemble(o.dim, parse_seeds(o.seeds), o.horizon_mult, c);
        } else if (*entangle) {
            c.horizon_mult = o.horizon_mult;
            write_metadata(dir, sub, args, o);
            res = run_entanglement_compare(o.subdim, parse_seeds(o.seeds), c);
        }
        return finish(res, dir, o.verbose, out, err);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
    } catch (const IntegrationError& e) {
        err << "integration failure at t = " << e.time() << ": " << e.what() << '\n';
    } catch (const fs::filesystem_error& e) {
        err << "filesystem error: " << e.what() << '\n';
    }
    return kExitConfig;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace teur::cli
