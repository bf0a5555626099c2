#include "teur/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "teur/errors.hpp"

namespace teur {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw InputError(where + ": " + msg);
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!ok.count(it.key())) fail(where, "unknown field '" + it.key() + "'");
    }
}

const json& field(const json& j, const std::string& where, const char* key) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number, got " + std::string(j.type_name()));
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "number is not finite");
    return v;
}

std::uint64_t index(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

const json& array_of(const json& j, const std::string& where, std::size_t len) {
    if (!j.is_array() || j.size() != len) {
        fail(where, "expected an array of " + std::to_string(len) + " numbers");
    }
    return j;
}

json opt_time(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string sanitize(std::string s) {
    for (auto& c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
    }
    return s;
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
}

json load_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path.string());
}

// --- Ising ---------------------------------------------------------------------

IsingInstance ising_from_json(const json& j) {
    const std::string where = "instance";
    if (!j.is_object()) fail(where, "expected an object");
    reject_unknown(j, where, {"n", "couplings", "fields"});
    IsingInstance inst;
    inst.n = index(field(j, where, "n"), where + ".n");
    if (auto it = j.find("couplings"); it != j.end()) {
        if (!it->is_array()) fail(where + ".couplings", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string w = where + ".couplings[" + std::to_string(k) + "]";
            const json& c = array_of((*it)[k], w, 3);
            inst.couplings.push_back({index(c[0], w + "[0]"), index(c[1], w + "[1]"), number(c[2], w + "[2]")});
        }
    }
    if (auto it = j.find("fields"); it != j.end()) {
        if (!it->is_array()) fail(where + ".fields", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const std::string w = where + ".fields[" + std::to_string(k) + "]";
            const json& f = array_of((*it)[k], w, 2);
            inst.fields.push_back({index(f[0], w + "[0]"), number(f[1], w + "[1]")});
        }
    }
    inst.validate();
    return inst;
}

json to_json(const IsingInstance& inst) {
    json j{{"n", inst.n}, {"couplings", json::array()}, {"fields", json::array()}};
    for (const auto& c : inst.couplings) j["couplings"].push_back({c.i, c.j, c.J});
    for (const auto& f : inst.fields) j["fields"].push_back({f.i, f.h});
    return j;
}

// --- Schedule ------------------------------------------------------------------

Schedule schedule_from_json(const json& j) {
    const std::string where = "schedule";
    if (!j.is_object()) fail(where, "expected an object");
    reject_unknown(j, where, {"kind", "power", "knots", "h"});
    const json& kind = field(j, where, "kind");
    if (!kind.is_string()) fail(where + ".kind", "expected a string");
    const auto k = kind.get<std::string>();
    Schedule s = Schedule::linear();
    if (k == "linear") {
        s = Schedule::linear();
    } else if (k == "poly" || k == "polynomial") {
        s = Schedule::polynomial(number(field(j, where, "power"), where + ".power"));
    } else if (k == "tabulated") {
        const json& knots = field(j, where, "knots");
        if (!knots.is_array()) fail(where + ".knots", "expected an array");
        std::vector<Schedule::Knot> v;
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const std::string w = where + ".knots[" + std::to_string(i) + "]";
            const json& kn = array_of(knots[i], w, 3);
            v.push_back({number(kn[0], w + "[0]"), number(kn[1], w + "[1]"), number(kn[2], w + "[2]")});
        }
        s = Schedule::tabulated(std::move(v));
    } else {
        fail(where + ".kind", "expected 'linear', 'poly' or 'tabulated', got '" + k + "'");
    }
    if (auto it = j.find("h"); it != j.end()) {
        const std::string w = where + ".h";
        if (!it->is_object()) fail(w, "expected an object");
        reject_unknown(*it, w, {"kind", "amplitude", "knots"});
        const auto hk = field(*it, w, "kind").get<std::string>();
        if (hk == "sine") {
            s = s.with_extra_term(ExtraTerm::sine(number(field(*it, w, "amplitude"), w + ".amplitude")));
        } else if (hk == "tabulated") {
            const json& knots = field(*it, w, "knots");
            if (!knots.is_array()) fail(w + ".knots", "expected an array");
            std::vector<ExtraTerm::Knot> v;
            for (std::size_t i = 0; i < knots.size(); ++i) {
                const std::string wk = w + ".knots[" + std::to_string(i) + "]";
                const json& kn = array_of(knots[i], wk, 2);
                v.push_back({number(kn[0], wk + "[0]"), number(kn[1], wk + "[1]")});
            }
            s = s.with_extra_term(ExtraTerm::tabulated(std::move(v)));
        } else {
            fail(w + ".kind", "expected 'sine' or 'tabulated'");
        }
    }
    return s;
}

json to_json(const Schedule& s) {
    json j;
    switch (s.kind()) {
        case Schedule::Kind::Linear: j["kind"] = "linear"; break;
        case Schedule::Kind::Polynomial:
            j["kind"] = "poly";
            j["power"] = s.power();
            break;
        case Schedule::Kind::Tabulated:
            j["kind"] = "tabulated";
            j["knots"] = json::array();
            for (const auto& k : s.knots()) j["knots"].push_back({k.tau, k.f, k.g});
            break;
    }
    if (s.has_extra_term()) {
        const auto& h = s.extra_term();
        if (h.is_sine()) {
            j["h"] = {{"kind", "sine"}, {"amplitude", h.amplitude()}};
        } else {
            json knots = json::array();
            for (const auto& k : h.knots()) knots.push_back({k.tau, k.value});
            j["h"] = {{"kind", "tabulated"}, {"knots", knots}};
        }
    }
    return j;
}

Schedule schedule_from_arg(const std::string& arg) {
    if (arg == "linear") return Schedule::linear();
    if (arg.rfind("poly:", 0) == 0) {
        try {
            std::size_t used = 0;
            const double p = std::stod(arg.substr(5), &used);
            if (used == arg.size() - 5) return Schedule::polynomial(p);
        } catch (const std::logic_error&) {
        }
        throw InputError("schedule: cannot parse power in '" + arg + "'");
    }
    return schedule_from_json(load_json(arg));
}

// --- Campaign ------------------------------------------------------------------

Campaign campaign_from_json(const json& j, const fs::path& base_dir) {
    const std::string where = "campaign";
    if (!j.is_object()) fail(where, "expected an object");
    reject_unknown(j, where, {"kind", "dim", "seeds", "horizon_mult", "shift_ground", "instance", "schedule",
                              "T", "subsystem_dim", "integrator", "beta_policies", "events", "workers"});
    Campaign c;
    const json& kind = field(j, where, "kind");
    if (!kind.is_string()) fail(where + ".kind", "expected a string");
    c.kind = campaign_kind_from_string(kind.get<std::string>());

    if (auto it = j.find("dim"); it != j.end()) c.dim = index(*it, where + ".dim");
    if (auto it = j.find("seeds"); it != j.end()) {
        const json& s = array_of(*it, where + ".seeds", 2);
        c.seeds = {index(s[0], where + ".seeds[0]"), index(s[1], where + ".seeds[1]")};
    }
    if (auto it = j.find("horizon_mult"); it != j.end()) c.horizon_mult = number(*it, where + ".horizon_mult");
    if (auto it = j.find("shift_ground"); it != j.end()) {
        if (!it->is_boolean()) fail(where + ".shift_ground", "expected a boolean");
        c.shift_ground = it->get<bool>();
    }
    if (auto it = j.find("instance"); it != j.end()) {
        if (it->is_string()) {
            fs::path p = it->get<std::string>();
            if (p.is_relative()) p = base_dir / p;
            c.instance = ising_from_json(load_json(p));
            c.instance_name = p.stem().string();
        } else {
            c.instance = ising_from_json(*it);
        }
    }
    if (auto it = j.find("schedule"); it != j.end()) {
        if (it->is_string()) {
            const auto arg = it->get<std::string>();
            fs::path p = arg;
            const bool preset = arg == "linear" || arg.rfind("poly:", 0) == 0;
            c.schedule = schedule_from_arg(preset || p.is_absolute() ? arg : (base_dir / p).string());
        } else {
            c.schedule = schedule_from_json(*it);
        }
    }
    if (auto it = j.find("T"); it != j.end()) {
        if (!it->is_array()) fail(where + ".T", "expected an array");
        c.total_times.clear();
        for (std::size_t i = 0; i < it->size(); ++i) {
            c.total_times.push_back(number((*it)[i], where + ".T[" + std::to_string(i) + "]"));
        }
    }
    if (auto it = j.find("subsystem_dim"); it != j.end()) c.subsystem_dim = index(*it, where + ".subsystem_dim");
    if (auto it = j.find("integrator"); it != j.end()) {
        const std::string w = where + ".integrator";
        if (!it->is_object()) fail(w, "expected an object");
        reject_unknown(*it, w, {"method", "dt", "steps", "norm_tolerance", "hbar"});
        if (auto m = it->find("method"); m != it->end()) c.integrator.method = method_from_string(m->get<std::string>());
        if (auto m = it->find("dt"); m != it->end() && !m->is_null()) c.integrator.dt = number(*m, w + ".dt");
        if (auto m = it->find("steps"); m != it->end()) c.integrator.steps = index(*m, w + ".steps");
        if (auto m = it->find("norm_tolerance"); m != it->end()) {
            c.integrator.norm_tolerance = number(*m, w + ".norm_tolerance");
        }
        if (auto m = it->find("hbar"); m != it->end()) c.integrator.constants.hbar = number(*m, w + ".hbar");
    }
    if (auto it = j.find("beta_policies"); it != j.end()) {
        if (!it->is_array()) fail(where + ".beta_policies", "expected an array of strings");
        c.beta_policies.clear();
        for (const auto& b : *it) {
            if (!b.is_string()) fail(where + ".beta_policies", "expected an array of strings");
            c.beta_policies.push_back(BetaSpec::parse(b.get<std::string>()));
        }
    }
    if (auto it = j.find("events"); it != j.end()) {
        const std::string w = where + ".events";
        if (!it->is_object()) fail(w, "expected an object");
        reject_unknown(*it, w, {"tolerance", "refine_iterations"});
        if (auto m = it->find("tolerance"); m != it->end()) c.events.tolerance = number(*m, w + ".tolerance");
        if (auto m = it->find("refine_iterations"); m != it->end()) {
            c.events.refine_iterations = static_cast<int>(index(*m, w + ".refine_iterations"));
        }
    }
    if (auto it = j.find("workers"); it != j.end()) c.workers = index(*it, where + ".workers");
    c.validate();
    return c;
}

json to_json(const Campaign& c) {
    json j{{"kind", to_string(c.kind)},
           {"dim", c.dim},
           {"seeds", {c.seeds.begin, c.seeds.end}},
           {"horizon_mult", c.horizon_mult},
           {"shift_ground", c.shift_ground},
           {"schedule", to_json(c.schedule)},
           {"T", c.total_times},
           {"subsystem_dim", c.subsystem_dim},
           {"integrator",
            {{"method", to_string(c.integrator.method)},
             {"dt", c.integrator.dt ? json(*c.integrator.dt) : json(nullptr)},
             {"steps", c.integrator.steps},
             {"norm_tolerance", c.integrator.norm_tolerance},
             {"hbar", c.integrator.constants.hbar}}},
           {"events", {{"tolerance", c.events.tolerance}, {"refine_iterations", c.events.refine_iterations}}},
           {"workers", c.workers}};
    if (c.instance) j["instance"] = to_json(*c.instance);
    j["beta_policies"] = json::array();
    for (const auto& b : c.beta_policies) j["beta_policies"].push_back(b.label());
    return j;
}

// --- reports -------------------------------------------------------------------

json to_json(const EventResult& ev) {
    json j{{"kind", to_string(ev.kind)},
           {"triggered", ev.triggered},
           {"time", opt_time(ev.time)},
           {"bracket_width", opt_time(ev.bracket_width)},
           {"functional_value", ev.functional_value}};
    if (ev.kind == EventKind::Antipodal) j["peak_distance"] = ev.peak_distance;
    if (!ev.notes.empty()) j["notes"] = ev.notes;
    return j;
}

json to_json(const BoundReport& r) {
    json margins = json::array();
    for (const auto& m : r.margins) {
        json e{{"name", m.name}, {"outcome", to_string(m.outcome)}};
        if (m.outcome != Outcome::NotTriggered) {
            e["lhs"] = finite_or_null(m.lhs);
            e["rhs"] = finite_or_null(m.rhs);
            e["margin"] = finite_or_null(m.margin());
            e["slack"] = m.slack;
            e["satisfied"] = m.outcome == Outcome::Satisfied;
        }
        if (m.time) e["time"] = *m.time;
        if (!m.note.empty()) e["note"] = m.note;
        margins.push_back(std::move(e));
    }
    json j{{"context", to_string(r.context)},
           {"hbar", r.hbar},
           {"moments", {{"energy", r.moments.energy}, {"spread", r.moments.spread}}},
           {"characteristic_times", {{"t_any", opt_time(r.characteristic.t_any)},
                                     {"t_orth", opt_time(r.characteristic.t_orth)}}},
           {"events", {{"orthogonal", to_json(r.orthogonal)}, {"antipodal", to_json(r.antipodal)}}},
           {"margins", margins},
           {"numerical_slack", r.numerical_slack},
           {"all_satisfied", r.all_satisfied()}};
    if (r.g_integral) j["g_integral"] = *r.g_integral;
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    return j;
}

json to_json(const RunRecord& r) {
    const auto& p = r.provenance;
    json prov{{"campaign", p.campaign},
              {"case", p.case_name},
              {"seed", p.seed ? json(*p.seed) : json(nullptr)},
              {"instance", p.instance},
              {"T", opt_time(p.total_time)},
              {"horizon", p.horizon},
              {"config_hash", p.config_hash},
              {"key", p.key()}};
    return {{"provenance", prov}, {"report", to_json(r.report)}, {"violations", r.violations},
            {"metrics", r.metrics}};
}

json to_json(const CampaignSummary& s) {
    auto q = [](const Quantiles& x) {
        return json{{"count", x.count}, {"min", x.min}, {"q25", x.q25}, {"median", x.median},
                    {"q75", x.q75}, {"max", x.max}};
    };
    json margins = json::object();
    for (const auto& [k, v] : s.margins) margins[k] = q(v);
    return {{"runs", s.runs},
            {"violations", s.violations},
            {"orthogonal_trigger_rate", s.orthogonal_trigger_rate},
            {"antipodal_trigger_rate", s.antipodal_trigger_rate},
            {"margin_quantiles", margins},
            {"general_tightness", q(s.general_tightness)},
            {"extra", s.extra}};
}

json to_json(const CampaignResult& r) {
    json violations = json::array();
    for (const auto& v : r.violations) violations.push_back({{"key", v.provenance.key()}, {"what", v.what}});
    return {{"kind", to_string(r.kind)}, {"summary", to_json(r.summary)}, {"violations", violations}};
}

// --- CSV -----------------------------------------------------------------------

void write_trajectory_csv(std::ostream& os, const Trajectory& tr, const std::vector<ExtraColumn>& extra) {
    for (const auto& [name, values] : extra) {
        if (values.size() != tr.size()) throw InputError("write_trajectory_csv: column '" + name + "' has wrong length");
    }
    os << "t,re_overlap,im_overlap,survival";
    for (const auto& track : tr.tracks) os << ",d_" << track.policy.label() << ",rhs_" << track.policy.label();
    for (const auto& col : extra) os << ',' << col.first;
    os << '\n';
    for (std::size_t k = 0; k < tr.size(); ++k) {
        os << csv_num(tr.times[k]) << ',' << csv_num(tr.overlaps[k].real()) << ','
           << csv_num(tr.overlaps[k].imag()) << ',' << csv_num(tr.survival[k]);
        for (const auto& track : tr.tracks) {
            os << ',' << csv_num(track.distances[k]) << ',' << csv_num(track.rhs_integrals[k]);
        }
        for (const auto& col : extra) os << ',' << csv_num(col.second[k]);
        os << '\n';
    }
}

json trajectory_metadata(const Trajectory& tr, std::optional<std::uint64_t> seed) {
    json policies = json::array();
    for (const auto& t : tr.tracks) policies.push_back(t.policy.label());
    return {{"seed", seed ? json(*seed) : json(nullptr)},
            {"method", to_string(tr.config.method)},
            {"dt", tr.step},
            {"steps", tr.size() - 1},
            {"hbar", tr.config.constants.hbar},
            {"horizon", tr.horizon},
            {"dim", tr.initial.dim()},
            {"time_independent", tr.time_independent},
            {"beta_policies", policies}};
}

void write_summary_csv(std::ostream& os, const CampaignResult& r) {
    os << "key,campaign,case,seed,instance,T,horizon,config_hash,context,energy,spread,t_any,t_orth,"
          "orthogonal_time,antipodal_time,min_general_margin,max_general_tightness,violations\n";
    auto opt = [](const std::optional<double>& v) { return v ? csv_num(*v) : std::string(); };
    for (const auto& run : r.runs) {
        const auto& p = run.provenance;
        const auto& rep = run.report;
        double min_margin = INFINITY;
        double tight = 0.0;
        for (const auto& m : rep.margins) {
            if (m.name.rfind("general[", 0) != 0) continue;
            min_margin = std::min(min_margin, m.margin());
            if (m.rhs > 0.0) tight = std::max(tight, m.lhs / m.rhs);
        }
        os << p.key() << ',' << p.campaign << ',' << p.case_name << ','
           << (p.seed ? std::to_string(*p.seed) : std::string()) << ',' << p.instance << ','
           << opt(p.total_time) << ',' << csv_num(p.horizon) << ',' << p.config_hash << ','
           << to_string(rep.context) << ',' << csv_num(rep.moments.energy) << ','
           << csv_num(rep.moments.spread) << ',' << opt(rep.characteristic.t_any) << ','
           << opt(rep.characteristic.t_orth) << ',' << opt(rep.orthogonal.time) << ','
           << opt(rep.antipodal.time) << ',' << (std::isfinite(min_margin) ? csv_num(min_margin) : "") << ','
           << csv_num(tight) << ',' << run.violations.size() << '\n';
    }
}

namespace {

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write " + p.string());
    return out;
}

}  // namespace

void write_campaign(const CampaignResult& r, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir / "reports", ec);
    if (ec) throw ConfigError("cannot create " + (dir / "reports").string() + ": " + ec.message());
    // Reports from an earlier campaign in the same directory would otherwise be mixed in.
    for (const auto& e : fs::directory_iterator(dir / "reports")) {
        if (e.is_regular_file() && e.path().extension() == ".json") fs::remove(e.path());
    }
    for (const auto& run : r.runs) {
        auto out = open_out(dir / "reports" / (sanitize(run.provenance.key()) + ".json"));
        out << to_json(run).dump(2) << '\n';
    }
    {
        auto out = open_out(dir / "summary.csv");
        write_summary_csv(out, r);
    }
    {
        auto out = open_out(dir / "summary.json");
        out << to_json(r).dump(2) << '\n';
    }
    {
        auto out = open_out(dir / "margins.csv");
        out << "family,count,min,q25,median,q75,max\n";
        for (const auto& [k, q] : r.summary.margins) {
            out << k << ',' << q.count << ',' << csv_num(q.min) << ',' << csv_num(q.q25) << ','
                << csv_num(q.median) << ',' << csv_num(q.q75) << ',' << csv_num(q.max) << '\n';
        }
    }
}

}  // namespace teur
