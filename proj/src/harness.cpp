#include "teur/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include "teur/errors.hpp"

namespace teur {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// 64-bit FNV-1a
std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::vector<BetaPolicy> resolve_all(const std::vector<BetaSpec>& specs, double mean, bool qac) {
    std::vector<BetaPolicy> out;
    for (const auto& s : specs) {
        BetaPolicy p = s.resolve(mean, qac);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

void collect_violations(RunRecord& rec) {
    for (const auto* m : rec.report.violations()) {
        std::ostringstream os;
        os << m->name << ": lhs " << fmt(m->lhs) << " > rhs " << fmt(m->rhs) << " + slack "
           << fmt(m->slack);
        if (m->time) os << " at t = " << fmt(*m->time);
        rec.violations.push_back(os.str());
    }
}

// Runs jobs on up to `workers` threads; output order matches job order.
std::vector<RunRecord> run_parallel(const std::vector<std::function<RunRecord()>>& jobs,
                                    std::size_t workers) {
    std::vector<RunRecord> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                out[i] = jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, jobs.size()));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

CampaignResult finish(CampaignKind kind, std::vector<RunRecord> runs) {
    CampaignResult res;
    res.kind = kind;
    res.runs = std::move(runs);
    summarize(res);
    return res;
}

double ground_space_probability(const HermitianOperator& problem, const CVector& psi) {
    // Problem operators here are diagonal in the computational basis.
    const auto n = psi.size();
    double lo = problem.matrix()(0, 0).real();
    for (Eigen::Index i = 1; i < n; ++i) lo = std::min(lo, problem.matrix()(i, i).real());
    double p = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(problem.matrix()(i, i).real() - lo) <= 1e-12) p += std::norm(psi(i));
    }
    return p;
}

std::optional<double> half_life(const Trajectory& tr) {
    for (std::size_t k = 1; k < tr.size(); ++k) {
        if (tr.survival[k] < 0.5) {
            const double a = tr.survival[k - 1];
            const double b = tr.survival[k];
            const double w = (a - 0.5) / (a - b);
            return tr.times[k - 1] + w * (tr.times[k] - tr.times[k - 1]);
        }
    }
    return std::nullopt;
}

double horizon_for(const CharacteristicTimes& ct, double mult) {
    if (ct.t_orth) return mult * *ct.t_orth;
    if (ct.t_any) return mult * *ct.t_any;
    return mult;
}

}  // namespace

// --- names -----------------------------------------------------------------

std::string to_string(CampaignKind k) {
    switch (k) {
        case CampaignKind::AnalyticTwoLevel: return "analytic-two-level";
        case CampaignKind::GueEnsemble: return "gue-ensemble";
        case CampaignKind::QacIsing: return "qac-ising";
        case CampaignKind::EntanglementCompare: return "entanglement-compare";
    }
    return "?";
}

CampaignKind campaign_kind_from_string(const std::string& s) {
    for (auto k : {CampaignKind::AnalyticTwoLevel, CampaignKind::GueEnsemble, CampaignKind::QacIsing,
                   CampaignKind::EntanglementCompare}) {
        if (to_string(k) == s) return k;
    }
    throw InputError("unknown campaign kind '" + s + "'");
}

BetaPolicy BetaSpec::resolve(double mean_energy, bool qac) const {
    switch (kind) {
        case Kind::Zero: return BetaPolicy::zero();
        case Kind::Constant: return BetaPolicy::constant(value);
        case Kind::Mean:
            return qac ? BetaPolicy::schedule_proportional(mean_energy) : BetaPolicy::constant(mean_energy);
        case Kind::ScheduleProportional: return BetaPolicy::schedule_proportional(value);
    }
    return BetaPolicy::zero();
}

std::string BetaSpec::label() const {
    switch (kind) {
        case Kind::Zero: return "zero";
        case Kind::Constant: return "constant:" + fmt(value);
        case Kind::Mean: return "mean";
        case Kind::ScheduleProportional: return "g:" + fmt(value);
    }
    return "?";
}

BetaSpec BetaSpec::parse(const std::string& s) {
    auto number = [&](std::size_t pos) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s.substr(pos), &used);
            if (used != s.size() - pos) throw InputError("");
            return v;
        } catch (...) {
            throw InputError("bad beta policy '" + s + "'");
        }
    };
    if (s == "zero" || s == "0") return {Kind::Zero, 0.0};
    if (s == "mean" || s == "energy") return {Kind::Mean, 0.0};
    if (s.rfind("constant:", 0) == 0) return {Kind::Constant, number(9)};
    if (s.rfind("g:", 0) == 0) return {Kind::ScheduleProportional, number(2)};
    throw InputError("bad beta policy '" + s + "' (expected zero, mean, constant:<x> or g:<x>)");
}

std::vector<BetaSpec> default_beta_specs() {
    return {{BetaSpec::Kind::Zero, 0.0}, {BetaSpec::Kind::Mean, 0.0}};
}

// --- Campaign ----------------------------------------------------------------

void Campaign::validate() const {
    integrator.validate();
    events.validate();
    if (!(horizon_mult > 0.0)) throw InputError("campaign: horizon multiplier must be positive");
    if (beta_policies.empty()) throw InputError("campaign: at least one beta policy is required");
    switch (kind) {
        case CampaignKind::AnalyticTwoLevel: break;
        case CampaignKind::GueEnsemble:
            if (seeds.size() == 0) throw InputError("campaign: seed range is empty");
            if (dim < 2 || dim > kDefaultDimensionCap) throw InputError("campaign: dimension out of range");
            break;
        case CampaignKind::QacIsing:
            if (!instance) throw InputError("campaign: qac-ising needs an instance");
            instance->validate();
            if (total_times.empty()) throw InputError("campaign: no T values");
            for (double t : total_times) {
                if (!(t > 0.0)) throw InputError("campaign: T values must be positive");
            }
            break;
        case CampaignKind::EntanglementCompare:
            if (seeds.size() == 0) throw InputError("campaign: seed range is empty");
            if (subsystem_dim < 2 || subsystem_dim * subsystem_dim > kDefaultDimensionCap) {
                throw InputError("campaign: subsystem dimension out of range");
            }
            break;
    }
}

std::string Campaign::config_hash() const {
    std::ostringstream os;
    os << to_string(kind) << '|' << dim << '|' << seeds.begin << ':' << seeds.end << '|'
       << fmt(horizon_mult) << '|' << shift_ground << '|' << schedule.name() << '|' << subsystem_dim << '|'
       << to_string(integrator.method) << '|' << (integrator.dt ? fmt(*integrator.dt) : "-") << '|'
       << integrator.steps << '|' << fmt(integrator.norm_tolerance) << '|' << fmt(integrator.constants.hbar)
       << '|' << fmt(events.tolerance) << '|' << events.refine_iterations;
    for (const auto& b : beta_policies) os << '|' << b.label();
    for (double t : total_times) os << '|' << fmt(t);
    if (instance) {
        os << "|n" << instance->n;
        for (const auto& c : instance->couplings) os << ',' << c.i << '-' << c.j << '=' << fmt(c.J);
        for (const auto& f : instance->fields) os << ',' << f.i << '=' << fmt(f.h);
    }
    return fnv1a_hex(os.str());
}

std::string Provenance::key() const {
    std::ostringstream os;
    os << campaign << '/' << case_name << '/' << std::setw(20) << std::setfill('0')
       << (seed ? *seed : 0) << '/' << instance << '/';
    if (total_time) os << std::setw(24) << std::fixed << std::setprecision(9) << *total_time;
    return os.str();
}

// --- statistics --------------------------------------------------------------

Quantiles quantiles(std::vector<double> values) {
    Quantiles q;
    q.count = values.size();
    if (values.empty()) return q;
    std::sort(values.begin(), values.end());
    auto at = [&](double p) {
        const double pos = p * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, values.size() - 1);
        const double w = pos - static_cast<double>(lo);
        return values[lo] + w * (values[hi] - values[lo]);
    };
    q.min = values.front();
    q.q25 = at(0.25);
    q.median = at(0.5);
    q.q75 = at(0.75);
    q.max = values.back();
    return q;
}

void summarize(CampaignResult& result) {
    std::sort(result.runs.begin(), result.runs.end(),
              [](const RunRecord& a, const RunRecord& b) { return a.provenance.key() < b.provenance.key(); });
    result.violations.clear();
    CampaignSummary s;
    s.runs = result.runs.size();
    std::map<std::string, std::vector<double>> fam;
    std::vector<double> tight;
    std::size_t orth = 0;
    std::size_t anti = 0;
    for (const auto& r : result.runs) {
        for (const auto& v : r.violations) result.violations.push_back({r.provenance, v});
        if (r.report.orthogonal.triggered) ++orth;
        if (r.report.antipodal.triggered) ++anti;
        for (const auto& m : r.report.margins) {
            if (m.outcome != Outcome::Satisfied) continue;
            const std::string family = m.name.substr(0, m.name.find('['));
            fam[family].push_back(m.margin());
            if (family == "general" && m.rhs > 0.0) tight.push_back(m.lhs / m.rhs);
        }
    }
    s.violations = result.violations.size();
    if (s.runs > 0) {
        s.orthogonal_trigger_rate = static_cast<double>(orth) / static_cast<double>(s.runs);
        s.antipodal_trigger_rate = static_cast<double>(anti) / static_cast<double>(s.runs);
    }
    for (auto& [k, v] : fam) s.margins[k] = quantiles(std::move(v));
    s.general_tightness = quantiles(std::move(tight));
    s.extra = std::move(result.summary.extra);
    result.summary = std::move(s);
}

// --- single runs -------------------------------------------------------------

RunRecord run_time_independent(const HermitianOperator& h, const StateVector& psi0, double horizon,
                               const IntegratorConfig& cfg, const std::vector<BetaSpec>& betas,
                               const EventQuery& events, Provenance prov) {
    const MomentPair m = moments(h, psi0);
    const Generator gen(h);
    const Trajectory tr = evolve(gen, psi0, horizon, cfg, resolve_all(betas, m.energy, false));
    EventQuery oq = events;
    oq.kind = EventKind::Orthogonal;
    EventQuery aq = events;
    aq.kind = EventKind::Antipodal;
    const EventResult orth = first_orthogonal(tr, gen, oq);
    const EventResult anti = first_antipodal(tr, gen, aq);

    RunRecord rec;
    prov.horizon = horizon;
    rec.provenance = std::move(prov);
    rec.report = check_inequalities({tr, gen, Context::TimeIndependent, m, orth, anti});
    rec.metrics["final_survival"] = tr.survival.back();
    rec.metrics["peak_distance"] = anti.peak_distance;
    if (auto hl = half_life(tr)) rec.metrics["half_life"] = *hl;
    collect_violations(rec);
    return rec;
}

CampaignResult run_analytic_suite(const IntegratorConfig& cfg, const EventQuery& events) {
    struct Case {
        std::string name;
        std::vector<double> energies;
        CVector psi;
        double horizon;
        std::optional<double> expected_orth;
        std::optional<double> expected_anti;
    };
    const double r = 1.0 / std::numbers::sqrt2;
    const CVector plus = (CVector(2) << r, r).finished();
    const CVector zero = (CVector(2) << 1.0, 0.0).finished();
    const double pi = std::numbers::pi;
    const double hbar = cfg.constants.hbar;
    // Closed forms scale with hbar: phases are E t / hbar.
    const std::vector<Case> cases{
        {"orthogonality", {0.0, 1.0}, plus, 4.0 * hbar, pi * hbar, std::nullopt},
        {"antipodal", {-0.5, 0.5}, plus, 8.0 * hbar, pi * hbar, 2.0 * pi * hbar},
        {"null", {0.0, 0.0}, plus, 4.0 * hbar, std::nullopt, std::nullopt},
        {"eigenstate", {0.0, 1.0}, zero, 4.0 * hbar, std::nullopt, std::nullopt},
        {"eigenstate-phase", {1.0, 2.0}, zero, 4.0 * hbar, std::nullopt, pi * hbar},
    };
    const Campaign tag{.kind = CampaignKind::AnalyticTwoLevel, .integrator = cfg, .events = events};
    const std::string hash = tag.config_hash();

    std::vector<RunRecord> runs;
    for (const auto& c : cases) {
        Provenance prov{.campaign = to_string(CampaignKind::AnalyticTwoLevel), .case_name = c.name,
                        .config_hash = hash};
        RunRecord rec = run_time_independent(HermitianOperator::diagonal(c.energies), StateVector(c.psi),
                                             c.horizon, cfg, default_beta_specs(), events, prov);
        auto expect = [&](const char* what, const EventResult& ev, const std::optional<double>& want) {
            if (want && !ev.triggered) {
                rec.violations.push_back(std::string(what) + ": expected event at " + fmt(*want) +
                                         " was not detected");
            } else if (!want && ev.triggered) {
                rec.violations.push_back(std::string(what) + ": unexpected event at " + fmt(*ev.time));
            } else if (want && std::abs(*ev.time - *want) > 1e-6) {
                rec.violations.push_back(std::string(what) + ": detected " + fmt(*ev.time) +
                                         ", closed form " + fmt(*want));
            }
        };
        expect("orthogonal", rec.report.orthogonal, c.expected_orth);
        expect("antipodal", rec.report.antipodal, c.expected_anti);
        runs.push_back(std::move(rec));
    }
    return finish(CampaignKind::AnalyticTwoLevel, std::move(runs));
}

CampaignResult run_gue_ensemble(std::size_t dim, SeedRange seeds, double horizon_mult, const Campaign& base) {
    Campaign c = base;
    c.kind = CampaignKind::GueEnsemble;
    c.dim = dim;
    c.seeds = seeds;
    c.horizon_mult = horizon_mult;
    c.validate();
    const std::string hash = c.config_hash();

    std::vector<std::function<RunRecord()>> jobs;
    for (std::uint64_t seed = seeds.begin; seed < seeds.end; ++seed) {
        jobs.emplace_back([&c, seed, hash] {
            HermitianOperator h = random_hermitian(c.dim, seed);
            if (c.shift_ground) h = shift_ground_to_zero(h);
            const StateVector psi0 = random_state(c.dim, seed);
            const MomentPair m = moments(h, psi0);
            const double horizon = horizon_for(char_times_ti(m, c.integrator.constants.hbar), c.horizon_mult);
            Provenance prov{.campaign = to_string(c.kind), .case_name = "dim" + std::to_string(c.dim),
                            .seed = seed, .config_hash = hash};
            RunRecord rec = run_time_independent(h, psi0, horizon, c.integrator, c.beta_policies, c.events, prov);
            rec.metrics["energy"] = m.energy;
            rec.metrics["spread"] = m.spread;
            return rec;
        });
    }
    return finish(c.kind, run_parallel(jobs, c.workers));
}

CampaignResult run_qac(const IsingInstance& instance, const Schedule& sched,
                       const std::vector<double>& total_times, const Campaign& base) {
    Campaign c = base;
    c.kind = CampaignKind::QacIsing;
    c.instance = instance;
    c.schedule = sched;
    c.total_times = total_times;
    c.validate();
    const std::string hash = c.config_hash();

    const HermitianOperator h_i = transverse_initial(instance.n);
    const HermitianOperator h_p = c.shift_ground ? shift_ground_to_zero(ising_problem(instance))
                                                 : ising_problem(instance);
    const StateVector g_i = StateVector::uniform(h_i.dim());
    const double ground = (h_i.matrix() * g_i.amplitudes()).norm();
    if (ground > 1e-10) {
        throw ConfigError("run_qac: H_I |g_I> has norm " + fmt(ground) + ", expected 0");
    }
    const MomentPair mp = moments(h_p, g_i);
    const auto policies = resolve_all(c.beta_policies, mp.energy, true);

    std::vector<std::function<RunRecord()>> jobs;
    for (double T : total_times) {
        jobs.emplace_back([&, T] {
            const Generator gen(InterpolatedHamiltonian(h_i, h_p, sched, T));
            const Trajectory tr = evolve(gen, g_i, T, c.integrator, policies);
            EventQuery oq = c.events;
            oq.kind = EventKind::Orthogonal;
            EventQuery aq = c.events;
            aq.kind = EventKind::Antipodal;
            const EventResult orth = first_orthogonal(tr, gen, oq);
            const EventResult anti = first_antipodal(tr, gen, aq);

            RunRecord rec;
            rec.provenance = {.campaign = to_string(c.kind), .case_name = sched.name(),
                              .instance = c.instance_name, .total_time = T, .config_hash = hash,
                              .horizon = T};
            rec.report = check_inequalities({tr, gen, Context::Qac, mp, orth, anti});
            rec.metrics["final_survival"] = tr.survival.back();
            rec.metrics["ground_probability"] = ground_space_probability(h_p, tr.final_state.amplitudes());
            rec.metrics["E_P"] = mp.energy;
            rec.metrics["spread_P"] = mp.spread;
            if (rec.report.characteristic.t_any) rec.metrics["t_any"] = *rec.report.characteristic.t_any;
            if (rec.report.characteristic.t_orth) rec.metrics["t_orth"] = *rec.report.characteristic.t_orth;
            rec.metrics["g_integral"] = *rec.report.g_integral;
            collect_violations(rec);
            return rec;
        });
    }
    return finish(c.kind, run_parallel(jobs, c.workers));
}

CampaignResult run_entanglement_compare(std::size_t subsystem_dim, SeedRange seeds, const Campaign& base) {
    Campaign c = base;
    c.kind = CampaignKind::EntanglementCompare;
    c.subsystem_dim = subsystem_dim;
    c.seeds = seeds;
    c.validate();
    const std::string hash = c.config_hash();
    const std::size_t d = subsystem_dim;
    const double hbar = c.integrator.constants.hbar;

    // Each seed yields a product run and an energy-matched entangled run.
    std::vector<std::function<RunRecord()>> jobs;
    for (std::uint64_t seed = seeds.begin; seed < seeds.end; ++seed) {
        for (int entangled = 0; entangled < 2; ++entangled) {
            jobs.emplace_back([&c, seed, entangled, d, hash, hbar] {
                const HermitianOperator h1 = random_hermitian(d, 2 * seed);
                const HermitianOperator h2 = random_hermitian(d, 2 * seed + 1);
                const HermitianOperator id = HermitianOperator::identity(d);
                const HermitianOperator h(tensor(h1, id).matrix() + tensor(id, h2).matrix());
                const StateVector product = tensor(random_state(d, 2 * seed), random_state(d, 2 * seed + 1));
                const double energy = expectation(h, product);

                // cos|a_0 b_0> + sin|a_max b_max> in the subsystem eigenbases, weights fixed by <H>.
                const Spectrum s1 = diagonalize(h1);
                const Spectrum s2 = diagonalize(h2);
                const auto last = static_cast<Eigen::Index>(d - 1);
                const double e_lo = s1.values(0) + s2.values(0);
                const double e_hi = s1.values(last) + s2.values(last);
                const double w = std::clamp((e_hi - energy) / (e_hi - e_lo), 0.0, 1.0);
                const CVector lo = tensor(StateVector::normalize(s1.vectors.col(0)),
                                          StateVector::normalize(s2.vectors.col(0))).amplitudes();
                const CVector hi = tensor(StateVector::normalize(s1.vectors.col(last)),
                                          StateVector::normalize(s2.vectors.col(last))).amplitudes();
                const StateVector bell = StateVector::normalize(std::sqrt(w) * lo + std::sqrt(1.0 - w) * hi);

                const MomentPair mp = moments(h, product);
                const MomentPair me = moments(h, bell);
                const double t_ref = std::max(horizon_for(char_times_ti(mp, hbar), 1.0),
                                              horizon_for(char_times_ti(me, hbar), 1.0));
                const StateVector& psi0 = entangled ? bell : product;
                Provenance prov{.campaign = to_string(c.kind),
                                .case_name = entangled ? "entangled" : "product",
                                .seed = seed, .config_hash = hash};
                RunRecord rec = run_time_independent(h, psi0, c.horizon_mult * t_ref, c.integrator,
                                                     c.beta_policies, c.events, prov);
                const MomentPair m = entangled ? me : mp;
                rec.metrics["energy"] = m.energy;
                rec.metrics["spread"] = m.spread;
                if (entangled) {
                    double entropy = 0.0;
                    for (double p : {w, 1.0 - w}) {
                        if (p > 0.0) entropy -= p * std::log(p);
                    }
                    rec.metrics["entanglement_entropy"] = entropy;
                }
                return rec;
            });
        }
    }
    CampaignResult res = finish(c.kind, run_parallel(jobs, c.workers));

    // Correlation between spread and half-life over all runs that reached P < 1/2.
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t faster = 0;
    std::size_t compared = 0;
    std::map<std::uint64_t, std::pair<const RunRecord*, const RunRecord*>> pairs;
    for (const auto& r : res.runs) {
        if (auto it = r.metrics.find("half_life"); it != r.metrics.end()) {
            xs.push_back(r.metrics.at("spread"));
            ys.push_back(it->second);
        }
        auto& slot = pairs[*r.provenance.seed];
        (r.provenance.case_name == "entangled" ? slot.second : slot.first) = &r;
    }
    std::size_t spread_larger = 0;
    for (const auto& [seed, pr] : pairs) {
        const auto* p = pr.first;
        const auto* e = pr.second;
        if (!p || !e) continue;
        if (e->metrics.at("spread") > p->metrics.at("spread")) ++spread_larger;
        auto hp = p->metrics.find("half_life");
        auto he = e->metrics.find("half_life");
        if (hp != p->metrics.end() && he != e->metrics.end()) {
            ++compared;
            if (he->second < hp->second) ++faster;
        }
    }
    double corr = 0.0;
    if (xs.size() >= 2) {
        const auto nx = static_cast<double>(xs.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i] / nx;
            my += ys[i] / nx;
        }
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
            syy += (ys[i] - my) * (ys[i] - my);
        }
        if (sxx > 0.0 && syy > 0.0) corr = sxy / std::sqrt(sxx * syy);
    }
    res.summary.extra["spread_halflife_correlation"] = corr;
    res.summary.extra["halflife_samples"] = static_cast<double>(xs.size());
    res.summary.extra["pairs_compared"] = static_cast<double>(compared);
    res.summary.extra["entangled_faster_fraction"] =
        compared ? static_cast<double>(faster) / static_cast<double>(compared) : 0.0;
    res.summary.extra["entangled_larger_spread_fraction"] =
        pairs.empty() ? 0.0 : static_cast<double>(spread_larger) / static_cast<double>(pairs.size());
    return res;
}

CampaignResult run_campaign(const Campaign& campaign) {
    campaign.validate();
    switch (campaign.kind) {
        case CampaignKind::AnalyticTwoLevel: return run_analytic_suite(campaign.integrator, campaign.events);
        case CampaignKind::GueEnsemble:
            return run_gue_ensemble(campaign.dim, campaign.seeds, campaign.horizon_mult, campaign);
        case CampaignKind::QacIsing:
            return run_qac(*campaign.instance, campaign.schedule, campaign.total_times, campaign);
        case CampaignKind::EntanglementCompare:
            return run_entanglement_compare(campaign.subsystem_dim, campaign.seeds, campaign);
    }
    throw InputError("unknown campaign kind");
}

}  // namespace teur
