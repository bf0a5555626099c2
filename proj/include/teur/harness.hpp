#pragma once

// Verification campaigns over analytic cases, random ensembles, QAC instances
// and the composite-system comparison.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "teur/bounds.hpp"
#include "teur/hamiltonian.hpp"
#include "teur/propagator.hpp"

namespace teur {

enum class CampaignKind { AnalyticTwoLevel, GueEnsemble, QacIsing, EntanglementCompare };

std::string to_string(CampaignKind k);
CampaignKind campaign_kind_from_string(const std::string& s);

/// Half-open seed interval [begin, end).
struct SeedRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    std::size_t size() const noexcept { return end > begin ? static_cast<std::size_t>(end - begin) : 0; }
};

/// beta-policy as configured, before the run-specific energy is known.
struct BetaSpec {
    enum class Kind { Zero, Constant, Mean, ScheduleProportional };
    Kind kind = Kind::Zero;
    double value = 0.0;

    /// Mean resolves to beta = E_0 (time-independent) or beta0 = E_P (QAC).
    BetaPolicy resolve(double mean_energy, bool qac) const;
    std::string label() const;

    static BetaSpec parse(const std::string& s);
};

std::vector<BetaSpec> default_beta_specs();

struct Campaign {
    CampaignKind kind = CampaignKind::AnalyticTwoLevel;
    std::size_t dim = 2;
    SeedRange seeds{0, 100};
    double horizon_mult = 4.0;
    bool shift_ground = false;
    std::optional<IsingInstance> instance;
    std::string instance_name = "instance";
    Schedule schedule = Schedule::linear();
    std::vector<double> total_times{1.0, 4.0, 16.0};
    std::size_t subsystem_dim = 2;
    IntegratorConfig integrator;
    std::vector<BetaSpec> beta_policies = default_beta_specs();
    EventQuery events;
    std::size_t workers = 1;

    void validate() const;
    /// Stable hash over every field that influences results.
    std::string config_hash() const;
};

struct Provenance {
    std::string campaign;
    std::string case_name;
    std::optional<std::uint64_t> seed;
    std::string instance;
    std::optional<double> total_time;
    std::string config_hash;
    double horizon = 0.0;

    std::string key() const;
};

struct RunRecord {
    Provenance provenance;
    BoundReport report;
    std::vector<std::string> violations;
    std::map<std::string, double> metrics;
};

struct Violation {
    Provenance provenance;
    std::string what;
};

struct Quantiles {
    double min = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

Quantiles quantiles(std::vector<double> values);

struct CampaignSummary {
    std::size_t runs = 0;
    std::size_t violations = 0;
    double orthogonal_trigger_rate = 0.0;
    double antipodal_trigger_rate = 0.0;
    /// rhs - lhs per margin family, satisfied margins only.
    std::map<std::string, Quantiles> margins;
    /// lhs / rhs of the master inequality at its tightest sample.
    Quantiles general_tightness;
    std::map<std::string, double> extra;
};

struct CampaignResult {
    CampaignKind kind = CampaignKind::AnalyticTwoLevel;
    std::vector<RunRecord> runs;
    std::vector<Violation> violations;
    CampaignSummary summary;

    bool ok() const { return violations.empty(); }
};

CampaignResult run_analytic_suite(const IntegratorConfig& cfg = {}, const EventQuery& events = {});

CampaignResult run_gue_ensemble(std::size_t dim, SeedRange seeds, double horizon_mult,
                                const Campaign& base = {});

CampaignResult run_qac(const IsingInstance& instance, const Schedule& sched,
                       const std::vector<double>& total_times, const Campaign& base = {});

CampaignResult run_entanglement_compare(std::size_t subsystem_dim, SeedRange seeds,
                                        const Campaign& base = {});

/// Dispatches on campaign.kind.
CampaignResult run_campaign(const Campaign& campaign);

/// Single time-independent run with events and inequality checks.
RunRecord run_time_independent(const HermitianOperator& h, const StateVector& psi0, double horizon,
                               const IntegratorConfig& cfg, const std::vector<BetaSpec>& betas,
                               const EventQuery& events, Provenance prov);

/// Recomputes the summary from the runs (sorted by provenance key first).
void summarize(CampaignResult& result);

}  // namespace teur
