#pragma once

// Characteristic times, survival lower bounds and inequality margins.

#include <optional>
#include <string>
#include <vector>

#include "teur/events.hpp"
#include "teur/propagator.hpp"
#include "teur/qstate.hpp"
#include "teur/schedule.hpp"

namespace teur {

/// Empty optional means unbounded (zero denominator).
struct CharacteristicTimes {
    std::optional<double> t_any;
    std::optional<double> t_orth;
};

/// t_any = 2 hbar / sqrt(spread^2 + energy^2), t_orth = hbar sqrt(2) / spread.
CharacteristicTimes char_times_ti(const MomentPair& m, double hbar);

/// Same with the schedule integral of g folded into the denominators.
CharacteristicTimes char_times_qac(const MomentPair& m, double g_integral, double hbar);

struct SurvivalBound {
    double value = 1.0;
    /// True once the bracket (1 - x) has gone negative; value is then 0.
    bool vacuous = false;
};

/// (1 - spread^2 t^2 / (2 hbar^2))^2
SurvivalBound survival_lower_bound_ti(double t, double spread, double hbar);

/// (1 - spread_P^2 / (2 hbar^2) * (int_0^t g(tau/T) dtau)^2)^2
SurvivalBound survival_lower_bound_qac(double t, double spread_p, const Schedule& sched,
                                       double total_time, double hbar);

struct DecayDiagnostic {
    double bound = 1.0;
    bool regime_ok = true;
};

/// exp(-spread^2 t^2 / hbar^2), meaningful only for t sqrt(spread^2 + energy^2) << hbar.
DecayDiagnostic exp_decay_diagnostic(double t, double spread, double energy, double hbar);

enum class Context { TimeIndependent, Qac };
enum class Outcome { Satisfied, Violated, NotTriggered };

std::string to_string(Context c);
std::string to_string(Outcome o);

struct Margin {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    Outcome outcome = Outcome::NotTriggered;
    std::optional<double> time;
    std::string note;

    double margin() const { return rhs - lhs; }
};

struct BoundReport {
    Context context = Context::TimeIndependent;
    MomentPair moments;
    CharacteristicTimes characteristic;
    double hbar = 1.0;
    /// int_0^1 g, QAC runs only.
    std::optional<double> g_integral;
    EventResult orthogonal;
    EventResult antipodal;
    std::vector<Margin> margins;
    double numerical_slack = 0.0;
    /// Non-asserted observations (exp-decay comparison, notes from events).
    std::vector<std::string> diagnostics;

    bool all_satisfied() const;
    const Margin* find(const std::string& name) const;
    std::vector<const Margin*> violations() const;
};

struct ReportInputs {
    const Trajectory& trajectory;
    const Generator& generator;
    Context context = Context::TimeIndependent;
    /// (E_0, dE_0) for time-independent runs, (E_P, dE_P) for QAC runs.
    MomentPair moments;
    EventResult orthogonal;
    EventResult antipodal;
};

/// Evaluates every applicable inequality on the trajectory. Inequalities tied
/// to events that never happened are recorded as NotTriggered.
BoundReport check_inequalities(const ReportInputs& in);

/// Tolerances for the closed-form reductions of the accumulated right-hand side.
inline constexpr double kReductionToleranceTi = 1e-10;
inline constexpr double kReductionToleranceQac = 1e-9;

}  // namespace teur
