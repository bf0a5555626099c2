#include "teur/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "teur/errors.hpp"

namespace teur {

namespace {

constexpr const char* kNotTriggered = "not triggered - consistent";

SurvivalBound clamp_bound(double x) {
    // x is the subtracted term; the bound is only a valid continuation while x <= 1.
    if (x > 1.0) return {0.0, true};
    const double b = 1.0 - x;
    return {b * b, false};
}

// Linear interpolation of a cumulative sample sequence at time t.
double interpolate(const std::vector<double>& times, const std::vector<double>& values, double t) {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const auto k = static_cast<std::size_t>(std::distance(times.begin(), it));
    const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
    return values[k - 1] + w * (values[k] - values[k - 1]);
}

Margin make(std::string name, double lhs, double rhs, double slack, std::optional<double> time = {}) {
    Margin m;
    m.name = std::move(name);
    m.lhs = lhs;
    m.rhs = rhs;
    m.slack = slack;
    m.time = time;
    m.outcome = (lhs <= rhs + slack) ? Outcome::Satisfied : Outcome::Violated;
    return m;
}

Margin not_triggered(std::string name) {
    Margin m;
    m.name = std::move(name);
    m.outcome = Outcome::NotTriggered;
    m.note = kNotTriggered;
    return m;
}

// Event time against a characteristic time. An unbounded characteristic time
// forbids the event altogether.
Margin event_time_margin(std::string name, const std::optional<double>& characteristic,
                         const EventResult& ev) {
    if (!ev.triggered) return not_triggered(std::move(name));
    const double slack = ev.bracket_width.value_or(0.0);
    if (!characteristic) {
        Margin m = make(std::move(name), std::numeric_limits<double>::infinity(), *ev.time, slack, ev.time);
        m.note = "event observed although the characteristic time is unbounded";
        return m;
    }
    return make(std::move(name), *characteristic, *ev.time, slack, ev.time);
}

// Picks the sample to report for a pointwise inequality lhs_k <= rhs_k + slack:
// the most violating sample if any, otherwise the tightest one after t = 0
// (where both sides vanish or coincide).
template <class Lhs, class Rhs>
Margin pointwise(std::string name, std::size_t n, const std::vector<double>& times, Lhs lhs, Rhs rhs,
                 double slack) {
    std::size_t pick = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double excess = lhs(k) - rhs(k) - slack;
        if (excess > worst_excess) {
            worst_excess = excess;
            pick = k;
        }
    }
    if (worst_excess <= 0.0 && n > 1) {
        double tightest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < n; ++k) {
            const double gap = rhs(k) - lhs(k);
            if (gap < tightest) {
                tightest = gap;
                pick = k;
            }
        }
    }
    Margin m = make(std::move(name), lhs(pick), rhs(pick), slack, times[pick]);
    if (worst_excess > 0.0) m.outcome = Outcome::Violated;
    return m;
}

}  // namespace

CharacteristicTimes char_times_ti(const MomentPair& m, double hbar) {
    CharacteristicTimes ct;
    const double any_den = std::hypot(m.spread, m.energy);
    if (any_den > 0.0) ct.t_any = 2.0 * hbar / any_den;
    if (m.spread > 0.0) ct.t_orth = hbar * std::numbers::sqrt2 / m.spread;
    return ct;
}

CharacteristicTimes char_times_qac(const MomentPair& m, double g_integral, double hbar) {
    if (!(g_integral > 0.0)) throw InputError("char_times_qac: g integral must be positive");
    CharacteristicTimes ct;
    const double any_den = g_integral * std::hypot(m.spread, m.energy);
    if (any_den > 0.0) ct.t_any = 2.0 * hbar / any_den;
    const double orth_den = g_integral * m.spread;
    if (orth_den > 0.0) ct.t_orth = hbar * std::numbers::sqrt2 / orth_den;
    return ct;
}

SurvivalBound survival_lower_bound_ti(double t, double spread, double hbar) {
    if (!(t >= 0.0)) throw InputError("survival_lower_bound_ti: t must be nonnegative");
    return clamp_bound(spread * spread * t * t / (2.0 * hbar * hbar));
}

SurvivalBound survival_lower_bound_qac(double t, double spread_p, const Schedule& sched,
                                       double total_time, double hbar) {
    if (!(t >= 0.0)) throw InputError("survival_lower_bound_qac: t must be nonnegative");
    if (t > total_time * (1.0 + 1e-12)) {
        throw InputError("survival_lower_bound_qac: t exceeds the end time T");
    }
    const double g_int = total_time * sched.integral(std::min(1.0, t / total_time));
    return clamp_bound(spread_p * spread_p * g_int * g_int / (2.0 * hbar * hbar));
}

DecayDiagnostic exp_decay_diagnostic(double t, double spread, double energy, double hbar) {
    if (!(t >= 0.0)) throw InputError("exp_decay_diagnostic: t must be nonnegative");
    DecayDiagnostic d;
    d.bound = std::exp(-spread * spread * t * t / (hbar * hbar));
    d.regime_ok = t * std::hypot(spread, energy) <= 0.1 * hbar;
    return d;
}

std::string to_string(Context c) { return c == Context::TimeIndependent ? "time-independent" : "qac"; }

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Satisfied: return "satisfied";
        case Outcome::Violated: return "violated";
        case Outcome::NotTriggered: return "not-triggered";
    }
    return "?";
}

bool BoundReport::all_satisfied() const {
    return std::none_of(margins.begin(), margins.end(),
                        [](const Margin& m) { return m.outcome == Outcome::Violated; });
}

const Margin* BoundReport::find(const std::string& name) const {
    for (const auto& m : margins) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

std::vector<const Margin*> BoundReport::violations() const {
    std::vector<const Margin*> out;
    for (const auto& m : margins) {
        if (m.outcome == Outcome::Violated) out.push_back(&m);
    }
    return out;
}

BoundReport check_inequalities(const ReportInputs& in) {
    const Trajectory& tr = in.trajectory;
    const Generator& gen = in.generator;
    const InterpolatedHamiltonian* ih = gen.interpolated();
    if (in.context == Context::Qac && !ih) {
        throw InputError("check_inequalities: QAC inequalities requested for a time-independent run");
    }
    if (in.context == Context::TimeIndependent && ih) {
        throw InputError("check_inequalities: time-independent inequalities requested for an interpolated run");
    }
    if (tr.time_independent != (ih == nullptr)) {
        throw InputError("check_inequalities: trajectory was produced by a different Hamiltonian kind");
    }
    if (gen.dim() != tr.initial.dim()) throw InputError("check_inequalities: dimension mismatch");

    BoundReport rep;
    rep.context = in.context;
    rep.moments = in.moments;
    rep.hbar = tr.config.constants.hbar;
    rep.orthogonal = in.orthogonal;
    rep.antipodal = in.antipodal;
    const double hbar = rep.hbar;
    const std::size_t n = tr.size();

    for (std::size_t b = 0; b < tr.tracks.size(); ++b) {
        rep.numerical_slack = std::max(rep.numerical_slack, tr.numerical_slack(b));
    }

    // Master inequality hbar d(t, beta) <= int_0^t ||(H - beta) phi_0||, every sample.
    for (std::size_t b = 0; b < tr.tracks.size(); ++b) {
        const auto& track = tr.tracks[b];
        rep.margins.push_back(pointwise(
            "general[" + track.policy.label() + "]", n, tr.times,
            [&](std::size_t k) { return hbar * track.distances[k]; },
            [&](std::size_t k) { return track.rhs_integrals[k]; }, tr.numerical_slack(b)));
    }

    const auto zero_track = tr.find_track(BetaPolicy::zero());
    const bool plain_qac = ih && !ih->extra().has_value();

    if (in.context == Context::TimeIndependent) {
        rep.characteristic = char_times_ti(in.moments, hbar);

        // P(t) >= (1 - dE^2 t^2 / 2 hbar^2)^2
        const double spread = in.moments.spread;
        rep.margins.push_back(pointwise(
            "survival_decay", n, tr.times,
            [&](std::size_t k) { return survival_lower_bound_ti(tr.times[k], spread, hbar).value; },
            [&](std::size_t k) { return tr.survival[k]; }, 10.0 * tr.step * spread / hbar + tr.roundoff_floor()));

        rep.margins.push_back(event_time_margin("any_state_time", rep.characteristic.t_any, in.antipodal));
        rep.margins.push_back(event_time_margin("orthogonal_time", rep.characteristic.t_orth, in.orthogonal));

        // Reductions of the accumulated rhs for constant beta: t sqrt(dE^2 + (E - beta)^2).
        for (const auto& track : tr.tracks) {
            if (track.policy.kind() == BetaPolicy::Kind::ScheduleProportional) continue;
            const double beta = track.policy.beta0();
            const double rate = std::hypot(in.moments.spread, in.moments.energy - beta);
            double err = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                err = std::max(err, std::abs(track.rhs_integrals[k] - tr.times[k] * rate));
            }
            rep.margins.push_back(make("reduction[" + track.policy.label() + "]", err,
                                       kReductionToleranceTi, 0.0));
        }

        // exp(-dE^2 t^2 / hbar^2) compared in its regime; never asserted.
        std::size_t in_regime = 0;
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            const auto diag = exp_decay_diagnostic(tr.times[k], in.moments.spread, in.moments.energy, hbar);
            if (!diag.regime_ok) continue;
            ++in_regime;
            min_gap = std::min(min_gap, tr.survival[k] - diag.bound);
        }
        std::ostringstream os;
        os << "exp_decay: " << in_regime << " samples in regime";
        if (in_regime > 0) os << ", min(P - exp bound) = " << min_gap;
        rep.diagnostics.push_back(os.str());
    } else {
        const double T = ih->total_time();
        rep.g_integral = ih->schedule().integral(1.0);
        rep.characteristic = char_times_qac(in.moments, *rep.g_integral, hbar);

        if (plain_qac) {
            std::vector<double> bound(n);
            for (std::size_t k = 0; k < n; ++k) {
                bound[k] = survival_lower_bound_qac(tr.times[k], in.moments.spread, ih->schedule(), T, hbar).value;
            }
            rep.margins.push_back(pointwise(
                "survival_qac", n, tr.times, [&](std::size_t k) { return bound[k]; },
                [&](std::size_t k) { return tr.survival[k]; },
                10.0 * tr.step * in.moments.spread / hbar + tr.roundoff_floor()));

            // Event-time forms: 2 hbar <= G(t_any) sqrt(dE_P^2 + E_P^2), hbar sqrt2 <= G(t_orth) dE_P.
            if (in.antipodal.triggered) {
                const double t = *in.antipodal.time;
                rep.margins.push_back(make("qac_any_state", 2.0 * hbar,
                                           ih->g_time_integral(t) * std::hypot(in.moments.spread, in.moments.energy),
                                           10.0 * tr.step * std::hypot(in.moments.spread, in.moments.energy) +
                                               hbar * tr.roundoff_floor(),
                                           t));
            } else {
                rep.margins.push_back(not_triggered("qac_any_state"));
            }
            if (in.orthogonal.triggered) {
                const double t = *in.orthogonal.time;
                rep.margins.push_back(make("qac_orthogonal", hbar * std::numbers::sqrt2,
                                           ih->g_time_integral(t) * in.moments.spread,
                                           10.0 * tr.step * in.moments.spread + hbar * tr.roundoff_floor(), t));
            } else {
                rep.margins.push_back(not_triggered("qac_orthogonal"));
            }

            // End-of-computation forms, applicable only when the final state is orthogonal / antipodal.
            const bool end_reached = std::abs(tr.horizon - T) <= 1e-12 * T;
            const double end_overlap = std::abs(tr.overlaps.back());
            const double end_gap = 2.0 - tr.distance_zero_beta(n - 1);
            const EventQuery defaults;
            if (end_reached && end_gap <= defaults.tolerance) {
                EventResult ev{.kind = EventKind::Antipodal, .triggered = true, .time = T, .bracket_width = tr.step};
                rep.margins.push_back(event_time_margin("qac_any_state_end", rep.characteristic.t_any, ev));
            } else {
                rep.margins.push_back(not_triggered("qac_any_state_end"));
            }
            if (end_reached && end_overlap <= defaults.tolerance) {
                EventResult ev{.kind = EventKind::Orthogonal, .triggered = true, .time = T, .bracket_width = tr.step};
                rep.margins.push_back(event_time_margin("qac_orthogonal_end", rep.characteristic.t_orth, ev));
            } else {
                rep.margins.push_back(not_triggered("qac_orthogonal_end"));
            }

            // rhs(t) = G(t) sqrt(dE_P^2 + (E_P - beta0)^2) for beta in {0, beta0 g}.
            for (const auto& track : tr.tracks) {
                if (track.policy.kind() == BetaPolicy::Kind::Constant) continue;
                const double rate = std::hypot(in.moments.spread, in.moments.energy - track.policy.beta0());
                double err = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    err = std::max(err, std::abs(track.rhs_integrals[k] - ih->g_time_integral(tr.times[k]) * rate));
                }
                rep.margins.push_back(make("reduction[" + track.policy.label() + "]", err,
                                           kReductionToleranceQac, 0.0));
            }
        } else {
            rep.diagnostics.push_back("extra h(t) H_E term present: only the general inequality is checked");
        }
    }

    // Integral forms at detected events, valid for any Hamiltonian.
    if (in.antipodal.triggered && zero_track) {
        const auto& track = tr.tracks[*zero_track];
        const double t = *in.antipodal.time;
        rep.margins.push_back(make("any_state_integral", 2.0 * hbar,
                                   interpolate(tr.times, track.rhs_integrals, t),
                                   tr.numerical_slack(*zero_track), t));
    } else {
        rep.margins.push_back(not_triggered("any_state_integral"));
    }
    for (std::size_t b = 0; b < tr.tracks.size(); ++b) {
        const std::string name = "orthogonal_integral[" + tr.tracks[b].policy.label() + "]";
        if (!in.orthogonal.triggered) {
            rep.margins.push_back(not_triggered(name));
            continue;
        }
        const double t = *in.orthogonal.time;
        rep.margins.push_back(make(name, hbar * std::numbers::sqrt2,
                                   interpolate(tr.times, tr.tracks[b].rhs_integrals, t),
                                   tr.numerical_slack(b), t));
    }

    for (const auto& note : in.orthogonal.notes) rep.diagnostics.push_back("orthogonal: " + note);
    for (const auto& note : in.antipodal.notes) rep.diagnostics.push_back("antipodal: " + note);
    return rep;
}

}  // namespace teur
