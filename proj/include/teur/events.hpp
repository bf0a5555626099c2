#pragma once

// Detection and refinement of the first orthogonality and antipodal times.

#include <optional>
#include <string>
#include <vector>

#include "teur/propagator.hpp"

namespace teur {

enum class EventKind { Orthogonal, Antipodal };

std::string to_string(EventKind k);

struct EventQuery {
    EventKind kind = EventKind::Orthogonal;
    /// Orthogonal: |<psi|phi_0>| <= tolerance. Antipodal: 2 - d(t, 0) <= tolerance.
    double tolerance = 1e-6;
    int refine_iterations = 60;

    void validate() const;
};

struct EventResult {
    EventKind kind = EventKind::Orthogonal;
    bool triggered = false;
    std::optional<double> time;
    std::optional<double> bracket_width;
    /// Smallest detection functional seen (|overlap| or 2 - d).
    double functional_value = 0.0;
    /// sup d(t, 0) over the horizon (antipodal queries only).
    double peak_distance = 0.0;
    /// Bracket width after each refinement iteration of the triggering candidate.
    std::vector<double> bracket_history;
    std::vector<std::string> notes;
};

EventResult first_orthogonal(const Trajectory& traj, const Generator& gen,
                             EventQuery q = {EventKind::Orthogonal});
EventResult first_antipodal(const Trajectory& traj, const Generator& gen,
                            EventQuery q = {EventKind::Antipodal});

/// Dispatches on q.kind.
EventResult find_event(const Trajectory& traj, const Generator& gen, const EventQuery& q);

}  // namespace teur
