#include "teur/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "teur/errors.hpp"

namespace teur {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kNarrowCrossingLevel = 1e-3;

double functional(EventKind kind, const CVector& psi, const CVector& phi0) {
    const Complex ov = psi.dot(phi0);
    if (kind == EventKind::Orthogonal) return std::abs(ov);
    const double d2 = psi.squaredNorm() + 1.0 - 2.0 * ov.real();
    return 2.0 - std::sqrt(std::max(0.0, d2));
}

double sample_functional(EventKind kind, const Trajectory& traj, std::size_t k) {
    if (kind == EventKind::Orthogonal) return std::abs(traj.overlaps[k]);
    return 2.0 - traj.distance_zero_beta(k);
}

// Bound on |dF/dt| * hbar at time t: for |overlap| any shift works, the
// energy spread is the smallest; for the beta = 0 distance it is ||H phi_0||.
double rate_bound(EventKind kind, const CMatrix& h, const CVector& phi0) {
    const CVector hp = h * phi0;
    if (kind == EventKind::Antipodal) return hp.norm();
    const double e = phi0.dot(hp).real();
    return (hp - e * phi0).norm();
}

struct Refined {
    double time;
    double value;
    double width;
    std::vector<double> history;
};

// Golden-section minimization of the functional on [a, b] with re-integration.
Refined refine(const Trajectory& traj, const Generator& gen, EventKind kind, double a, double b,
               const EventQuery& q) {
    const CVector& phi0 = traj.initial.amplitudes();
    auto eval = [&](double t) { return functional(kind, state_at(traj, gen, t), phi0); };
    const double target = traj.horizon * 1e-9;

    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    Refined r{.time = 0.0, .value = 0.0, .width = b - a, .history = {}};
    for (int it = 0; it < q.refine_iterations && (b - a) > target; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = eval(d);
        }
        r.history.push_back(b - a);
    }
    if (fc <= fd) {
        r.time = c;
        r.value = fc;
    } else {
        r.time = d;
        r.value = fd;
    }
    r.width = b - a;
    return r;
}

EventResult detect(const Trajectory& traj, const Generator& gen, const EventQuery& q) {
    q.validate();
    if (gen.dim() != traj.initial.dim()) throw InputError("event detection: dimension mismatch");

    EventResult res;
    res.kind = q.kind;
    const std::size_t n = traj.size();
    const CVector& phi0 = traj.initial.amplitudes();
    const double hbar = traj.config.constants.hbar;

    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = sample_functional(q.kind, traj, k);

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < n; ++k) best = std::min(best, f[k]);
    if (q.kind == EventKind::Antipodal) {
        for (std::size_t k = 0; k < n; ++k) res.peak_distance = std::max(res.peak_distance, 2.0 - f[k]);
    }

    const CMatrix constant = traj.time_independent ? gen.at(0.0) : CMatrix();
    const double constant_rate = traj.time_independent ? rate_bound(q.kind, constant, phi0) : 0.0;
    auto rate_at = [&](std::size_t k) {
        return traj.time_independent ? constant_rate : rate_bound(q.kind, gen.at(traj.times[k]), phi0);
    };

    for (std::size_t k = 1; k < n; ++k) {
        const bool left_ok = f[k] <= f[k - 1];
        const bool right_ok = (k + 1 == n) || f[k] <= f[k + 1];
        if (!left_ok || !right_ok) continue;
        const std::size_t hi = std::min(k + 1, n - 1);
        const double rate = std::max(rate_at(k - 1), rate_at(hi));
        const double threshold = q.tolerance + traj.step * rate / hbar;
        if (f[k] > threshold) continue;

        Refined r = refine(traj, gen, q.kind, traj.times[k - 1], traj.times[hi], q);
        if (f[k] < r.value) {
            r.value = f[k];
            r.time = traj.times[k];
        }
        best = std::min(best, r.value);
        if (q.kind == EventKind::Antipodal) {
            res.peak_distance = std::max(res.peak_distance, 2.0 - r.value);
        }
        if (r.value <= q.tolerance) {
            res.triggered = true;
            res.time = r.time;
            res.bracket_width = r.width;
            res.functional_value = r.value;
            res.bracket_history = std::move(r.history);
            return res;
        }
    }

    res.functional_value = best;
    if (q.kind == EventKind::Orthogonal && best < kNarrowCrossingLevel) {
        std::ostringstream os;
        os << "minimum |overlap| " << best << " lies between the tolerance and "
           << kNarrowCrossingLevel << "; a crossing narrower than the step may have been missed";
        res.notes.push_back(os.str());
    }
    return res;
}

}  // namespace

std::string to_string(EventKind k) { return k == EventKind::Orthogonal ? "orthogonal" : "antipodal"; }

void EventQuery::validate() const {
    if (!(tolerance > 0.0)) throw InputError("EventQuery: tolerance must be positive");
    if (refine_iterations < 0) throw InputError("EventQuery: refine_iterations must be >= 0");
}

EventResult first_orthogonal(const Trajectory& traj, const Generator& gen, EventQuery q) {
    q.kind = EventKind::Orthogonal;
    return detect(traj, gen, q);
}

EventResult first_antipodal(const Trajectory& traj, const Generator& gen, EventQuery q) {
    q.kind = EventKind::Antipodal;
    return detect(traj, gen, q);
}

EventResult find_event(const Trajectory& traj, const Generator& gen, const EventQuery& q) {
    return detect(traj, gen, q);
}

}  // namespace teur
