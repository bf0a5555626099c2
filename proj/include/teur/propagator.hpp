#pragma once

// Fixed-step integration of i hbar d/dt |psi> = H(t) |psi> with the
// observables the time-energy bounds are checked against.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "teur/hamiltonian.hpp"
#include "teur/qstate.hpp"

namespace teur {

/// Either a constant operator or an interpolated one; what the propagator integrates.
class Generator {
public:
    Generator(HermitianOperator op);             // NOLINT(google-explicit-constructor)
    Generator(InterpolatedHamiltonian ih);       // NOLINT(google-explicit-constructor)

    bool time_independent() const noexcept;
    std::size_t dim() const noexcept;
    CMatrix at(double t) const;

    /// Null for a constant operator.
    const InterpolatedHamiltonian* interpolated() const noexcept;
    /// Null for an interpolated Hamiltonian.
    const HermitianOperator* constant() const noexcept;

private:
    std::variant<HermitianOperator, InterpolatedHamiltonian> h_;
};

enum class Method { MidpointExponential, Rk4 };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct IntegratorConfig {
    Method method = Method::MidpointExponential;
    /// Explicit step; when empty the step is horizon / steps.
    std::optional<double> dt;
    std::size_t steps = 2000;
    double norm_tolerance = 1e-9;
    PhysicalConstants constants;

    void validate() const;
    std::size_t steps_for(double horizon) const;
};

/// Reference-phase function beta(t) for the comparison state
/// |phi(t)> = exp(-i int beta / hbar) |phi_0>.
class BetaPolicy {
public:
    enum class Kind { Zero, Constant, ScheduleProportional };

    static BetaPolicy zero();
    static BetaPolicy constant(double beta0);
    /// beta(t) = beta0 * g(t/T); only valid with an interpolated Hamiltonian.
    static BetaPolicy schedule_proportional(double beta0);

    Kind kind() const noexcept { return kind_; }
    double beta0() const noexcept { return beta0_; }
    double value(const Generator& gen, double t) const;
    std::string label() const;

    friend bool operator==(const BetaPolicy&, const BetaPolicy&) = default;

private:
    BetaPolicy(Kind k, double b) : kind_(k), beta0_(b) {}
    Kind kind_;
    double beta0_;
};

struct BetaTrack {
    BetaPolicy policy;
    std::vector<double> distances;      // d(t, beta)
    std::vector<double> rhs_integrals;  // int_0^t ||(H - beta)|phi_0>||
    std::vector<double> beta_integrals; // int_0^t beta
    std::vector<double> integrands;     // ||(H(t) - beta(t))|phi_0>|| at each sample
    double max_integrand = 0.0;
};

struct Trajectory {
    struct Checkpoint {
        std::size_t index;
        CVector state;
    };

    std::vector<double> times;
    std::vector<Complex> overlaps;  // <psi(t)|phi_0>
    std::vector<double> survival;   // |<psi(t)|phi_0>|^2
    std::vector<double> norms;
    std::vector<BetaTrack> tracks;
    StateVector initial;
    StateVector final_state;
    IntegratorConfig config;
    double step = 0.0;
    double horizon = 0.0;
    bool time_independent = true;
    std::vector<Checkpoint> checkpoints;

    std::size_t size() const noexcept { return times.size(); }
    /// Accumulated floating-point error allowance, max(1e-12, 16 n eps).
    double roundoff_floor() const;
    /// 10 * dt * max integrand for the given track, plus hbar * roundoff_floor().
    double numerical_slack(std::size_t track) const;
    /// Index of the first track with this policy, if any.
    std::optional<std::size_t> find_track(const BetaPolicy& p) const;
    /// d(t, beta = 0) at sample k, independent of the configured tracks.
    double distance_zero_beta(std::size_t k) const;
};

Trajectory evolve(const Generator& gen, const StateVector& psi0, double horizon,
                  const IntegratorConfig& cfg, const std::vector<BetaPolicy>& betas);

/// Integrates from t0 to t1 with a uniform step no larger than max_step.
CVector advance(const Generator& gen, CVector psi, double t0, double t1,
                const IntegratorConfig& cfg, double max_step);

/// Re-integrates from the nearest stored checkpoint to reach time t.
CVector state_at(const Trajectory& traj, const Generator& gen, double t);

struct ConvergenceResult {
    bool exact = false;
    /// Least-squares order over dt, dt/2, dt/4; empty when exact.
    std::optional<double> order;
    std::array<double, 3> errors{};
    std::array<double, 3> survival{};
    double reference_survival = 0.0;
};

ConvergenceResult convergence_order(const Generator& gen, const StateVector& psi0,
                                    double horizon, const IntegratorConfig& cfg);

}  // namespace teur
