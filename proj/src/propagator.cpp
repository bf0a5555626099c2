#include "teur/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "teur/errors.hpp"

namespace teur {

namespace {

constexpr std::size_t kCheckpointBudget = std::size_t{1} << 20;  // stored amplitudes

const Complex kI(0.0, 1.0);

// One integration step of psi from t to t + h.
class Stepper {
public:
    Stepper(const Generator& gen, const IntegratorConfig& cfg) : gen_(gen), cfg_(cfg) {
        if (gen_.time_independent()) {
            const CMatrix h = gen_.at(0.0);
            if (cfg_.method == Method::MidpointExponential) {
                Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
                values_ = es.eigenvalues();
                vectors_ = es.eigenvectors();
            } else {
                constant_ = h;
            }
        }
    }

    CVector step(const CVector& psi, double t, double h) {
        const double hbar = cfg_.constants.hbar;
        if (cfg_.method == Method::MidpointExponential) {
            if (gen_.time_independent()) {
                if (h != cached_h_) {
                    unitary_ = exp_from(values_, vectors_, h / hbar);
                    cached_h_ = h;
                }
                return unitary_ * psi;
            }
            Eigen::SelfAdjointEigenSolver<CMatrix> es(gen_.at(t + 0.5 * h));
            return exp_from(es.eigenvalues(), es.eigenvectors(), h / hbar) * psi;
        }
        auto rhs = [&](double time, const CVector& v) -> CVector {
            if (gen_.time_independent()) return (-kI / hbar) * (constant_ * v);
            return (-kI / hbar) * (gen_.at(time) * v);
        };
        const CVector k1 = rhs(t, psi);
        const CVector k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
        const CVector k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
        const CVector k4 = rhs(t + h, psi + h * k3);
        return psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

private:
    // V exp(-i diag(lambda) s) V^dagger
    static CMatrix exp_from(const RVector& lambda, const CMatrix& v, double s) {
        CVector phases(lambda.size());
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            phases(i) = std::exp(Complex(0.0, -lambda(i) * s));
        }
        return v * phases.asDiagonal() * v.adjoint();
    }

    const Generator& gen_;
    const IntegratorConfig& cfg_;
    RVector values_;
    CMatrix vectors_;
    CMatrix constant_;
    CMatrix unitary_;
    double cached_h_ = -1.0;
};

// Matrices at the sample times, reusing the constant operator when possible.
CMatrix operator_at(const Generator& gen, const CMatrix& constant, double t) {
    return gen.time_independent() ? constant : gen.at(t);
}

double integrand(const CMatrix& h, double beta, const CVector& phi0) {
    return residual_norm(h, beta, phi0);
}

}  // namespace

// --- Generator -------------------------------------------------------------

Generator::Generator(HermitianOperator op) : h_(std::move(op)) {}
Generator::Generator(InterpolatedHamiltonian ih) : h_(std::move(ih)) {}

bool Generator::time_independent() const noexcept {
    return std::holds_alternative<HermitianOperator>(h_);
}

std::size_t Generator::dim() const noexcept {
    return std::visit([](const auto& h) { return h.dim(); }, h_);
}

CMatrix Generator::at(double t) const {
    if (const auto* op = std::get_if<HermitianOperator>(&h_)) return op->matrix();
    return std::get<InterpolatedHamiltonian>(h_).matrix_at(t);
}

const InterpolatedHamiltonian* Generator::interpolated() const noexcept {
    return std::get_if<InterpolatedHamiltonian>(&h_);
}

const HermitianOperator* Generator::constant() const noexcept {
    return std::get_if<HermitianOperator>(&h_);
}

// --- config ----------------------------------------------------------------

std::string to_string(Method m) {
    return m == Method::MidpointExponential ? "midpoint-exponential" : "rk4";
}

Method method_from_string(const std::string& s) {
    if (s == "midpoint-exponential" || s == "midpoint") return Method::MidpointExponential;
    if (s == "rk4") return Method::Rk4;
    throw InputError("unknown integration method '" + s + "'");
}

void IntegratorConfig::validate() const {
    constants.validate();
    if (dt && (!(*dt > 0.0) || !std::isfinite(*dt))) throw InputError("dt must be positive");
    if (!dt && steps == 0) throw InputError("steps must be positive");
    if (!(norm_tolerance > 0.0)) throw InputError("norm_tolerance must be positive");
}

std::size_t IntegratorConfig::steps_for(double horizon) const {
    if (dt) {
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(horizon / *dt - 1e-9)));
    }
    return steps;
}

// --- BetaPolicy ------------------------------------------------------------

BetaPolicy BetaPolicy::zero() { return {Kind::Zero, 0.0}; }

BetaPolicy BetaPolicy::constant(double beta0) {
    if (!std::isfinite(beta0)) throw InputError("BetaPolicy: non-finite beta0");
    return {Kind::Constant, beta0};
}

BetaPolicy BetaPolicy::schedule_proportional(double beta0) {
    if (!std::isfinite(beta0)) throw InputError("BetaPolicy: non-finite beta0");
    return {Kind::ScheduleProportional, beta0};
}

double BetaPolicy::value(const Generator& gen, double t) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return beta0_;
        case Kind::ScheduleProportional: {
            const auto* ih = gen.interpolated();
            if (!ih) {
                throw InputError("schedule-proportional beta requires an interpolated Hamiltonian");
            }
            return beta0_ * ih->g_at(t);
        }
    }
    return 0.0;
}

std::string BetaPolicy::label() const {
    std::ostringstream os;
    os.precision(6);
    switch (kind_) {
        case Kind::Zero: os << "beta0"; break;
        case Kind::Constant: os << "beta_const(" << beta0_ << ")"; break;
        case Kind::ScheduleProportional: os << "beta_g(" << beta0_ << ")"; break;
    }
    return os.str();
}

// --- Trajectory ------------------------------------------------------------

double Trajectory::roundoff_floor() const {
    const double steps = times.empty() ? 0.0 : static_cast<double>(times.size() - 1);
    return std::max(1e-12, 16.0 * steps * std::numeric_limits<double>::epsilon());
}

double Trajectory::numerical_slack(std::size_t track) const {
    return 10.0 * step * tracks.at(track).max_integrand + config.constants.hbar * roundoff_floor();
}

std::optional<std::size_t> Trajectory::find_track(const BetaPolicy& p) const {
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        if (tracks[i].policy == p) return i;
    }
    return std::nullopt;
}

double Trajectory::distance_zero_beta(std::size_t k) const {
    const double d2 = norms[k] * norms[k] + 1.0 - 2.0 * overlaps[k].real();
    return std::sqrt(std::max(0.0, d2));
}

// --- integration -----------------------------------------------------------

CVector advance(const Generator& gen, CVector psi, double t0, double t1,
                const IntegratorConfig& cfg, double max_step) {
    if (t1 <= t0) return psi;
    const auto n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((t1 - t0) / max_step - 1e-9)));
    const double h = (t1 - t0) / static_cast<double>(n);
    Stepper stepper(gen, cfg);
    for (std::size_t k = 0; k < n; ++k) {
        psi = stepper.step(psi, t0 + static_cast<double>(k) * h, h);
    }
    return psi;
}

Trajectory evolve(const Generator& gen, const StateVector& psi0, double horizon,
                  const IntegratorConfig& cfg, const std::vector<BetaPolicy>& betas) {
    cfg.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InputError("evolve: horizon must be positive");
    }
    if (psi0.dim() != gen.dim()) {
        throw InputError("evolve: state dimension " + std::to_string(psi0.dim()) +
                         " does not match Hamiltonian dimension " + std::to_string(gen.dim()));
    }
    if (const auto* ih = gen.interpolated(); ih && horizon > ih->total_time() * (1.0 + 1e-12)) {
        throw InputError("evolve: horizon exceeds the interpolation end time T");
    }
    for (const auto& b : betas) b.value(gen, 0.0);  // rejects unusable policies up front

    const double hbar = cfg.constants.hbar;
    const std::size_t n = cfg.steps_for(horizon);
    const double h = horizon / static_cast<double>(n);
    const CVector& phi0 = psi0.amplitudes();
    const CMatrix constant = gen.time_independent() ? gen.at(0.0) : CMatrix();

    Trajectory tr{.initial = psi0, .final_state = psi0, .config = cfg};
    tr.step = h;
    tr.horizon = horizon;
    tr.time_independent = gen.time_independent();
    tr.times.reserve(n + 1);
    tr.overlaps.reserve(n + 1);
    tr.survival.reserve(n + 1);
    tr.norms.reserve(n + 1);
    for (const auto& b : betas) {
        BetaTrack track{.policy = b};
        track.distances.reserve(n + 1);
        track.rhs_integrals.reserve(n + 1);
        track.beta_integrals.reserve(n + 1);
        track.integrands.reserve(n + 1);
        tr.tracks.push_back(std::move(track));
    }

    const std::size_t stride =
        std::max<std::size_t>(1, (psi0.dim() * (n + 1) + kCheckpointBudget - 1) / kCheckpointBudget);

    CVector psi = phi0;
    Stepper stepper(gen, cfg);
    // Integrand values at the current step boundary, per track.
    std::vector<double> left(betas.size());

    auto record = [&](std::size_t k, double t) {
        const Complex ov = psi.dot(phi0);
        const double nrm = psi.norm();
        tr.times.push_back(t);
        tr.overlaps.push_back(ov);
        tr.survival.push_back(std::norm(ov));
        tr.norms.push_back(nrm);
        for (auto& track : tr.tracks) {
            const double theta = track.beta_integrals.back();
            // Direct norm: the expanded form cancels catastrophically near d = 0.
            track.distances.push_back((psi - std::exp(Complex(0.0, -theta / hbar)) * phi0).norm());
        }
        if (k % stride == 0 || k == n) tr.checkpoints.push_back({k, psi});
    };

    {
        const CMatrix h0 = operator_at(gen, constant, 0.0);
        for (std::size_t b = 0; b < betas.size(); ++b) {
            auto& track = tr.tracks[b];
            left[b] = integrand(h0, betas[b].value(gen, 0.0), phi0);
            track.integrands.push_back(left[b]);
            track.rhs_integrals.push_back(0.0);
            track.beta_integrals.push_back(0.0);
            track.max_integrand = left[b];
        }
        record(0, 0.0);
    }

    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * h;
        const double t_next = (k + 1 == n) ? horizon : static_cast<double>(k + 1) * h;
        psi = stepper.step(psi, t, h);

        const double nrm = psi.norm();
        if (std::abs(nrm - 1.0) > cfg.norm_tolerance) {
            std::ostringstream os;
            os << "norm drift " << std::abs(nrm - 1.0) << " exceeds tolerance "
               << cfg.norm_tolerance << " at t = " << t_next;
            throw IntegrationError(os.str(), t_next);
        }

        if (!betas.empty()) {
            const double tm = t + 0.5 * h;
            const CMatrix hm = operator_at(gen, constant, tm);
            const CMatrix hr = operator_at(gen, constant, t_next);
            for (std::size_t b = 0; b < betas.size(); ++b) {
                auto& track = tr.tracks[b];
                const double bl = betas[b].value(gen, t);
                const double bm = betas[b].value(gen, tm);
                const double br = betas[b].value(gen, t_next);
                const double mid = integrand(hm, bm, phi0);
                const double right = integrand(hr, br, phi0);
                // Simpson on [t, t + h] using the midpoint sample.
                track.rhs_integrals.push_back(track.rhs_integrals.back() +
                                              h / 6.0 * (left[b] + 4.0 * mid + right));
                track.beta_integrals.push_back(track.beta_integrals.back() +
                                               h / 6.0 * (bl + 4.0 * bm + br));
                track.integrands.push_back(right);
                track.max_integrand = std::max({track.max_integrand, mid, right});
                left[b] = right;
            }
        }
        record(k + 1, t_next);
    }

    tr.final_state = StateVector::normalize(psi);
    return tr;
}

CVector state_at(const Trajectory& traj, const Generator& gen, double t) {
    if (!(t >= 0.0 && t <= traj.horizon)) throw InputError("state_at: t outside the trajectory");
    if (gen.dim() != traj.initial.dim()) throw InputError("state_at: dimension mismatch");
    const Trajectory::Checkpoint* best = &traj.checkpoints.front();
    for (const auto& cp : traj.checkpoints) {
        if (traj.times[cp.index] <= t) best = &cp;
        else break;
    }
    return advance(gen, best->state, traj.times[best->index], t, traj.config, traj.step);
}

ConvergenceResult convergence_order(const Generator& gen, const StateVector& psi0,
                                    double horizon, const IntegratorConfig& cfg) {
    cfg.validate();
    const double base = horizon / static_cast<double>(cfg.steps_for(horizon));
    const CVector reference = advance(gen, psi0.amplitudes(), 0.0, horizon, cfg, base / 16.0);

    ConvergenceResult res;
    res.reference_survival = std::norm(reference.dot(psi0.amplitudes()));
    double scale = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const CVector psi = advance(gen, psi0.amplitudes(), 0.0, horizon, cfg, base / scale);
        res.errors[i] = (psi - reference).norm();
        res.survival[i] = std::norm(psi.dot(psi0.amplitudes()));
        scale *= 2.0;
    }
    // Differences at round-off level mean each step is already exact.
    if (*std::max_element(res.errors.begin(), res.errors.end()) < 1e-11) {
        res.exact = true;
        return res;
    }
    res.order = std::log2(res.errors[0] / res.errors[2]) / 2.0;
    return res;
}

}  // namespace teur
