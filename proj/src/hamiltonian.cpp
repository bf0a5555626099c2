#include "teur/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "teur/errors.hpp"

namespace teur {

namespace {

// Distinct streams for operators and states drawn from the same seed.
enum class Stream : std::uint32_t { Operator = 0x6775u, State = 0x7073u };

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

Complex standard_complex_normal(std::mt19937_64& rng) {
    // E|z|^2 = 1
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

double spin_of(std::size_t index, std::size_t qubit, std::size_t n) {
    return ((index >> (n - 1 - qubit)) & 1u) ? -1.0 : 1.0;
}

}  // namespace

std::size_t max_qubits(std::size_t cap) {
    std::size_t n = 0;
    while ((std::size_t{1} << (n + 1)) <= cap) ++n;
    return n;
}

void IsingInstance::validate(std::size_t cap) const {
    if (n < 1 || n > max_qubits(cap)) {
        throw InputError("IsingInstance: qubit count " + std::to_string(n) +
                         " outside [1, " + std::to_string(max_qubits(cap)) + "]");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < couplings.size(); ++k) {
        const auto& c = couplings[k];
        if (!(c.i < c.j) || c.j >= n) {
            throw InputError("IsingInstance: coupling " + std::to_string(k) +
                             " needs 0 <= i < j < n, got (" + std::to_string(c.i) + ", " +
                             std::to_string(c.j) + ")");
        }
        if (!std::isfinite(c.J)) {
            throw InputError("IsingInstance: coupling " + std::to_string(k) + " is not finite");
        }
        if (!seen.emplace(c.i, c.j).second) {
            throw InputError("IsingInstance: duplicate coupling (" + std::to_string(c.i) + ", " +
                             std::to_string(c.j) + ")");
        }
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (fields[k].i >= n) {
            throw InputError("IsingInstance: field " + std::to_string(k) + " index " +
                             std::to_string(fields[k].i) + " out of range");
        }
        if (!std::isfinite(fields[k].h)) {
            throw InputError("IsingInstance: field " + std::to_string(k) + " is not finite");
        }
    }
}

HermitianOperator transverse_initial(std::size_t n, std::size_t cap) {
    if (n < 1 || n > max_qubits(cap)) {
        throw InputError("transverse_initial: qubit count " + std::to_string(n) +
                         " outside [1, " + std::to_string(max_qubits(cap)) + "]");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        m(s, s) = 0.5 * static_cast<double>(n);
        for (std::size_t q = 0; q < n; ++q) {
            m(s, s ^ (Eigen::Index{1} << q)) = -0.5;
        }
    }
    return HermitianOperator(m, cap);
}

HermitianOperator ising_problem(const IsingInstance& inst) {
    inst.validate();
    const std::size_t dim = std::size_t{1} << inst.n;
    std::vector<double> diag(dim, 0.0);
    for (std::size_t s = 0; s < dim; ++s) {
        double e = 0.0;
        for (const auto& c : inst.couplings) {
            e += c.J * spin_of(s, c.i, inst.n) * spin_of(s, c.j, inst.n);
        }
        for (const auto& f : inst.fields) {
            e += f.h * spin_of(s, f.i, inst.n);
        }
        diag[s] = e;
    }
    return HermitianOperator::diagonal(diag);
}

HermitianOperator shift_ground_to_zero(const HermitianOperator& op) {
    const double lambda_min = diagonalize(op).values(0);
    const auto n = static_cast<Eigen::Index>(op.dim());
    return HermitianOperator(op.matrix() - lambda_min * CMatrix::Identity(n, n));
}

HermitianOperator random_hermitian(std::size_t dim, std::uint64_t seed) {
    if (dim < 2 || dim > kDefaultDimensionCap) {
        throw InputError("random_hermitian: dimension out of range");
    }
    auto rng = make_engine(seed, Stream::Operator);
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = standard_complex_normal(rng);
    }
    return HermitianOperator(0.5 * (m + m.adjoint()));
}

StateVector random_state(std::size_t dim, std::uint64_t seed) {
    if (dim < 2 || dim > kDefaultDimensionCap) {
        throw InputError("random_state: dimension out of range");
    }
    auto rng = make_engine(seed, Stream::State);
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = standard_complex_normal(rng);
    return StateVector::normalize(v);
}

InterpolatedHamiltonian::InterpolatedHamiltonian(HermitianOperator initial,
                                                 HermitianOperator problem, Schedule schedule,
                                                 double total_time,
                                                 std::optional<HermitianOperator> extra)
    : initial_(std::move(initial)),
      problem_(std::move(problem)),
      extra_(std::move(extra)),
      schedule_(std::move(schedule)),
      total_time_(total_time) {
    if (!(total_time_ > 0.0) || !std::isfinite(total_time_)) {
        throw InputError("InterpolatedHamiltonian: total time must be positive");
    }
    if (initial_.dim() != problem_.dim()) {
        throw InputError("InterpolatedHamiltonian: H_I and H_P dimensions differ");
    }
    if (extra_ && extra_->dim() != initial_.dim()) {
        throw InputError("InterpolatedHamiltonian: H_E dimension differs");
    }
    if (extra_ && !schedule_.has_extra_term()) {
        throw InputError("InterpolatedHamiltonian: H_E given but the schedule has no h profile");
    }
}

double InterpolatedHamiltonian::clamp_tau(double t) const {
    return std::clamp(t / total_time_, 0.0, 1.0);
}

HermitianOperator InterpolatedHamiltonian::evaluate(double t) const {
    if (!(t >= 0.0 && t <= total_time_)) {
        throw InputError("InterpolatedHamiltonian::evaluate: t outside [0, T]");
    }
    return HermitianOperator(matrix_at(t));
}

CMatrix InterpolatedHamiltonian::matrix_at(double t) const {
    const double tau = clamp_tau(t);
    CMatrix m = schedule_.f(tau) * initial_.matrix() + schedule_.g(tau) * problem_.matrix();
    if (extra_) m += schedule_.h(tau) * extra_->matrix();
    return m;
}

double InterpolatedHamiltonian::g_at(double t) const { return schedule_.g(clamp_tau(t)); }

double InterpolatedHamiltonian::g_time_integral(double t) const {
    return total_time_ * schedule_.integral(clamp_tau(t));
}

HermitianOperator evaluate(const InterpolatedHamiltonian& ih, double t) { return ih.evaluate(t); }

}  // namespace teur
