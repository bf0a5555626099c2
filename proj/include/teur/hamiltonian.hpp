#pragma once

// Hamiltonian builders: transverse-field driver, Ising problem operators,
// random ensembles and the interpolated time-dependent Hamiltonian.

#include <cstdint>
#include <optional>
#include <vector>

#include "teur/qstate.hpp"
#include "teur/schedule.hpp"

namespace teur {

struct IsingInstance {
    struct Coupling {
        std::size_t i;
        std::size_t j;
        double J;
    };
    struct Field {
        std::size_t i;
        double h;
    };

    std::size_t n = 0;
    std::vector<Coupling> couplings;
    std::vector<Field> fields;

    /// Rejects out-of-range or unordered indices, duplicate pairs and
    /// qubit counts whose Hilbert space exceeds the cap.
    void validate(std::size_t cap = kDefaultDimensionCap) const;
};

/// Largest qubit count whose Hilbert space fits within cap.
std::size_t max_qubits(std::size_t cap = kDefaultDimensionCap);

/// sum_i (1 - sigma_x^i) / 2. Ground state is the uniform superposition with energy 0.
HermitianOperator transverse_initial(std::size_t n, std::size_t cap = kDefaultDimensionCap);

/// sum J_ij Z_i Z_j + sum h_i Z_i, diagonal in the computational basis.
/// Qubit 0 is the most significant bit of the basis index; |0> has Z = +1.
HermitianOperator ising_problem(const IsingInstance& inst);

/// op - lambda_min * 1
HermitianOperator shift_ground_to_zero(const HermitianOperator& op);

/// GUE sample (M + M^dagger)/2 with M having i.i.d. standard complex Gaussian entries.
HermitianOperator random_hermitian(std::size_t dim, std::uint64_t seed);

/// Haar-random pure state from a normalized complex Gaussian vector.
StateVector random_state(std::size_t dim, std::uint64_t seed);

/// H(t) = f(t/T) H_I + g(t/T) H_P [+ h(t/T) H_E]
class InterpolatedHamiltonian {
public:
    InterpolatedHamiltonian(HermitianOperator initial, HermitianOperator problem,
                            Schedule schedule, double total_time,
                            std::optional<HermitianOperator> extra = std::nullopt);

    const HermitianOperator& initial() const noexcept { return initial_; }
    const HermitianOperator& problem() const noexcept { return problem_; }
    const std::optional<HermitianOperator>& extra() const noexcept { return extra_; }
    const Schedule& schedule() const noexcept { return schedule_; }
    double total_time() const noexcept { return total_time_; }
    std::size_t dim() const noexcept { return initial_.dim(); }

    /// Throws InputError for t outside [0, T].
    HermitianOperator evaluate(double t) const;
    /// Unchecked fast path used by the integrators.
    CMatrix matrix_at(double t) const;

    /// g(t/T)
    double g_at(double t) const;
    /// Integral of g(tau/T) over [0, t] in time units.
    double g_time_integral(double t) const;

private:
    double clamp_tau(double t) const;

    HermitianOperator initial_;
    HermitianOperator problem_;
    std::optional<HermitianOperator> extra_;
    Schedule schedule_;
    double total_time_;
};

HermitianOperator evaluate(const InterpolatedHamiltonian& ih, double t);

}  // namespace teur
