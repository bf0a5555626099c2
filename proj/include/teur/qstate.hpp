#pragma once

// Dense state and operator algebra over a finite Hilbert space.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace teur {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr std::size_t kDefaultDimensionCap = 4096;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermiticityTolerance = 1e-12;

struct PhysicalConstants {
    double hbar = 1.0;

    /// Throws InputError unless hbar is positive and finite.
    void validate() const;
};

/// Normalized pure state. The norm invariant is enforced at construction.
class StateVector {
public:
    /// Amplitudes must already be normalized to within kNormTolerance.
    explicit StateVector(CVector amplitudes, std::size_t cap = kDefaultDimensionCap);

    /// Rescales to unit norm. Rejects the zero vector.
    static StateVector normalize(const CVector& amplitudes,
                                 std::size_t cap = kDefaultDimensionCap);
    static StateVector basis(std::size_t dim, std::size_t index);
    static StateVector uniform(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

private:
    CVector amps_;
};

/// Dense self-adjoint matrix. Hermiticity is checked once at construction and
/// the stored matrix is the exact Hermitian part of the input.
class HermitianOperator {
public:
    explicit HermitianOperator(const CMatrix& entries, std::size_t cap = kDefaultDimensionCap);

    static HermitianOperator diagonal(const std::vector<double>& values);
    static HermitianOperator zero(std::size_t dim);
    static HermitianOperator identity(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix& matrix() const noexcept { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

private:
    CMatrix m_;
};

struct Spectrum {
    RVector values;   // ascending
    CMatrix vectors;  // columns are eigenvectors
};

Spectrum diagonalize(const HermitianOperator& op);

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// || |a> - |b> || = sqrt(2 - 2 Re<a|b>) for normalized states.
double distance(const StateVector& a, const StateVector& b);

double expectation(const HermitianOperator& op, const StateVector& s);

/// sqrt(<H^2> - <H>^2), negative round-off clamped to zero.
double energy_spread(const HermitianOperator& op, const StateVector& s);

/// || (op - shift) |s> ||
double residual_norm(const HermitianOperator& op, double shift, const StateVector& s);

/// Same as above for a raw matrix that the caller guarantees is Hermitian.
double residual_norm(const CMatrix& op, double shift, const CVector& s);

struct MomentPair {
    double energy = 0.0;
    double spread = 0.0;
};

MomentPair moments(const HermitianOperator& op, const StateVector& s);

StateVector tensor(const StateVector& a, const StateVector& b);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace teur
