#include "teur/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "teur/errors.hpp"

namespace teur {

namespace {

void check_dim(std::size_t dim, std::size_t cap, const char* what) {
    if (dim < 2) {
        throw InputError(std::string(what) + ": dimension must be at least 2, got " +
                         std::to_string(dim));
    }
    if (dim > cap) {
        throw InputError(std::string(what) + ": dimension " + std::to_string(dim) +
                         " exceeds cap " + std::to_string(cap));
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw InputError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

void PhysicalConstants::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw InputError("hbar must be positive and finite");
    }
}

StateVector::StateVector(CVector amplitudes, std::size_t cap) : amps_(std::move(amplitudes)) {
    check_dim(dim(), cap, "StateVector");
    const double n2 = amps_.squaredNorm();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTolerance) {
        throw InputError("StateVector: amplitudes are not normalized (|psi|^2 = " +
                         std::to_string(n2) + ")");
    }
}

StateVector StateVector::normalize(const CVector& amplitudes, std::size_t cap) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InputError("StateVector::normalize: zero or non-finite vector");
    }
    return StateVector(amplitudes / n, cap);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw InputError("StateVector::basis: index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::uniform(std::size_t dim) {
    CVector v = CVector::Constant(static_cast<Eigen::Index>(dim),
                                  Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
    return StateVector::normalize(v);
}

HermitianOperator::HermitianOperator(const CMatrix& entries, std::size_t cap) {
    if (entries.rows() != entries.cols()) {
        throw InputError("HermitianOperator: matrix is not square");
    }
    check_dim(static_cast<std::size_t>(entries.rows()), cap, "HermitianOperator");
    if (!entries.allFinite()) {
        throw InputError("HermitianOperator: non-finite entries");
    }
    const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermiticityTolerance * scale) {
        throw InputError("HermitianOperator: matrix is not Hermitian (max |A - A^dagger| = " +
                         std::to_string(asym) + ")");
    }
    m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                              static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    }
    return HermitianOperator(m);
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return HermitianOperator(CMatrix::Zero(n, n));
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return HermitianOperator(CMatrix::Identity(n, n));
}

Spectrum diagonalize(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(op.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "inner_product");
    return a.amplitudes().dot(b.amplitudes());
}

double distance(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "distance");
    const double d2 = 2.0 - 2.0 * inner_product(a, b).real();
    return std::sqrt(std::clamp(d2, 0.0, 4.0));
}

double expectation(const HermitianOperator& op, const StateVector& s) {
    require_same_dim(op.dim(), s.dim(), "expectation");
    const Complex e = s.amplitudes().dot(op.matrix() * s.amplitudes());
    // Imaginary part is round-off for a Hermitian operator.
    if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e))) {
        throw std::logic_error("expectation: imaginary residual exceeds 1e-10");
    }
    return e.real();
}

double energy_spread(const HermitianOperator& op, const StateVector& s) {
    require_same_dim(op.dim(), s.dim(), "energy_spread");
    const CVector hs = op.matrix() * s.amplitudes();
    const double h2 = hs.squaredNorm();
    const double h1 = s.amplitudes().dot(hs).real();
    return std::sqrt(std::max(0.0, h2 - h1 * h1));
}

double residual_norm(const HermitianOperator& op, double shift, const StateVector& s) {
    require_same_dim(op.dim(), s.dim(), "residual_norm");
    return residual_norm(op.matrix(), shift, s.amplitudes());
}

double residual_norm(const CMatrix& op, double shift, const CVector& s) {
    return (op * s - shift * s).norm();
}

MomentPair moments(const HermitianOperator& op, const StateVector& s) {
    return {expectation(op, s), energy_spread(op, s)};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    const auto na = a.amplitudes().size();
    const auto nb = b.amplitudes().size();
    CVector out(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        out.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
    }
    return StateVector::normalize(out);
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    const auto na = static_cast<Eigen::Index>(a.dim());
    const auto nb = static_cast<Eigen::Index>(b.dim());
    CMatrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
        }
    }
    return HermitianOperator(out);
}

}  // namespace teur
