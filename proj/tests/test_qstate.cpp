#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "teur/errors.hpp"
#include "teur/hamiltonian.hpp"
#include "teur/qstate.hpp"

using namespace teur;

namespace {

const double r2 = 1.0 / std::numbers::sqrt2;

StateVector sv(std::initializer_list<Complex> a) {
    CVector v(static_cast<Eigen::Index>(a.size()));
    Eigen::Index i = 0;
    for (auto c : a) v(i++) = c;
    return StateVector(v);
}

}  // namespace

TEST_CASE("inner_product") {
    const StateVector psi = random_state(5, 3);
    const Complex self = inner_product(psi, psi);
    CHECK(self.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(self.imag()) < 1e-15);

    CHECK(std::abs(inner_product(StateVector::basis(3, 0), StateVector::basis(3, 1))) == 0.0);

    // a = (1, i)/sqrt2, b = (1, 1)/sqrt2: conj(a).b = (1 - i)/2
    const Complex ab = inner_product(sv({r2, Complex(0, r2)}), sv({r2, r2}));
    CHECK(ab.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ab.imag() == doctest::Approx(-0.5).epsilon(1e-15));

    CHECK_THROWS_AS(inner_product(StateVector::basis(2, 0), StateVector::basis(3, 0)), InputError);
}

TEST_CASE("distance") {
    const StateVector a = random_state(4, 11);
    CHECK(distance(a, a) == doctest::Approx(0.0));
    CHECK(distance(StateVector::basis(2, 0), StateVector::basis(2, 1)) == doctest::Approx(std::numbers::sqrt2));
    const StateVector neg(-a.amplitudes());
    CHECK(distance(a, neg) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(distance(StateVector::basis(2, 0), StateVector::basis(4, 0)), InputError);
}

TEST_CASE("distance and overlap satisfy d^2 + 2 Re<a|b> = 2") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const StateVector a = random_state(2 + s % 7, s);
        const StateVector b = random_state(2 + s % 7, s + 1000);
        const double d = distance(a, b);
        CHECK(d * d + 2.0 * inner_product(a, b).real() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(d >= 0.0);
        CHECK(d <= 2.0);
    }
}

TEST_CASE("expectation") {
    const auto h = HermitianOperator::diagonal({0.0, 3.0});
    CHECK(expectation(h, StateVector::basis(2, 1)) == doctest::Approx(3.0));

    const double E = 2.5;
    const auto two = HermitianOperator::diagonal({0.0, E});
    CHECK(expectation(two, sv({r2, r2})) == doctest::Approx(E / 2));

    oracle::Sampler rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const HermitianOperator op(rng.hermitian(4));
        const StateVector s(rng.state(4));
        const Complex want = oracle::triple_sum(op.matrix(), s.amplitudes());
        CHECK(std::abs(expectation(op, s) - want.real()) < 1e-12);
    }
    CHECK_THROWS_AS(expectation(two, StateVector::basis(3, 0)), InputError);
}

TEST_CASE("energy spread") {
    const auto op = HermitianOperator::diagonal({-1.0, 0.5, 4.0});
    CHECK(energy_spread(op, StateVector::basis(3, 2)) == 0.0);

    const double E = 1.7;
    CHECK(energy_spread(HermitianOperator::diagonal({0.0, E}), sv({r2, r2})) == doctest::Approx(E / 2));

    oracle::Sampler rng(8);
    for (int rep = 0; rep < 20; ++rep) {
        const HermitianOperator h(rng.hermitian(8));
        const StateVector s(rng.state(8));
        const auto want = oracle::spectral_moments(h.matrix(), s.amplitudes());
        CHECK(std::abs(energy_spread(h, s) - want.spread) < 1e-10);
        CHECK(std::abs(expectation(h, s) - want.mean) < 1e-10);
    }
}

TEST_CASE("moments agree with the eigenbasis oracle for every dimension up to 8") {
    oracle::Sampler rng(99);
    for (Eigen::Index n = 2; n <= 8; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const HermitianOperator h(rng.hermitian(n));
            const StateVector s(rng.state(n));
            const auto want = oracle::spectral_moments(h.matrix(), s.amplitudes());
            const auto got = moments(h, s);
            CHECK(std::abs(got.energy - want.mean) < 1e-10);
            CHECK(std::abs(got.spread - want.spread) < 1e-10);
        }
    }
}

TEST_CASE("residual norm") {
    const StateVector plus = sv({r2, r2});
    const auto h = HermitianOperator::diagonal({0.0, 1.0});
    CHECK(residual_norm(h, 0.0, plus) == doctest::Approx(r2));

    const HermitianOperator g = random_hermitian(6, 4);
    const StateVector s = random_state(6, 4);
    const auto m = moments(g, s);
    CHECK(residual_norm(g, m.energy, s) == doctest::Approx(m.spread).epsilon(1e-12));
    CHECK(residual_norm(g, 0.0, s) == doctest::Approx(std::hypot(m.spread, m.energy)).epsilon(1e-12));
    CHECK_THROWS_AS(residual_norm(h, 0.0, StateVector::basis(3, 0)), InputError);
}

TEST_CASE("residual norm decomposes into spread and shift") {
    oracle::Sampler rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index n = 2 + rep % 7;
        const HermitianOperator h(rng.hermitian(n));
        const StateVector s(rng.state(n));
        const double shift = rng.uniform(-3.0, 3.0);
        const auto m = moments(h, s);
        const double r = residual_norm(h, shift, s);
        CHECK(std::abs(r * r - (m.spread * m.spread + (m.energy - shift) * (m.energy - shift))) < 1e-10);
    }
}

TEST_CASE("residual norm is minimized at the mean energy") {
    oracle::Sampler rng(6);
    int strict = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index n = 2 + rep % 7;
        const HermitianOperator h(rng.hermitian(n));
        const StateVector s(rng.state(n));
        const double e0 = expectation(h, s);
        double delta = rng.uniform(-2.0, 2.0);
        if (std::abs(delta) < 1e-3) delta = 1e-3;
        if (residual_norm(h, e0 + delta, s) > residual_norm(h, e0, s)) ++strict;
    }
    CHECK(strict == 100);
}

TEST_CASE("tensor products") {
    const auto id2 = HermitianOperator::identity(2);
    const auto id3 = HermitianOperator::identity(3);
    CHECK(tensor(id2, id3).matrix().isApprox(CMatrix::Identity(6, 6)));

    const StateVector k01 = tensor(StateVector::basis(2, 0), StateVector::basis(2, 1));
    CHECK(k01.dim() == 4);
    CHECK(std::abs(k01[1] - 1.0) < 1e-15);

    const auto z = HermitianOperator::diagonal({1.0, -1.0});
    // rotate to a non-diagonal basis so the spectrum check is not trivial
    const CMatrix u = (CMatrix(2, 2) << r2, r2, r2, -r2).finished();
    const HermitianOperator zr(u * z.matrix() * u.adjoint());
    auto spec = oracle::eigenvalues(tensor(zr, zr).matrix());
    REQUIRE(spec.size() == 4);
    CHECK(spec[0] == doctest::Approx(-1.0));
    CHECK(spec[1] == doctest::Approx(-1.0));
    CHECK(spec[2] == doctest::Approx(1.0));
    CHECK(spec[3] == doctest::Approx(1.0));

    const StateVector a = random_state(3, 1);
    const StateVector b = random_state(2, 2);
    CHECK(tensor(a, b).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(StateVector(CVector::Ones(3)), InputError);
    CHECK_THROWS_AS(StateVector::normalize(CVector::Zero(3)), InputError);
    CHECK_THROWS_AS(StateVector::basis(1, 0), InputError);

    CMatrix m(2, 2);
    m << 1.0, Complex(0, 1), Complex(0, 1), 2.0;
    CHECK_THROWS_AS(HermitianOperator{m}, InputError);
    CHECK_THROWS_AS(HermitianOperator(CMatrix::Zero(2, 3)), InputError);
    CHECK_THROWS_AS(HermitianOperator(CMatrix::Zero(8, 8), 4), InputError);

    PhysicalConstants c;
    CHECK(c.hbar == 1.0);
    c.hbar = 0.0;
    CHECK_THROWS_AS(c.validate(), InputError);
}
