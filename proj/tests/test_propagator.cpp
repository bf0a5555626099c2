#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "teur/errors.hpp"
#include "teur/propagator.hpp"

using namespace teur;
using std::numbers::pi;

namespace {

InterpolatedHamiltonian single_qubit_qac(double T) {
    return {transverse_initial(1), HermitianOperator::diagonal({0.0, 1.0}), Schedule::linear(), T};
}

IntegratorConfig with_steps(std::size_t n, Method m = Method::MidpointExponential) {
    IntegratorConfig c;
    c.steps = n;
    c.method = m;
    return c;
}

}  // namespace

TEST_CASE("two-level closed form") {
    const Generator h = HermitianOperator::diagonal({0.0, 1.0});
    const auto tr = evolve(h, StateVector::uniform(2), pi / 2, with_steps(500), {BetaPolicy::zero()});
    CHECK(std::abs(tr.survival.back() - std::pow(std::cos(pi / 4), 2)) < 1e-8);
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const Complex want = 0.5 * (1.0 + std::exp(Complex(0.0, tr.times[k])));
        CHECK(std::abs(tr.overlaps[k] - want) < 1e-12);
        CHECK(std::abs(tr.survival[k] - std::norm(tr.overlaps[k])) <= 1e-12);
    }
    CHECK(tr.survival.front() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tr.times.size() == 501);
}

TEST_CASE("null dynamics") {
    const Generator h = HermitianOperator::zero(3);
    const auto psi = random_state(3, 5);
    const auto tr = evolve(h, psi, 7.0, with_steps(100), {BetaPolicy::zero()});
    CHECK((tr.final_state.amplitudes() - psi.amplitudes()).norm() < 1e-14);
    for (double d : tr.tracks[0].distances) CHECK(d < 1e-7);
    for (double r : tr.tracks[0].rhs_integrals) CHECK(r == 0.0);
}

TEST_CASE("QAC single qubit self-convergence") {
    const Generator g = single_qubit_qac(10.0);
    const auto coarse = evolve(g, StateVector::uniform(2), 10.0, with_steps(2000), {});
    const auto fine = evolve(g, StateVector::uniform(2), 10.0, with_steps(20000), {});
    CHECK(std::abs(coarse.survival.back() - fine.survival.back()) < 1e-6);
}

TEST_CASE("convergence orders") {
    const Generator g = single_qubit_qac(4.0);
    const auto rk = convergence_order(g, StateVector::uniform(2), 4.0, with_steps(100, Method::Rk4));
    REQUIRE(rk.order);
    CHECK(*rk.order >= 3.5);
    CHECK(*rk.order <= 4.5);

    const auto mid = convergence_order(g, StateVector::uniform(2), 4.0, with_steps(100));
    REQUIRE(mid.order);
    CHECK(*mid.order >= 1.8);
    CHECK(*mid.order <= 2.4);

    const Generator ti = random_hermitian(4, 9);
    const auto exact = convergence_order(ti, random_state(4, 9), 3.0, with_steps(50));
    CHECK(exact.exact);
    CHECK(!exact.order);
}

TEST_CASE("midpoint exponential is unitary per step") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Generator g = InterpolatedHamiltonian(random_hermitian(8, seed), random_hermitian(8, seed + 100),
                                                    Schedule::polynomial(2.0), 5.0);
        const auto tr = evolve(g, random_state(8, seed), 5.0, with_steps(400), {});
        for (std::size_t k = 1; k < tr.size(); ++k) CHECK(std::abs(tr.norms[k] - tr.norms[k - 1]) <= 1e-12);
    }
}

TEST_CASE("norm drift is reported with its time") {
    const Generator g = HermitianOperator::diagonal({0.0, 100.0});
    try {
        evolve(g, StateVector::uniform(2), 10.0, with_steps(10, Method::Rk4), {});
        FAIL("expected an integration failure");
    } catch (const IntegrationError& e) {
        CHECK(e.time() > 0.0);
        CHECK(e.time() <= 10.0);
    }
}

TEST_CASE("input validation") {
    const Generator g = HermitianOperator::diagonal({0.0, 1.0});
    CHECK_THROWS_AS(evolve(g, StateVector::uniform(3), 1.0, {}, {}), InputError);
    CHECK_THROWS_AS(evolve(g, StateVector::uniform(2), 0.0, {}, {}), InputError);
    CHECK_THROWS_AS(evolve(g, StateVector::uniform(2), 1.0, {}, {BetaPolicy::schedule_proportional(1.0)}),
                    InputError);
    const Generator q = single_qubit_qac(2.0);
    CHECK_THROWS_AS(evolve(q, StateVector::uniform(2), 3.0, {}, {}), InputError);
    IntegratorConfig bad;
    bad.dt = -1.0;
    CHECK_THROWS_AS(evolve(g, StateVector::uniform(2), 1.0, bad, {}), InputError);
    CHECK(method_from_string("rk4") == Method::Rk4);
    CHECK(method_from_string(to_string(Method::MidpointExponential)) == Method::MidpointExponential);
    CHECK_THROWS_AS(method_from_string("euler"), InputError);
}

TEST_CASE("trajectory invariants and beta independence of |overlap|") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto h = random_hermitian(5, seed);
        const auto psi = random_state(5, seed);
        const double e0 = expectation(h, psi);
        const Generator g = h;
        const auto tr = evolve(g, psi, 6.0, with_steps(600),
                               {BetaPolicy::zero(), BetaPolicy::constant(e0), BetaPolicy::constant(-1.3)});
        for (const auto& track : tr.tracks) {
            for (std::size_t k = 0; k < tr.size(); ++k) {
                const double d = track.distances[k];
                CHECK(d >= 0.0);
                CHECK(d <= 2.0);
                if (k > 0) CHECK(track.rhs_integrals[k] >= track.rhs_integrals[k - 1]);
                if (d * d <= 2.0) CHECK(tr.survival[k] >= std::pow(1.0 - 0.5 * d * d, 2) - 1e-12);
            }
        }
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const Complex o = tr.overlaps[k];
            for (const auto& track : tr.tracks) {
                const Complex phased = o * std::exp(Complex(0.0, -track.beta_integrals[k]));
                CHECK(std::abs(std::abs(phased) - std::abs(o)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("time-independent reductions") {
    oracle::Sampler s(11);
    for (int i = 0; i < 20; ++i) {
        const auto h = HermitianOperator(s.hermitian(4));
        const auto psi = StateVector(s.state(4));
        const auto m = oracle::spectral_moments(h.matrix(), psi.amplitudes());
        const auto tr = evolve(Generator(h), psi, 3.0, with_steps(300),
                               {BetaPolicy::zero(), BetaPolicy::constant(m.mean)});
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const double t = tr.times[k];
            CHECK(std::abs(tr.tracks[0].rhs_integrals[k] - t * std::hypot(m.spread, m.mean)) <= 1e-10);
            CHECK(std::abs(tr.tracks[1].rhs_integrals[k] - t * m.spread) <= 1e-10);
            CHECK(std::abs(tr.tracks[1].beta_integrals[k] - t * m.mean) <= 1e-10);
        }
    }
}

TEST_CASE("QAC schedule-proportional reduction") {
    const auto hp = HermitianOperator::diagonal({0.0, 1.0});
    const InterpolatedHamiltonian ih(transverse_initial(1), hp, Schedule::polynomial(2.0), 4.0);
    const auto gi = StateVector::uniform(2);
    const auto tr = evolve(Generator(ih), gi, 4.0, with_steps(800), {BetaPolicy::schedule_proportional(0.25)});
    const double r = residual_norm(hp, 0.25, gi);
    for (std::size_t k = 0; k < tr.size(); ++k) {
        CHECK(std::abs(tr.tracks[0].rhs_integrals[k] - ih.g_time_integral(tr.times[k]) * r) <= 1e-9);
    }
}

TEST_CASE("state_at re-integrates from checkpoints") {
    const Generator g = single_qubit_qac(5.0);
    const auto tr = evolve(g, StateVector::uniform(2), 5.0, with_steps(1000), {});
    const CVector mid = state_at(tr, g, 2.5);
    const CVector ref = advance(g, StateVector::uniform(2).amplitudes(), 0.0, 2.5, tr.config, 5.0 / 1000);
    CHECK((mid - ref).norm() < 1e-10);
    const CVector end = state_at(tr, g, 5.0);
    CHECK((end - tr.final_state.amplitudes()).norm() < 1e-10);
    CHECK_THROWS_AS(state_at(tr, g, 5.5), InputError);
}

TEST_CASE("hbar scales time") {
    IntegratorConfig c = with_steps(400);
    c.constants.hbar = 2.0;
    const Generator h = HermitianOperator::diagonal({0.0, 1.0});
    const auto tr = evolve(h, StateVector::uniform(2), 2 * pi, c, {});
    // with hbar = 2 the phase after t = 2 pi is pi, so the state is orthogonal
    CHECK(tr.survival.back() < 1e-20 + 1e-12);
}
