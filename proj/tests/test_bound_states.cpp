#include <doctest.h>

#include <random>

#include "qring/bound_states.hpp"
#include "qring/gellmann.hpp"
#include "qring/magnetic.hpp"
#include "qring/ring.hpp"
#include "test_support.hpp"

using namespace qring;

TEST_CASE("matching matrix rank at and off resonance") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 200; ++i) {
        const RingSystem sym = test::random_ring(rng, true);
        const double d = sym.d();
        for (int n = 1; n <= 5; ++n)
            CHECK(numerical_rank(matching_matrix(sym, n * M_PI / d)) == 3);
        CHECK(numerical_rank(matching_matrix(sym, 0.9 * M_PI / d)) == 4);

        RingSystem asym(sym.node_I, [&] {
            NodeParams q = sym.node_II;
            q.theta[1] += 0.1;
            return q;
        }());
        CHECK(numerical_rank(matching_matrix(asym, M_PI / d)) == 4);
    }
}

TEST_CASE("matching matrix stays finite for Neumann channels") {
    // the switch junction has theta_3 = 0 (an infinite channel length)
    const RingSystem ring(switch_node_params(1.0, 1.2), switch_node_params(1.0, 0.0));
    const MatchingMatrix m = matching_matrix(ring, M_PI / 1.2);
    CHECK(m.entries.allFinite());
    CHECK(numerical_rank(m) == 3);
}

TEST_CASE("numerical rank edge cases") {
    MatchingMatrix zero;
    zero.entries.setZero();
    zero.k = 1.0;
    CHECK(numerical_rank(zero) == 0);
    CHECK_THROWS_AS(numerical_rank(zero, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(numerical_rank(zero, 1.5), std::invalid_argument);
}

TEST_CASE("localized-state search") {
    std::mt19937_64 rng(67);
    const RingSystem ring = test::random_symmetric_ring(rng);
    const double d = ring.d();

    SUBCASE("symmetric ring: hits at n pi / d") {
        const auto hits = find_localized_k(ring, 0.5 * M_PI / d, 3.5 * M_PI / d, 600);
        REQUIRE(hits.size() == 3);
        for (int n = 1; n <= 3; ++n) {
            CHECK(std::abs(hits[n - 1].k - n * M_PI / d) < 1e-9);
            CHECK(hits[n - 1].rank == 3);
            CHECK(hits[n - 1].sigma_ratio < 1e-6);
        }
    }
    SUBCASE("perturbed ring: empty in the same range") {
        NodeParams q = ring.node_II;
        q.theta[0] += 0.1;
        const RingSystem asym(ring.node_I, q);
        CHECK(find_localized_k(asym, 0.5 * M_PI / d, 3.5 * M_PI / d, 600).empty());
    }
    SUBCASE("range excluding every resonance") {
        CHECK(find_localized_k(ring, 1.1 * M_PI / d, 1.9 * M_PI / d, 200).empty());
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(find_localized_k(ring, 2.0, 1.0, 100), std::invalid_argument);
        CHECK_THROWS_AS(find_localized_k(ring, 1.0, 2.0, 1), std::invalid_argument);
    }
}

TEST_CASE("localized wavefunction: construction and invariants") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 30; ++i) {
        const RingSystem ring = test::random_symmetric_ring(rng);
        const int n = 1 + i % 3;
        const LocalizedState st = localized_wavefunction(ring, n);
        CHECK(st.k == doctest::Approx(n * M_PI / ring.d()).epsilon(1e-14));
        CHECK(st.N > 0.0);

        // node values: phi(xi_II) = D/N, phi(xi_I) = (-1)^n D/N
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        CHECK(std::abs(st.phi2(st.xi_II) - st.D2 / st.N) < 1e-12);
        CHECK(std::abs(st.phi3(st.xi_II) - st.D3 / st.N) < 1e-12);
        CHECK(std::abs(st.phi2(st.xi_I) - sign * st.D2 / st.N) < 1e-12);
        CHECK(std::abs(st.phi3(st.xi_I) - sign * st.D3 / st.N) < 1e-12);

        // normalization by quadrature
        CHECK(std::abs(arm_norm_quadrature(st) - 1.0) < 1e-8);

        // plane-wave amplitudes lie in the null space of M
        const MatchingMatrix m = matching_matrix(ring, st.k);
        const Eigen::Vector4cd amps = plane_wave_amplitudes(st);
        CHECK((m.entries * amps).cwiseAbs().maxCoeff() < 1e-10);

        // and satisfy the raw junction condition at both nodes, with the
        // lead wavefunctions identically zero (independent of the M layout)
        for (const NodeParams& p : {ring.node_I, ring.node_II}) {
            const Matrix3c u = junction_unitary(p);
            Vector3c psi, dpsi;
            psi << st.phi2(p.xi), st.phi3(p.xi), 0.0;
            const double kk = st.k;
            auto dphi = [&](const Complex& c, const Complex& d_coef, double x) {
                return kk * (c * std::cos(kk * (x - st.xi_II)) -
                             d_coef * std::sin(kk * (x - st.xi_II))) / st.N;
            };
            dpsi << dphi(st.C2, st.D2, p.xi), dphi(st.C3, st.D3, p.xi), 0.0;
            const Vector3c res = (u - Matrix3c::Identity()) * psi +
                                 Complex(0.0, 1.0) * p.L0 * (u + Matrix3c::Identity()) * dpsi;
            CHECK(res.cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("localized wavefunction rejects bad input") {
    std::mt19937_64 rng(73);
    const RingSystem asym = test::random_ring(rng, false);
    CHECK_THROWS_AS(localized_wavefunction(asym, 1), std::invalid_argument);
    const RingSystem sym = test::random_ring(rng, true);
    CHECK_THROWS_AS(localized_wavefunction(sym, 0), std::invalid_argument);
}

TEST_CASE("localized states coincide with perfect transmission") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 5; ++i) {
        const RingSystem ring = test::random_symmetric_ring(rng);
        const double d = ring.d();
        const auto loc = find_localized_k(ring, 0.5 * M_PI / d, 3.5 * M_PI / d, 800);
        const auto perf = find_perfect_transmission_k(ring, 0.5 * M_PI / d, 3.5 * M_PI / d, 800);
        REQUIRE(loc.size() == perf.size());
        for (size_t j = 0; j < loc.size(); ++j)
            CHECK(std::abs(loc[j].k - perf[j]) < 1e-8);
    }
}
