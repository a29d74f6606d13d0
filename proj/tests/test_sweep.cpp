#include <doctest.h>

#include <random>
#include <sstream>

#include "qring/bound_states.hpp"
#include "qring/magnetic.hpp"
#include "qring/sweep.hpp"
#include "test_support.hpp"

using namespace qring;

namespace {

RunConfig random_symmetric_config(std::mt19937_64& rng) {
    RunConfig cfg{test::random_symmetric_ring(rng)};
    const double d = cfg.ring.d();
    cfg.k_sweep = KSweepSpec{0.5 * M_PI / d, 3.5 * M_PI / d, 301};
    return cfg;
}

}  // namespace

TEST_CASE("k sweep: resonant grid point reaches unit transmission") {
    std::mt19937_64 rng(109);
    RunConfig cfg{test::random_symmetric_ring(rng)};
    const double d = cfg.ring.d();
    // 201 points over [0.5, 1.5] pi/d puts pi/d exactly on the grid
    cfg.k_sweep = KSweepSpec{0.5 * M_PI / d, 1.5 * M_PI / d, 201};
    const auto rows = compute_k_sweep(cfg);
    REQUIRE(rows.size() == 201);
    const KSweepRow& mid = rows[100];
    CHECK(mid.kd_over_pi == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(mid.resp.has_value());
    CHECK(std::abs(mid.resp->prob_T() - 1.0) < 1e-10);
    CHECK(std::abs(mid.resp->R) < 1e-10);
    for (const auto& row : rows) {
        REQUIRE(row.resp.has_value());
        CHECK(row.resp->unitarity_residual() <= 1e-10);
    }
}

TEST_CASE("k sweep rows ascend and keep probability") {
    std::mt19937_64 rng(113);
    const RunConfig cfg = random_symmetric_config(rng);
    const auto rows = compute_k_sweep(cfg);
    for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].k > rows[i - 1].k);
}

TEST_CASE("singular rows are emitted, not dropped") {
    // fully decoupled Neumann junctions: extremal at every k
    RunConfig cfg{RingSystem(NodeParams{.xi = 1.0}, NodeParams{.xi = 0.0})};
    cfg.k_sweep = KSweepSpec{1.0, 2.0, 5};
    const auto rows = compute_k_sweep(cfg);
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) CHECK_FALSE(row.resp.has_value());

    std::ostringstream os;
    write_k_sweep_csv(rows, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "k,kd_over_pi,re_R,im_R,re_T,im_T,prob_R,prob_T,unitarity_residual,status");
    std::getline(is, line);
    CHECK(line.find(",,,,,,,,singular") != std::string::npos);
}

TEST_CASE("csv output is deterministic and headers are exact") {
    std::mt19937_64 rng(127);
    const RunConfig cfg = random_symmetric_config(rng);
    const auto rows = compute_k_sweep(cfg);
    std::ostringstream a, b;
    write_k_sweep_csv(rows, a);
    write_k_sweep_csv(compute_k_sweep(cfg), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("\r") == std::string::npos);  // LF endings

    std::ostringstream ja, jb;
    write_k_sweep_json(rows, ja);
    write_k_sweep_json(rows, jb);
    CHECK(ja.str() == jb.str());
    CHECK(ja.str().find("\"unitarity_residual\"") != std::string::npos);
}

TEST_CASE("flux sweep on the switch fixture") {
    const double d = 1.0;
    RunConfig cfg{RingSystem(switch_node_params(1.0, d), switch_node_params(1.0, 0.0))};
    cfg.flux_sweep = FluxSweepSpec{0.0, 2.0 * M_PI, 9, M_PI / d};  // grid hits pi
    const auto rows = compute_flux_sweep(cfg);
    REQUIRE(rows.size() == 9);
    // theta_B = 0 at resonant k: perfect transmission
    REQUIRE(rows[0].resp.has_value());
    CHECK(std::abs(rows[0].resp->prob_T() - 1.0) <= 1e-10);
    // theta_B = pi at index 4: perfect reflection
    REQUIRE(rows[4].resp.has_value());
    CHECK(rows[4].resp->prob_T() <= 1e-10);
    CHECK(std::abs(rows[4].resp->prob_R() - 1.0) <= 1e-10);
    // theta_B = 2 pi at index 8: perfect transmission again
    REQUIRE(rows[8].resp.has_value());
    CHECK(std::abs(rows[8].resp->prob_T() - 1.0) <= 1e-10);
    for (const auto& row : rows)
        if (row.resp) CHECK(row.resp->unitarity_residual() <= 1e-10);

    std::ostringstream os;
    write_flux_sweep_csv(rows, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "theta_B,re_R,im_R,re_T,im_T,prob_R,prob_T,status");
}

TEST_CASE("flux sweep refuses asymmetric rings") {
    std::mt19937_64 rng(131);
    RunConfig cfg{test::random_ring(rng, false)};
    cfg.flux_sweep = FluxSweepSpec{0.0, 1.0, 5, 1.0};
    CHECK_THROWS_WITH_AS(compute_flux_sweep(cfg), doctest::Contains("symmetric"),
                         config_error);
}

TEST_CASE("localized sweep output") {
    std::mt19937_64 rng(137);
    const RunConfig cfg = random_symmetric_config(rng);
    const auto rows = compute_localized(cfg);
    REQUIRE(rows.size() == 3);
    for (int n = 1; n <= 3; ++n) {
        const LocalizedRow& row = rows[n - 1];
        CHECK(row.n_estimate == n);
        CHECK(row.rank == 3);
        REQUIRE(row.state.has_value());
        CHECK(std::abs(arm_norm_quadrature(*row.state) - 1.0) < 1e-8);
    }

    std::ostringstream os;
    write_localized_csv(rows, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "k,n_estimate,rank,re_C2,im_C2,re_D2,im_D2,re_C3,im_C3,re_D3,im_D3,N");

    std::ostringstream wf;
    write_wavefunction_csv(*rows[0].state, wf);
    std::istringstream wis(wf.str());
    std::getline(wis, header);
    CHECK(header == "x,re_phi2,im_phi2,re_phi3,im_phi3");
    std::vector<std::array<double, 5>> samples;
    std::string line;
    while (std::getline(wis, line)) {
        std::array<double, 5> v{};
        std::istringstream ls(line);
        std::string field;
        for (double& x : v) {
            std::getline(ls, field, ',');
            x = std::stod(field);
        }
        samples.push_back(v);
    }
    CHECK(samples.size() == 513);
    // Simpson over the 512 sampled panels recovers unit norm
    double acc = 0.0;
    auto dens = [&](size_t i) {
        return samples[i][1] * samples[i][1] + samples[i][2] * samples[i][2] +
               samples[i][3] * samples[i][3] + samples[i][4] * samples[i][4];
    };
    for (size_t i = 0; i < samples.size(); ++i) {
        const double w = (i == 0 || i == 512) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * dens(i);
    }
    const double h = samples[1][0] - samples[0][0];
    CHECK(std::abs(acc * h / 3.0 - 1.0) < 1e-8);
}

TEST_CASE("asymmetric perturbation suppresses every localized row") {
    std::mt19937_64 rng(139);
    RingSystem sym = test::random_symmetric_ring(rng);
    NodeParams q = sym.node_II;
    q.theta[0] += 0.1;
    RunConfig cfg{RingSystem(sym.node_I, q)};
    const double d = cfg.ring.d();
    cfg.k_sweep = KSweepSpec{0.5 * M_PI / d, 3.5 * M_PI / d, 301};
    CHECK(compute_localized(cfg).empty());
}

TEST_CASE("verify: clean run passes, injected error fails") {
    VerifyOptions opts;
    opts.seed = 42;
    std::ostringstream report;
    CHECK(run_verify(opts, report) == 0);
    CHECK(report.str().find("seed = 42") != std::string::npos);
    CHECK(report.str().find("[FAIL]") == std::string::npos);

    opts.inject_error = true;
    std::ostringstream bad;
    CHECK(run_verify(opts, bad) != 0);
    CHECK(bad.str().find("[FAIL]") != std::string::npos);
}

TEST_CASE("g17 formatting round-trips doubles") {
    std::mt19937_64 rng(149);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, i % 17 - 8);
        CHECK(std::stod(format_g17(v)) == v);
    }
}
