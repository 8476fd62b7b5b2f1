#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vanetcast/oracle.hpp"
#include "vanetcast/sim_engine.hpp"

using namespace vanetcast;

TEST_CASE("no malice and full coverage always succeed", "[sim_engine]") {
    const Scenario sc(800.0, 0.01, 0.0, ConnectionModel::unit_disk(800.0));
    const Estimate e = estimate_p_succ(sc, 5000, 1);
    CHECK(e.p_succ == 1.0);
    CHECK(e.std_error == 0.0);
    CHECK(e.ci_low == 1.0);
    CHECK(e.ci_high == 1.0);
}

TEST_CASE("an empty road leaves the destination on a coin", "[sim_engine]") {
    // essentially no relays ever, r < L: the destination hears nothing
    const Scenario sc(1000.0, 1e-12, 0.5, ConnectionModel::unit_disk(250.0));
    const Estimate e = estimate_p_succ(sc, 20000, 3);
    CHECK(e.p_succ == Catch::Approx(0.5).margin(3.0 * e.std_error + 1e-9));
}

TEST_CASE("trials are deterministic in (scenario, seed)", "[sim_engine]") {
    const Scenario sc(1200.0, 0.01, 0.3, ConnectionModel::log_normal(250.0, 2.0, 4.0));
    for (std::uint64_t i = 0; i < 50; ++i) {
        Engine a = make_engine(11, i);
        Engine b = make_engine(11, i);
        const TrialOutcome ta = run_trial(sc, a);
        const TrialOutcome tb = run_trial(sc, b);
        REQUIRE(ta.success == tb.success);
        REQUIRE(ta.broadcasts_made == tb.broadcasts_made);
        REQUIRE(ta.destination_inbox_size == tb.destination_inbox_size);
        REQUIRE(ta.destination_tie == tb.destination_tie);
    }
}

TEST_CASE("estimates do not depend on the thread schedule", "[sim_engine]") {
    const Scenario sc(1500.0, 0.008, 0.25, ConnectionModel::unit_disk(250.0));
    const Estimate serial = estimate_p_succ(sc, 4000, 17, 1);
    const Estimate threaded = estimate_p_succ(sc, 4000, 17, 4);
    CHECK(serial.p_succ == threaded.p_succ);
    CHECK(serial.std_error == threaded.std_error);
}

TEST_CASE("single-relay fixture with resampled flags matches 1 - pm/2", "[sim_engine]") {
    const Scenario sc(1000.0, 0.001, 0.2, ConnectionModel::unit_disk(1000.0));
    const Estimate e = estimate_p_succ_positions({400.0}, sc, 100000, 5);
    CHECK(std::abs(e.p_succ - 0.9) <= 3.0 * e.std_error);
}

TEST_CASE("fixed-flag replay matches the trial protocol", "[sim_engine]") {
    const Topology topo({150.0, 420.0}, {1, 0});
    const Scenario sc(600.0, 0.01, 0.9, ConnectionModel::unit_disk(300.0));
    Engine a = make_engine(23, 4);
    Engine b = make_engine(23, 4);
    const TrialOutcome ta = run_trial_on(topo, sc, a);
    const TrialOutcome tb = run_trial_on(topo, sc, b);
    CHECK(ta.success == tb.success);
    CHECK(ta.broadcasts_made <= 2);
    CHECK_THROWS_AS(run_trial_on(Topology({700.0}, {0}), sc, a), InputError);
}

TEST_CASE("termination and bookkeeping invariants hold", "[sim_engine]") {
    const Scenario sc(1000.0, 0.01, 0.5, ConnectionModel::log_normal(200.0, 2.0, 4.0));
    Engine rng = make_engine(31, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const Topology topo = sample_topology(sc, rng);
        const TrialOutcome out = detail::run_dissemination(topo, sc, rng);
        REQUIRE(out.broadcasts_made <= static_cast<int>(topo.size()));
        REQUIRE(out.destination_inbox_size <= out.broadcasts_made + 1);
        if (out.destination_inbox_size == 0) REQUIRE(out.destination_tie);
    }
}

TEST_CASE("zero malice keeps success at or above one half", "[sim_engine]") {
    Engine rng = make_engine(37, 0);
    for (int rep = 0; rep < 6; ++rep) {
        const double L = 500.0 + uniform01(rng) * 1500.0;
        const double rho = 0.002 + uniform01(rng) * 0.01;
        const Scenario sc(L, rho, 0.0, ConnectionModel::unit_disk(250.0));
        const Estimate e = estimate_p_succ(sc, 2000, 101 + rep);
        REQUIRE(e.p_succ >= 0.5 - 3.0 * e.std_error);
    }
}

TEST_CASE("paper-scale plateau point sits near one half", "[sim_engine]") {
    const Scenario sc(3000.0, 0.05, 0.4, ConnectionModel::unit_disk(250.0));
    const Estimate e = estimate_p_succ(sc, 2000, 7);
    CHECK(e.p_succ == Catch::Approx(0.5).margin(0.05));
}

TEST_CASE("oracle and simulation agree on a marginal fixture", "[sim_engine]") {
    const std::vector<double> pos{220.0, 500.0};
    const ConnectionModel model = ConnectionModel::log_normal(250.0, 2.0, 4.0);
    const double L = 750.0;
    const Scenario sc(L, 0.01, 0.35, model);
    const double exact = exact_p_succ_marginal(pos, model, L, sc.malice_prob);
    const Estimate sim = estimate_p_succ_positions(pos, sc, 100000, 13);
    CHECK(std::abs(sim.p_succ - exact) <= 3.0 * sim.std_error);
}
