#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "vanetcast/oracle.hpp"
#include "vanetcast/sim_engine.hpp"

using namespace vanetcast;

namespace {
const ConnectionModel kWide = ConnectionModel::unit_disk(1e6);  // g == 1 on any road here
}

TEST_CASE("single relay with full connectivity", "[oracle]") {
    // normal relay: destination ends with {+1, +1}; malicious: a {+1, -1} tie
    CHECK(exact_p_succ_fixed(Topology({500.0}, {0}), kWide, 1000.0) == 1.0);
    CHECK(exact_p_succ_fixed(Topology({500.0}, {1}), kWide, 1000.0) == 0.5);
}

TEST_CASE("single relay marginal is 1 - pm/2", "[oracle]") {
    for (const double pm : {0.1, 0.2, 0.5, 0.9})
        CHECK(exact_p_succ_marginal({500.0}, kWide, 1000.0, pm) ==
              Catch::Approx(1.0 - pm / 2.0).margin(1e-12));
    CHECK(exact_p_succ_marginal({500.0}, kWide, 1000.0, 0.0) ==
          exact_p_succ_fixed(Topology({500.0}, {0}), kWide, 1000.0));
}

TEST_CASE("two relays, one malicious, full connectivity", "[oracle]") {
    // Hand enumeration: picking the normal relay first ends in success; picking
    // the malicious one first leaves a destination tie that resolves to +1
    // only when the second relay's tie coin lands +1. 1/2 + 1/2 * 1/2 = 0.75.
    const Topology topo({300.0, 600.0}, {0, 1});
    CHECK(exact_p_succ_fixed(topo, kWide, 1000.0) == Catch::Approx(0.75).margin(1e-12));
    const Topology swapped({300.0, 600.0}, {1, 0});
    CHECK(exact_p_succ_fixed(swapped, kWide, 1000.0) == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("enumeration mass sums to one", "[oracle]") {
    Engine rng = make_engine(2025, 0);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t n = rep % 4;  // 0..3 relays
        const double L = 600.0 + uniform01(rng) * 900.0;
        std::vector<double> pos;
        std::vector<std::uint8_t> flags;
        for (std::size_t i = 0; i < n; ++i) {
            pos.push_back(uniform01(rng) * L);
            flags.push_back(fair_coin(rng) ? 1 : 0);
        }
        std::sort(pos.begin(), pos.end());
        const ConnectionModel model = rep % 2 == 0
                                          ? ConnectionModel::unit_disk(250.0)
                                          : ConnectionModel::log_normal(250.0, 2.0, 4.0);
        const auto outcome = exact_dissemination_outcome(Topology(pos, flags), model, L);
        REQUIRE(outcome.total_mass == Catch::Approx(1.0).margin(1e-10));
        REQUIRE(outcome.p_success >= 0.0);
        REQUIRE(outcome.p_success <= 1.0 + 1e-12);
    }
}

TEST_CASE("oracle agrees with the simulator on a mixed fixture", "[oracle]") {
    const Topology topo({200.0, 450.0, 700.0}, {0, 1, 0});
    const double L = 900.0;
    const ConnectionModel model = ConnectionModel::unit_disk(260.0);
    const double exact = exact_p_succ_fixed(topo, model, L);
    const Scenario sc(L, 0.01, 0.0, model);  // pm unused: flags are fixed
    const Estimate sim = estimate_p_succ_on(topo, sc, 100000, 77);
    const double tol = 3.0 * std::max(sim.std_error, 1e-4);
    CHECK(std::abs(sim.p_succ - exact) <= tol);
}

TEST_CASE("endpoint malice values bracket intermediate ones on fixtures", "[oracle]") {
    // observational per the module contract: record a violation, don't fail
    const std::vector<double> pos{250.0, 480.0, 760.0};
    const ConnectionModel model = ConnectionModel::unit_disk(270.0);
    const double at0 = exact_p_succ_marginal(pos, model, 1000.0, 0.0);
    const double at1 = exact_p_succ_marginal(pos, model, 1000.0, 1.0);
    const double lo = std::min(at0, at1), hi = std::max(at0, at1);
    for (double pm = 0.1; pm < 0.95; pm += 0.1) {
        const double p = exact_p_succ_marginal(pos, model, 1000.0, pm);
        if (p < lo - 1e-12 || p > hi + 1e-12)
            WARN("bracketing violated at pm=" << pm << ": " << p << " outside [" << lo << ", "
                                              << hi << "]");
    }
    SUCCEED();
}

TEST_CASE("oracle refuses oversized instances", "[oracle]") {
    const std::vector<double> pos{100.0, 200.0, 300.0, 400.0, 500.0};
    CHECK_THROWS_AS(
        exact_p_succ_fixed(Topology(pos, {0, 0, 0, 0, 0}), kWide, 1000.0),
        InfeasibleError);
    CHECK_THROWS_AS(exact_p_succ_marginal(pos, kWide, 1000.0, 0.5), InfeasibleError);
    CHECK_THROWS_AS(exact_p_succ_marginal({100.0}, kWide, 1000.0, 1.5), InputError);
}
