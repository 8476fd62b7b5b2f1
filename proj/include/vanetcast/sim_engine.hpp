#pragma once

#include <cstdint>
#include <vector>

#include "vanetcast/estimate.hpp"
#include "vanetcast/fusion.hpp"
#include "vanetcast/parallel.hpp"
#include "vanetcast/topology.hpp"

namespace vanetcast {

struct TrialOutcome {
    bool success = false;             // destination fused to +1
    int broadcasts_made = 0;          // relays that transmitted (<= N)
    int destination_inbox_size = 0;   // copies the destination received
    bool destination_tie = false;     // destination decided by coin
};

namespace detail {

// One dissemination run on a fixed topology. Event order per broadcast is
// fixed: receptions are sampled for the not-yet-broadcast relays in position
// order, then for the destination, so a given engine state maps to exactly
// one outcome.
inline TrialOutcome run_dissemination(const Topology& topo, const Scenario& scenario,
                                      Engine& rng) {
    const std::size_t n = topo.size();
    const auto& pos = topo.positions;
    std::vector<Inbox> inbox(n);
    std::vector<std::uint8_t> done(n, 0);
    Inbox dest;

    const auto broadcast = [&](double from, Message msg, std::size_t sender) {
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k] || k == sender) continue;
            const double d = pos[k] > from ? pos[k] - from : from - pos[k];
            if (bernoulli(rng, link_probability(scenario.model, d)))
                inbox[k].add(msg);
        }
        if (bernoulli(rng, link_probability(scenario.model, scenario.road_length - from)))
            dest.add(msg);
    };

    TrialOutcome out;
    broadcast(0.0, Message::plus, n);  // source; sender index n excludes nobody

    std::vector<std::size_t> eligible;
    eligible.reserve(n);
    for (;;) {
        eligible.clear();
        for (std::size_t k = 0; k < n; ++k)
            if (!done[k] && !inbox[k].empty()) eligible.push_back(k);
        if (eligible.empty()) break;
        const std::size_t pick = eligible[uniform_below(rng, eligible.size())];
        // fusion uses whatever has arrived up to this moment; the relay
        // never acts again afterwards
        const Message msg = fuse_and_broadcast(inbox[pick], topo.malicious[pick] != 0, rng);
        done[pick] = 1;
        ++out.broadcasts_made;
        broadcast(pos[pick], msg, pick);
    }

    out.destination_inbox_size = dest.total();
    out.destination_tie = dest.tied();
    out.success = majority_vote(dest, rng) == Message::plus;
    return out;
}

}  // namespace detail

// One Monte Carlo trial: sample a topology, run the dissemination protocol,
// fuse at the destination.
inline TrialOutcome run_trial(const Scenario& scenario, Engine& rng) {
    const Topology topo = sample_topology(scenario, rng);
    return detail::run_dissemination(topo, scenario, rng);
}

// Trial on a fixed topology fixture in place of sampling (oracle
// cross-checks, replay).
inline TrialOutcome run_trial_on(const Topology& topo, const Scenario& scenario, Engine& rng) {
    validate_against(topo, scenario.road_length);
    return detail::run_dissemination(topo, scenario, rng);
}

// Trial with fixed relay positions but fresh Bernoulli(p_m) malice flags
// each run: the simulation counterpart of marginalizing the oracle over
// flag vectors. Flags are drawn first, then the dissemination runs.
inline TrialOutcome run_trial_positions(const std::vector<double>& positions,
                                        const Scenario& scenario, Engine& rng) {
    std::vector<std::uint8_t> flags(positions.size());
    for (auto& f : flags) f = bernoulli(rng, scenario.malice_prob) ? 1 : 0;
    const Topology topo(positions, std::move(flags));
    validate_against(topo, scenario.road_length);
    return detail::run_dissemination(topo, scenario, rng);
}

namespace detail {

template <typename TrialFn>
Estimate estimate_over_trials(std::uint64_t trials, std::uint64_t master_seed, int threads,
                              TrialFn&& trial) {
    if (trials == 0) throw InputError("trials must be >= 1");
    // Trial i draws from its own engine derived from (master_seed, i); the
    // aggregate is a sum of indicators, so the result does not depend on the
    // execution schedule.
    const int workers = resolve_threads(threads);
    std::vector<std::uint64_t> success_per_worker(workers, 0);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    parallel_for(static_cast<std::uint64_t>(workers), workers, [&](std::uint64_t w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(trials, lo + chunk);
        std::uint64_t hits = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            Engine rng = make_engine(master_seed, i);
            if (trial(rng).success) ++hits;
        }
        success_per_worker[w] = hits;
    });
    std::uint64_t successes = 0;
    for (auto h : success_per_worker) successes += h;
    return make_binomial_estimate(successes, trials, master_seed);
}

}  // namespace detail

inline Estimate estimate_p_succ(const Scenario& scenario, std::uint64_t trials,
                                std::uint64_t master_seed, int threads = 0) {
    return detail::estimate_over_trials(trials, master_seed, threads,
                                        [&](Engine& rng) { return run_trial(scenario, rng); });
}

inline Estimate estimate_p_succ_on(const Topology& topo, const Scenario& scenario,
                                   std::uint64_t trials, std::uint64_t master_seed,
                                   int threads = 0) {
    validate_against(topo, scenario.road_length);
    return detail::estimate_over_trials(
        trials, master_seed, threads,
        [&](Engine& rng) { return detail::run_dissemination(topo, scenario, rng); });
}

inline Estimate estimate_p_succ_positions(const std::vector<double>& positions,
                                          const Scenario& scenario, std::uint64_t trials,
                                          std::uint64_t master_seed, int threads = 0) {
    return detail::estimate_over_trials(trials, master_seed, threads, [&](Engine& rng) {
        return run_trial_positions(positions, scenario, rng);
    });
}

}  // namespace vanetcast
