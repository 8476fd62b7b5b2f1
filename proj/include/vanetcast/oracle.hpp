#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vanetcast/connectivity.hpp"
#include "vanetcast/fusion.hpp"
#include "vanetcast/topology.hpp"

namespace vanetcast {

// Exact Pr(M_D = +1) for tiny fixed instances, by weighted enumeration of
// every random choice the protocol makes: the uniform pick of the next
// broadcaster, each per-receiver reception bit, each fusion tie coin, and
// the destination tie coin. Ground truth for the simulator and the
// analytical recursion; deliberately written as a direct state-space walk
// with none of their machinery.

inline constexpr std::size_t kOracleMaxRelays = 4;

struct ExactOutcome {
    double p_success = 0.0;  // mass of enumeration paths ending in M_D = +1
    double total_mass = 0.0; // mass of all paths; 1 up to rounding
};

namespace detail {

class OracleEnumerator {
  public:
    OracleEnumerator(const Topology& topo, const ConnectionModel& model, double road_length)
        : topo_(topo), n_(topo.size()) {
        for (std::size_t i = 0; i < n_; ++i) {
            g_src_[i] = link_probability(model, topo.positions[i]);
            g_dest_[i] = link_probability(model, road_length - topo.positions[i]);
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j)
                    g_relay_[j][i] = link_probability(
                        model, std::abs(topo.positions[i] - topo.positions[j]));
        }
        g_src_dest_ = link_probability(model, road_length);
    }

    ExactOutcome run() {
        State init{};
        const auto r = broadcast(init, kSourceSender, Message::plus);
        return {r.first, r.second};
    }

  private:
    static constexpr std::size_t kSourceSender = kOracleMaxRelays;

    // Inbox counts per relay plus destination counts and the broadcast set.
    // All counts are <= 5, so the state packs into one 64-bit memo key.
    struct State {
        std::array<std::uint8_t, kOracleMaxRelays> plus{};
        std::array<std::uint8_t, kOracleMaxRelays> minus{};
        std::uint8_t dest_plus = 0;
        std::uint8_t dest_minus = 0;
        std::uint8_t done_mask = 0;
    };

    std::uint64_t key(const State& s) const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            k = (k << 3) | s.plus[i];
            k = (k << 3) | s.minus[i];
        }
        k = (k << 3) | s.dest_plus;
        k = (k << 3) | s.dest_minus;
        k = (k << 4) | s.done_mask;
        return k;
    }

    using Mass = std::pair<double, double>;  // (success, total)

    // Expected outcome from `state` onward. Memoized: different broadcast
    // orders recombine on identical states.
    Mass value(const State& s) {
        std::array<std::size_t, kOracleMaxRelays> eligible{};
        std::size_t n_eligible = 0;
        for (std::size_t k = 0; k < n_; ++k)
            if (!((s.done_mask >> k) & 1) && (s.plus[k] + s.minus[k]) > 0)
                eligible[n_eligible++] = k;

        if (n_eligible == 0) {
            if (s.dest_plus > s.dest_minus) return {1.0, 1.0};
            if (s.dest_minus > s.dest_plus) return {0.0, 1.0};
            return {0.5, 1.0};  // destination tie coin (covers the empty inbox)
        }

        const std::uint64_t memo_key = key(s);
        if (const auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

        Mass out{0.0, 0.0};
        const double w_choice = 1.0 / static_cast<double>(n_eligible);
        for (std::size_t ei = 0; ei < n_eligible; ++ei) {
            const std::size_t e = eligible[ei];
            State t = s;
            t.done_mask |= static_cast<std::uint8_t>(1u << e);
            t.plus[e] = t.minus[e] = 0;  // a relay never acts again; dead inbox
            const bool mal = topo_.malicious[e] != 0;
            if (s.plus[e] != s.minus[e]) {
                const Message fused = s.plus[e] > s.minus[e] ? Message::plus : Message::minus;
                accumulate(out, w_choice, broadcast(t, e, apply_malice(fused, mal)));
            } else {
                // tie: fair coin, broadcast as-is regardless of malice
                accumulate(out, 0.5 * w_choice, broadcast(t, e, Message::plus));
                accumulate(out, 0.5 * w_choice, broadcast(t, e, Message::minus));
            }
        }
        memo_.emplace(memo_key, out);
        return out;
    }

    // Enumerates the reception bits of one broadcast (not-yet-done relays in
    // index order, then the destination), then resumes `value`.
    Mass broadcast(const State& s, std::size_t sender, Message msg) {
        std::array<std::size_t, kOracleMaxRelays> receivers{};
        std::size_t count = 0;
        for (std::size_t k = 0; k < n_; ++k)
            if (!((s.done_mask >> k) & 1) && k != sender) receivers[count++] = k;
        return walk(s, receivers, count, 0, sender, msg);
    }

    Mass walk(const State& s, const std::array<std::size_t, kOracleMaxRelays>& receivers,
              std::size_t count, std::size_t idx, std::size_t sender, Message msg) {
        if (idx == count) {
            const double g = sender == kSourceSender ? g_src_dest_ : g_dest_[sender];
            Mass out{0.0, 0.0};
            if (g > 0.0) {
                State t = s;
                (msg == Message::plus ? t.dest_plus : t.dest_minus)++;
                accumulate(out, g, value(t));
            }
            if (g < 1.0) accumulate(out, 1.0 - g, value(s));
            return out;
        }
        const std::size_t k = receivers[idx];
        const double g = sender == kSourceSender ? g_src_[k] : g_relay_[sender][k];
        Mass out{0.0, 0.0};
        if (g > 0.0) {
            State t = s;
            (msg == Message::plus ? t.plus[k] : t.minus[k])++;
            accumulate(out, g, walk(t, receivers, count, idx + 1, sender, msg));
        }
        if (g < 1.0) accumulate(out, 1.0 - g, walk(s, receivers, count, idx + 1, sender, msg));
        return out;
    }

    static void accumulate(Mass& out, double w, const Mass& sub) {
        out.first += w * sub.first;
        out.second += w * sub.second;
    }

    const Topology& topo_;
    std::size_t n_;
    std::array<std::array<double, kOracleMaxRelays>, kOracleMaxRelays> g_relay_{};
    std::array<double, kOracleMaxRelays> g_src_{};
    std::array<double, kOracleMaxRelays> g_dest_{};
    double g_src_dest_ = 0.0;
    std::unordered_map<std::uint64_t, Mass> memo_;
};

}  // namespace detail

inline ExactOutcome exact_dissemination_outcome(const Topology& topo,
                                                const ConnectionModel& model,
                                                double road_length) {
    if (topo.size() > kOracleMaxRelays)
        throw InfeasibleError("oracle enumeration is limited to " +
                              std::to_string(kOracleMaxRelays) + " relays, got " +
                              std::to_string(topo.size()));
    validate_against(topo, road_length);
    return detail::OracleEnumerator(topo, model, road_length).run();
}

// Exact success probability for fixed positions and fixed malice flags.
inline double exact_p_succ_fixed(const Topology& topo, const ConnectionModel& model,
                                 double road_length) {
    return exact_dissemination_outcome(topo, model, road_length).p_success;
}

// Marginal over malice flags: sum over all 2^N flag vectors weighted by
// Bernoulli(p_m). Zero-weight vectors are skipped, so p_m = 0 and p_m = 1
// reduce to single fixed evaluations.
inline double exact_p_succ_marginal(const std::vector<double>& positions,
                                    const ConnectionModel& model, double road_length,
                                    double malice_prob) {
    if (positions.size() > kOracleMaxRelays)
        throw InfeasibleError("oracle enumeration is limited to " +
                              std::to_string(kOracleMaxRelays) + " relays, got " +
                              std::to_string(positions.size()));
    if (!(malice_prob >= 0.0 && malice_prob <= 1.0))
        throw InputError("malice probability must be in [0, 1]");
    const std::size_t n = positions.size();
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double w = 1.0;
        std::vector<std::uint8_t> flags(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool mal = (mask >> i) & 1;
            flags[i] = mal ? 1 : 0;
            w *= mal ? malice_prob : 1.0 - malice_prob;
        }
        if (w == 0.0) continue;
        total += w * exact_p_succ_fixed(Topology(positions, std::move(flags)), model, road_length);
    }
    return total;
}

}  // namespace vanetcast
