#pragma once

// Test-only reference evaluators. These deliberately use literal
// enumeration over every reception vector / message assignment so they stay
// independent of the convolution-based implementation they check.

#include <cmath>
#include <cstdint>
#include <vector>

#include "vanetcast/analytic.hpp"
#include "vanetcast/connectivity.hpp"
#include "vanetcast/fusion.hpp"
#include "vanetcast/random.hpp"

namespace testutil {

using namespace vanetcast;

// Pr(M_i = +1 | prefix) by enumerating the 2^(i-1) reception subsets of the
// fused vote 1 + sum_j m_j B_j.
inline double brute_prefix_conditional(const BroadcastLayout& layout,
                                       const ConnectionModel& model, double p_m,
                                       const std::vector<Message>& prefix) {
    const std::size_t k = prefix.size();
    const double yi = layout.positions[k];
    double p_pos = 0.0, p_zero = 0.0, p_neg = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        double w = 1.0;
        int vote = 1;
        for (std::size_t j = 0; j < k; ++j) {
            const double g = link_probability(model, std::abs(yi - layout.positions[j]));
            if ((mask >> j) & 1) {
                w *= g;
                vote += sign_of(prefix[j]);
            } else {
                w *= 1.0 - g;
            }
        }
        (vote > 0 ? p_pos : vote < 0 ? p_neg : p_zero) += w;
    }
    return p_pos * (1.0 - p_m) + p_neg * p_m + 0.5 * p_zero;
}

// Chain probability of a full assignment, from brute conditionals.
inline double brute_vector_probability(const BroadcastLayout& layout,
                                       const ConnectionModel& model, double p_m,
                                       const std::vector<Message>& assignment) {
    double prob = 1.0;
    std::vector<Message> prefix;
    for (const Message m : assignment) {
        const double c = brute_prefix_conditional(layout, model, p_m, prefix);
        prob *= m == Message::plus ? c : 1.0 - c;
        prefix.push_back(m);
    }
    return prob;
}

// Literal double enumeration of Pr(M_D = +1 | layout): all 2^(n+1)
// destination reception vectors h times all 2^n message assignments m.
inline double literal_csp(const BroadcastLayout& layout, const ConnectionModel& model,
                          double p_m, double road_length) {
    const std::size_t n = layout.size();
    std::vector<double> g_dest(n + 1);
    g_dest[0] = link_probability(model, road_length);
    for (std::size_t i = 1; i <= n; ++i)
        g_dest[i] = link_probability(model, road_length - layout.positions[i - 1]);

    double total = 0.0;
    for (std::uint32_t hmask = 0; hmask < (1u << (n + 1)); ++hmask) {
        double wh = 1.0;
        for (std::size_t i = 0; i <= n; ++i)
            wh *= ((hmask >> i) & 1) ? g_dest[i] : 1.0 - g_dest[i];
        if (wh == 0.0) continue;
        for (std::uint32_t mmask = 0; mmask < (1u << n); ++mmask) {
            std::vector<Message> m(n);
            for (std::size_t i = 0; i < n; ++i)
                m[i] = ((mmask >> i) & 1) ? Message::plus : Message::minus;
            const double wm = brute_vector_probability(layout, model, p_m, m);
            if (wm == 0.0) continue;
            int s = (hmask & 1) ? 1 : 0;  // the source copy, M_0 = +1
            for (std::size_t i = 1; i <= n; ++i)
                if ((hmask >> i) & 1) s += sign_of(m[i - 1]);
            total += wh * wm * (s > 0 ? 1.0 : s == 0 ? 0.5 : 0.0);
        }
    }
    return total;
}

// Upper 0.999 quantile of chi-square via the Wilson-Hilferty cube
// approximation; plenty for a goodness-of-fit gate.
inline double chi2_quantile_999(double df) {
    const double z = 3.090232306167814;  // standard normal 0.999 quantile
    const double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    return df * t * t * t;
}

inline BroadcastLayout random_layout(Engine& rng, std::size_t n, double road_length) {
    BroadcastLayout layout;
    layout.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        layout.positions.push_back(uniform01(rng) * road_length);
    return layout;
}

}  // namespace testutil
