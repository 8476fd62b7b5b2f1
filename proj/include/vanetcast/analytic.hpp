#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "vanetcast/connectivity.hpp"
#include "vanetcast/estimate.hpp"
#include "vanetcast/fusion.hpp"
#include "vanetcast/parallel.hpp"
#include "vanetcast/topology.hpp"

namespace vanetcast {

// Broadcast locations y_1..y_n indexed by broadcast order, which is not
// spatial order; y_0 = 0 (the source) is implicit.
struct BroadcastLayout {
    std::vector<double> positions;

    std::size_t size() const { return positions.size(); }
};

inline void validate_layout(const BroadcastLayout& layout, double road_length) {
    for (double y : layout.positions)
        if (!(y > 0.0 && y < road_length))
            throw InputError("layout positions must lie in (0, road_length)");
}

// Distribution of an integer-valued sum of independent +/-1-weighted
// Bernoulli terms (plus a constant offset), built by convolution in
// O(terms^2) instead of 2^terms subset enumeration. Degenerate terms
// (p = 0 or 1) cost O(1): they only move the offset.
class VoteDistribution {
  public:
    static VoteDistribution point(int value) {
        VoteDistribution d;
        d.min_ = value;
        return d;
    }

    // Convolve with sign * Bernoulli(p).
    void add_term(double p, int sign) {
        if (p <= 0.0) return;
        if (p >= 1.0) {
            min_ += sign;
            return;
        }
        std::vector<double> out(mass_.size() + 1, 0.0);
        const std::size_t keep = sign < 0 ? 1 : 0;   // index shift of the "not received" branch
        const std::size_t moved = sign < 0 ? 0 : 1;  // index shift of the "received" branch
        for (std::size_t k = 0; k < mass_.size(); ++k) {
            out[k + keep] += mass_[k] * (1.0 - p);
            out[k + moved] += mass_[k] * p;
        }
        min_ += sign < 0 ? -1 : 0;
        mass_ = std::move(out);
    }

    double prob_positive() const {
        double s = 0.0;
        for (std::size_t k = 0; k < mass_.size(); ++k)
            if (min_ + static_cast<int>(k) > 0) s += mass_[k];
        return s;
    }

    double prob_negative() const {
        double s = 0.0;
        for (std::size_t k = 0; k < mass_.size(); ++k)
            if (min_ + static_cast<int>(k) < 0) s += mass_[k];
        return s;
    }

    double prob_zero() const {
        const int k = -min_;
        if (k < 0 || static_cast<std::size_t>(k) >= mass_.size()) return 0.0;
        return mass_[static_cast<std::size_t>(k)];
    }

    double total() const {
        double s = 0.0;
        for (double m : mass_) s += m;
        return s;
    }

  private:
    int min_ = 0;                      // value represented by mass_[0]
    std::vector<double> mass_{1.0};
};

namespace detail {

inline void check_malice_prob(double p_m) {
    if (!(p_m >= 0.0 && p_m <= 1.0)) throw InputError("malice probability must be in [0, 1]");
}

// Probability that the next broadcast is +1, given the vote distribution a
// relay fuses over: majority +1 survives malice with 1 - p_m, majority -1 is
// flipped to +1 with p_m, and a tie is a fair coin regardless of malice.
inline double plus_probability(double prob_pos, double prob_zero, double prob_neg, double p_m) {
    return prob_pos * (1.0 - p_m) + prob_neg * p_m + 0.5 * prob_zero;
}

}  // namespace detail

// Pr(M_i = +1 | M_1..M_{i-1} = prefix), where i = prefix.size() + 1. The
// fused vote is 1 + sum_j m_j * B_j with independent B_j ~
// Bernoulli(g(|y_i - y_j|)); the leading 1 is the source's message, counted
// unconditionally. Distances are |y_i - y_j| since broadcast order need not
// be spatial order.
inline double message_prefix_conditional(const BroadcastLayout& layout,
                                         const ConnectionModel& model, double p_m,
                                         std::span<const Message> prefix) {
    detail::check_malice_prob(p_m);
    const std::size_t i = prefix.size() + 1;
    if (i > layout.size()) throw InputError("prefix length must be < layout size");
    const double yi = layout.positions[i - 1];
    VoteDistribution vote = VoteDistribution::point(1);
    for (std::size_t j = 1; j < i; ++j)
        vote.add_term(link_probability(model, std::abs(yi - layout.positions[j - 1])),
                      sign_of(prefix[j - 1]));
    return detail::plus_probability(vote.prob_positive(), vote.prob_zero(),
                                    vote.prob_negative(), p_m);
}

// Chain-rule probability of a full message assignment m_1..m_n.
inline double message_vector_probability(const BroadcastLayout& layout,
                                         const ConnectionModel& model, double p_m,
                                         std::span<const Message> assignment) {
    detail::check_malice_prob(p_m);
    if (assignment.size() != layout.size())
        throw InputError("assignment length must equal layout size");
    double prob = 1.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const double c =
            message_prefix_conditional(layout, model, p_m, assignment.first(i));
        prob *= assignment[i] == Message::plus ? c : 1.0 - c;
    }
    return prob;
}

namespace detail {

// Depth-first walk over message assignments, sharing chain-probability
// prefixes. The destination vote S = h_0 + sum_i h_i m_i is carried along
// as a VoteDistribution per depth, so each leaf is O(1) beyond the walk.
class GeneralCspWalk {
  public:
    GeneralCspWalk(const BroadcastLayout& layout, const ConnectionModel& model, double p_m,
                   double road_length)
        : y_(layout.positions), p_m_(p_m), n_(layout.size()) {
        g_dest_.resize(n_ + 1);
        g_pair_.assign(n_ + 1, {});
        for (std::size_t i = 1; i <= n_; ++i) {
            g_dest_[i] = link_probability(model, road_length - y_[i - 1]);
            g_pair_[i].resize(i);
            for (std::size_t j = 1; j < i; ++j)
                g_pair_[i][j] = link_probability(model, std::abs(y_[i - 1] - y_[j - 1]));
        }
        msg_.assign(n_ + 1, 0);
        dest_.resize(n_ + 1);
        dest_[0] = VoteDistribution::point(0);
        dest_[0].add_term(link_probability(model, road_length), +1);  // h_0, the source copy
    }

    double run() {
        rec(0, 1.0);
        return acc_;
    }

  private:
    void rec(std::size_t i, double chain) {
        if (i == n_) {
            acc_ += chain * (dest_[i].prob_positive() + 0.5 * dest_[i].prob_zero());
            return;
        }
        VoteDistribution vote = VoteDistribution::point(1);
        for (std::size_t j = 1; j <= i; ++j) vote.add_term(g_pair_[i + 1][j], msg_[j]);
        const double p_plus = plus_probability(vote.prob_positive(), vote.prob_zero(),
                                               vote.prob_negative(), p_m_);
        for (const int s : {+1, -1}) {
            const double pr = s > 0 ? p_plus : 1.0 - p_plus;
            if (pr <= 0.0) continue;
            msg_[i + 1] = s;
            dest_[i + 1] = dest_[i];
            dest_[i + 1].add_term(g_dest_[i + 1], s);
            rec(i + 1, chain * pr);
        }
    }

    const std::vector<double>& y_;
    double p_m_;
    std::size_t n_;
    std::vector<double> g_dest_;
    std::vector<std::vector<double>> g_pair_;
    std::vector<int> msg_;
    std::vector<VoteDistribution> dest_;
    double acc_ = 0.0;
};

// Walk for models whose link probabilities are all exactly 0 or 1 (unit
// disk): every reception indicator is deterministic, so votes are plain
// integers updated through adjacency lists. Each step multiplies the path
// weight by 1-p_m, p_m, or 1/2 depending only on the fused vote's sign, so
// one walk can tally the weight classes W[a][b] (a factors of 1-p_m, b of
// p_m, ties folded in) and then evaluate
//   Pr(M_D = +1 | layout) = sum_{a,b} W[a][b] (1-p_m)^a p_m^b
// for any number of malice probabilities. All terms are non-negative, so
// the regrouping loses nothing to cancellation. A broadcaster heard by no
// future relay and not by the destination contributes a factor
// (1-p_m) + p_m = 1 (or 1/2 + 1/2 on a tie), so both of its branches merge.
class DegenerateCspPolynomial {
  public:
    DegenerateCspPolynomial(const BroadcastLayout& layout, const ConnectionModel& model,
                            double road_length)
        : n_(layout.size()) {
        const auto& y = layout.positions;
        future_receivers_.assign(n_ + 1, {});
        dest_hears_.assign(n_ + 1, 0);
        vote_.assign(n_ + 1, 1);  // source message counted unconditionally
        for (std::size_t b = 1; b <= n_; ++b) {
            dest_hears_[b] = link_probability(model, road_length - y[b - 1]) == 1.0 ? 1 : 0;
            for (std::size_t k = b + 1; k <= n_; ++k)
                if (link_probability(model, std::abs(y[k - 1] - y[b - 1])) == 1.0)
                    future_receivers_[b].push_back(k);
        }
        dest_sum_ = link_probability(model, road_length) == 1.0 ? 1 : 0;
        weight_.assign((n_ + 1) * (n_ + 1), 0.0);
        rec(0, 0, 0, 1.0);
    }

    double evaluate(double p_m) const {
        std::vector<double> pow_norm(n_ + 1), pow_mal(n_ + 1);
        pow_norm[0] = pow_mal[0] = 1.0;
        for (std::size_t k = 1; k <= n_; ++k) {
            pow_norm[k] = pow_norm[k - 1] * (1.0 - p_m);
            pow_mal[k] = pow_mal[k - 1] * p_m;
        }
        double total = 0.0;
        for (std::size_t a = 0; a <= n_; ++a)
            for (std::size_t b = 0; a + b <= n_; ++b) {
                const double w = weight_[a * (n_ + 1) + b];
                if (w != 0.0) total += w * pow_norm[a] * pow_mal[b];
            }
        return total;
    }

  private:
    void rec(std::size_t i, std::size_t a, std::size_t b, double w) {
        if (i == n_) {
            const double f = dest_sum_ > 0 ? 1.0 : dest_sum_ == 0 ? 0.5 : 0.0;
            if (f != 0.0) weight_[a * (n_ + 1) + b] += w * f;
            return;
        }
        const std::size_t next = i + 1;
        const auto& adj = future_receivers_[next];
        if (adj.empty() && !dest_hears_[next]) {
            // nobody left can hear this broadcast; both message branches
            // merge with total factor 1
            rec(next, a, b, w);
            return;
        }
        const int v = vote_[next];
        for (const int s : {+1, -1}) {
            for (const std::size_t k : adj) vote_[k] += s;
            dest_sum_ += s * dest_hears_[next];
            if (v == 0)
                rec(next, a, b, w * 0.5);
            else if ((v > 0) == (s > 0))
                rec(next, a + 1, b, w);  // majority kept: factor 1 - p_m
            else
                rec(next, a, b + 1, w);  // majority flipped: factor p_m
            dest_sum_ -= s * dest_hears_[next];
            for (const std::size_t k : adj) vote_[k] -= s;
        }
    }

    std::size_t n_;
    std::vector<std::vector<std::size_t>> future_receivers_;
    std::vector<std::uint8_t> dest_hears_;
    std::vector<int> vote_;
    int dest_sum_ = 0;
    std::vector<double> weight_;  // W[a][b], flattened
};

inline double conditional_success_probability_general(const BroadcastLayout& layout,
                                                      const ConnectionModel& model, double p_m,
                                                      double road_length) {
    return GeneralCspWalk(layout, model, p_m, road_length).run();
}

}  // namespace detail

// Pr(M_D = +1 | broadcast locations y_1..y_n): the sum over message
// assignments of their chain probability times
// Pr(S > 0) + Pr(S = 0)/2 with S = h_0 + sum_i h_i m_i, h_0 ~
// Bernoulli(g(L)) and h_i ~ Bernoulli(g(L - y_i)). Equals the literal
// 2^(n+1) reception-vector expansion, at 2^n * n^2 cost instead of
// 2^(2n+1).
inline double conditional_success_probability(const BroadcastLayout& layout,
                                              const ConnectionModel& model, double p_m,
                                              double road_length) {
    detail::check_malice_prob(p_m);
    validate_layout(layout, road_length);
    if (is_degenerate(model))
        return detail::DegenerateCspPolynomial(layout, model, road_length).evaluate(p_m);
    return detail::conditional_success_probability_general(layout, model, p_m, road_length);
}

// Evaluation for several malice probabilities on one layout. Degenerate
// models share a single walk; others fall back to one walk per value.
inline std::vector<double> conditional_success_probability_multi(
    const BroadcastLayout& layout, const ConnectionModel& model,
    std::span<const double> malice_probs, double road_length) {
    validate_layout(layout, road_length);
    for (const double pm : malice_probs) detail::check_malice_prob(pm);
    std::vector<double> out;
    out.reserve(malice_probs.size());
    if (is_degenerate(model)) {
        const detail::DegenerateCspPolynomial poly(layout, model, road_length);
        for (const double pm : malice_probs) out.push_back(poly.evaluate(pm));
    } else {
        for (const double pm : malice_probs)
            out.push_back(
                detail::conditional_success_probability_general(layout, model, pm, road_length));
    }
    return out;
}

// Density over (0, L) discretized into uniform cells with midpoint values;
// sum(values) * step == 1. Sampling is inverse-CDF with a uniform draw
// inside the chosen cell.
struct DiscretizedDensity {
    double step = 0.0;
    std::vector<double> values;
    std::vector<double> cum;  // cumulative cell masses

    double midpoint(std::size_t k) const { return (static_cast<double>(k) + 0.5) * step; }
    double cell_mass(std::size_t k) const { return values[k] * step; }

    double sample(Engine& rng) const {
        const double u = uniform01(rng);
        const auto it = std::lower_bound(cum.begin(), cum.end(), u);
        const std::size_t k =
            it == cum.end() ? cum.size() - 1 : static_cast<std::size_t>(it - cum.begin());
        const double lo = k == 0 ? 0.0 : cum[k - 1];
        const double cell = cum[k] - lo;
        const double frac = cell > 0.0 ? (u - lo) / cell : 0.5;
        const double road = step * static_cast<double>(values.size());
        double y = (static_cast<double>(k) + frac) * step;
        y = std::min(y, std::nextafter(road, 0.0));
        y = std::max(y, std::nextafter(0.0, road));
        return y;
    }
};

namespace detail {

// Incrementally maintains prod_i (1 - g(|x - y_i|)) over the grid as
// broadcasters are appended, so each chain step costs one grid pass.
class ChainDensityGrid {
  public:
    ChainDensityGrid(const ConnectionModel& model, double road_length, double grid_step)
        : model_(model) {
        if (!(grid_step > 0.0)) throw InputError("grid step must be > 0");
        if (!(road_length > 0.0)) throw InputError("road length must be > 0");
        const double cells = std::ceil(road_length / grid_step - 1e-9);
        const std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(cells));
        step_ = road_length / static_cast<double>(count);
        survive_.assign(count, 1.0);
    }

    void add_broadcaster(double y) {
        for (std::size_t k = 0; k < survive_.size(); ++k) {
            const double x = (static_cast<double>(k) + 0.5) * step_;
            survive_[k] *= 1.0 - link_probability(model_, std::abs(x - y));
        }
    }

    DiscretizedDensity density() const {
        DiscretizedDensity d;
        d.step = step_;
        d.values.resize(survive_.size());
        double total = 0.0;
        for (std::size_t k = 0; k < survive_.size(); ++k) {
            d.values[k] = 1.0 - survive_[k];
            total += d.values[k] * step_;
        }
        if (!(total > 0.0))
            throw DisconnectedLayoutError(
                "next-broadcaster density is identically zero: no grid cell is reachable "
                "from the given broadcasters");
        d.cum.resize(survive_.size());
        double run = 0.0;
        for (std::size_t k = 0; k < survive_.size(); ++k) {
            d.values[k] /= total;
            run += d.values[k] * step_;
            d.cum[k] = run;
        }
        return d;
    }

  private:
    ConnectionModel model_;
    double step_ = 0.0;
    std::vector<double> survive_;
};

}  // namespace detail

// Conditional location density of the next broadcaster given the ones so
// far: proportional to 1 - prod_i (1 - g(|x - y_i|)) on (0, L). `prior`
// must include the source location y_0 (normally 0).
inline DiscretizedDensity next_broadcaster_density(std::span<const double> prior,
                                                   const ConnectionModel& model,
                                                   double road_length, double grid_step) {
    if (prior.empty()) throw InputError("prior must include the source location y0");
    detail::ChainDensityGrid grid(model, road_length, grid_step);
    for (const double y : prior) grid.add_broadcaster(y);
    return grid.density();
}

// Draws y_1..y_n sequentially by inverse CDF over the chain of
// next-broadcaster densities; the joint draw follows the chain-rule joint
// density up to grid discretization.
inline BroadcastLayout sample_layout(std::uint64_t n, const ConnectionModel& model,
                                     double road_length, double grid_step, Engine& rng) {
    if (n == 0) throw InputError("sample_layout needs n >= 1");
    detail::ChainDensityGrid grid(model, road_length, grid_step);
    grid.add_broadcaster(0.0);
    BroadcastLayout layout;
    layout.positions.reserve(n);
    for (std::uint64_t m = 0; m < n; ++m) {
        const double y = grid.density().sample(rng);
        layout.positions.push_back(y);
        if (m + 1 < n) grid.add_broadcaster(y);
    }
    return layout;
}

struct PerNBudget {
    enum class Mode { monte_carlo, quadrature };
    Mode mode = Mode::monte_carlo;
    std::uint64_t samples = 5000;  // layouts per vehicle count (Monte Carlo mode)
};

inline constexpr std::uint64_t kQuadratureMaxN = 3;

namespace detail {

inline std::vector<double> quadrature_p_succ_multi(std::uint64_t n, const Scenario& scenario,
                                                   std::span<const double> malice_probs,
                                                   double grid_step) {
    // nested midpoint-cell sums over the chain of location densities
    std::vector<double> prior{0.0};
    std::vector<double> acc(malice_probs.size(), 0.0);
    const auto rec = [&](const auto& self, std::uint64_t level, double mass) -> void {
        if (level == n) {
            BroadcastLayout layout;
            layout.positions.assign(prior.begin() + 1, prior.end());
            const auto values = conditional_success_probability_multi(
                layout, scenario.model, malice_probs, scenario.road_length);
            for (std::size_t i = 0; i < values.size(); ++i) acc[i] += mass * values[i];
            return;
        }
        const DiscretizedDensity d =
            next_broadcaster_density(prior, scenario.model, scenario.road_length, grid_step);
        for (std::size_t k = 0; k < d.values.size(); ++k) {
            const double cell = d.cell_mass(k);
            if (cell == 0.0) continue;
            prior.push_back(d.midpoint(k));
            self(self, level + 1, mass * cell);
            prior.pop_back();
        }
    };
    rec(rec, 0, 1.0);
    return acc;
}

inline Estimate summarize_layout_values(std::span<const double> values,
                                        std::uint64_t master_seed) {
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    const double se =
        values.size() > 1 ? std::sqrt(var / (static_cast<double>(values.size()) *
                                             static_cast<double>(values.size() - 1)))
                          : 0.0;
    Estimate e;
    e.method = Method::analytic;
    e.trials = values.size();
    e.master_seed = master_seed;
    e.p_succ = mean;
    e.std_error = se;
    e.ci_low = std::max(0.0, mean - kNormal95 * se);
    e.ci_high = std::min(1.0, mean + kNormal95 * se);
    return e;
}

}  // namespace detail

// Pr(M_D = +1 | N = n) for each requested malice probability, sharing
// layout samples (their distribution does not involve p_m) and, for
// degenerate models, a single weight-class walk per layout. n = 0 is the
// exact closed value g(L) + (1 - g(L)) / 2. With the quadrature flag and
// n <= 3, the location integral is evaluated by nested grid quadrature;
// otherwise it is Rao-Blackwellized Monte Carlo over sample_layout draws:
// the conditional success probability is exact per layout, so only the
// location dimensions carry sampling error.
inline std::vector<Estimate> analytic_p_succ_given_n_multi(
    std::uint64_t n, const Scenario& scenario, std::span<const double> malice_probs,
    const PerNBudget& budget, double grid_step, std::uint64_t master_seed, int threads = 0) {
    if (malice_probs.empty()) throw InputError("need at least one malice probability");
    if (n == 0) {
        const double g = link_probability(scenario.model, scenario.road_length);
        return std::vector<Estimate>(
            malice_probs.size(),
            make_exact_estimate(g + 0.5 * (1.0 - g), Method::analytic, master_seed));
    }
    if (budget.mode == PerNBudget::Mode::quadrature) {
        if (n > kQuadratureMaxN)
            throw InputError("quadrature is supported only for n <= " +
                             std::to_string(kQuadratureMaxN));
        const auto values =
            detail::quadrature_p_succ_multi(n, scenario, malice_probs, grid_step);
        std::vector<Estimate> out;
        out.reserve(values.size());
        for (const double v : values)
            out.push_back(make_exact_estimate(v, Method::analytic, master_seed));
        return out;
    }
    if (budget.samples == 0) throw InputError("layout sample budget must be >= 1");
    std::vector<std::vector<double>> values(malice_probs.size(),
                                            std::vector<double>(budget.samples));
    parallel_for(budget.samples, threads, [&](std::uint64_t j) {
        Engine rng = make_engine(master_seed, n, j);
        const BroadcastLayout layout =
            sample_layout(n, scenario.model, scenario.road_length, grid_step, rng);
        const auto per_pm = conditional_success_probability_multi(
            layout, scenario.model, malice_probs, scenario.road_length);
        for (std::size_t i = 0; i < per_pm.size(); ++i) values[i][j] = per_pm[i];
    });
    std::vector<Estimate> out;
    out.reserve(malice_probs.size());
    for (const auto& v : values) out.push_back(detail::summarize_layout_values(v, master_seed));
    return out;
}

inline Estimate analytic_p_succ_given_n(std::uint64_t n, const Scenario& scenario,
                                        const PerNBudget& budget, double grid_step,
                                        std::uint64_t master_seed, int threads = 0) {
    const double pm = scenario.malice_prob;
    return analytic_p_succ_given_n_multi(n, scenario, std::span<const double>(&pm, 1), budget,
                                         grid_step, master_seed, threads)[0];
}

struct AnalyticOptions {
    double tail_mass = 1e-6;          // Poisson truncation tail bound
    std::uint64_t samples_per_n = 5000;
    double grid_step = 1.0;           // meters, for densities and quadrature
    std::uint64_t max_exact_n = 12;   // exact-evaluation ceiling for the 2^n message walk
    std::uint64_t quadrature_max_n = 0;  // use quadrature for 1 <= n <= this
    int threads = 0;
};

// Poisson mixture sum_{n=0}^{n_max} Pr(N = n) * Pr(M_D = +1 | N = n) for
// each malice probability, with n_max from truncation_bound. The reported
// interval widens upward by the tail mass: the dropped terms contribute
// between 0 and tail_mass since every conditional probability lies in
// [0, 1]. Counts beyond the exact-evaluation ceiling are refused rather
// than silently approximated. scenario.malice_prob is ignored here in
// favor of the explicit list.
inline std::vector<Estimate> analytic_p_succ_multi(const Scenario& scenario,
                                                   std::span<const double> malice_probs,
                                                   const AnalyticOptions& opt,
                                                   std::uint64_t master_seed) {
    const std::uint64_t n_max =
        truncation_bound(scenario.density, scenario.road_length, opt.tail_mass);
    if (n_max > opt.max_exact_n)
        throw InfeasibleError(
            "analytic evaluation needs vehicle counts up to " + std::to_string(n_max) +
            ", beyond the exact-evaluation ceiling max_exact_n = " +
            std::to_string(opt.max_exact_n) +
            " (the message enumeration grows as 2^n; raise the ceiling or use simulation)");
    std::vector<double> p(malice_probs.size(), 0.0);
    std::vector<double> var(malice_probs.size(), 0.0);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        PerNBudget budget;
        if (n >= 1 && n <= opt.quadrature_max_n) budget.mode = PerNBudget::Mode::quadrature;
        budget.samples = opt.samples_per_n;
        const auto terms = analytic_p_succ_given_n_multi(n, scenario, malice_probs, budget,
                                                         opt.grid_step, master_seed,
                                                         opt.threads);
        const double w = poisson_pmf(scenario.density, scenario.road_length, n);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            p[i] += w * terms[i].p_succ;
            var[i] += w * w * terms[i].std_error * terms[i].std_error;
        }
    }
    std::vector<Estimate> out;
    out.reserve(malice_probs.size());
    for (std::size_t i = 0; i < malice_probs.size(); ++i) {
        Estimate e;
        e.method = Method::analytic;
        e.trials = opt.samples_per_n;
        e.master_seed = master_seed;
        e.p_succ = p[i];
        e.std_error = std::sqrt(var[i]);
        e.ci_low = std::max(0.0, p[i] - kNormal95 * e.std_error);
        e.ci_high = std::min(1.0, p[i] + kNormal95 * e.std_error + opt.tail_mass);
        out.push_back(e);
    }
    return out;
}

inline Estimate analytic_p_succ(const Scenario& scenario, const AnalyticOptions& opt,
                                std::uint64_t master_seed) {
    const double pm = scenario.malice_prob;
    return analytic_p_succ_multi(scenario, std::span<const double>(&pm, 1), opt,
                                 master_seed)[0];
}

}  // namespace vanetcast
