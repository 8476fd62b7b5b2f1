#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "vanetcast/errors.hpp"

namespace vanetcast {

enum class Method { simulation, analytic, oracle };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::simulation: return "simulation";
        case Method::analytic: return "analytic";
        case Method::oracle: return "oracle";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    if (s == "simulation") return Method::simulation;
    if (s == "analytic") return Method::analytic;
    if (s == "oracle") return Method::oracle;
    throw InputError("unknown method '" + s + "' (expected simulation|analytic|oracle)");
}

// z for a two-sided 95% normal interval.
inline constexpr double kNormal95 = 1.96;

// A point estimate of the correct-reception probability with its sampling
// uncertainty. `trials` is the Monte Carlo trial count for simulation, the
// per-count layout sample budget for the analytic method, and 1 for exact
// (oracle / closed-form) values.
struct Estimate {
    double p_succ = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t trials = 1;
    Method method = Method::simulation;
    std::uint64_t master_seed = 0;
};

inline Estimate make_binomial_estimate(std::uint64_t successes, std::uint64_t trials,
                                       std::uint64_t master_seed) {
    if (trials == 0) throw InputError("trials must be >= 1");
    Estimate e;
    e.method = Method::simulation;
    e.trials = trials;
    e.master_seed = master_seed;
    e.p_succ = static_cast<double>(successes) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.p_succ * (1.0 - e.p_succ) / static_cast<double>(trials));
    e.ci_low = std::max(0.0, e.p_succ - kNormal95 * e.std_error);
    e.ci_high = std::min(1.0, e.p_succ + kNormal95 * e.std_error);
    return e;
}

inline Estimate make_exact_estimate(double p, Method method, std::uint64_t master_seed) {
    Estimate e;
    e.method = method;
    e.trials = 1;
    e.master_seed = master_seed;
    e.p_succ = p;
    e.std_error = 0.0;
    e.ci_low = p;
    e.ci_high = p;
    return e;
}

}  // namespace vanetcast
