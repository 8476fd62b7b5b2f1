#pragma once

#include <cmath>
#include <string>

#include "vanetcast/errors.hpp"

namespace vanetcast {

// Wireless connection model g(x): the probability that a transmission is
// received at Euclidean distance x. Two variants:
//
//   unit disk    g(x) = 1 for x <= r, 0 beyond
//   log-normal   g(x) = erfc(10*alpha*log10(x/r) / (sqrt(2)*sigma)) / 2
//
// Both are monotone non-increasing with g -> 0 as x -> infinity. g(0) is
// defined as 1 (continuity of the log-normal limit; the unit-disk case is
// only stated on x > 0). erfc comes from <cmath> (libm, accurate to a few
// ulp, far below the 1e-7 absolute error we need) and avoids the
// cancellation of 1 - erf for large arguments.
struct ConnectionModel {
    enum class Kind { unit_disk, log_normal };

    Kind kind = Kind::unit_disk;
    double range_m = 0.0;             // r
    double path_loss_exponent = 0.0;  // alpha, log-normal only
    double shadowing_stddev = 0.0;    // sigma in dB, log-normal only

    static ConnectionModel unit_disk(double range_m) {
        if (!(range_m > 0.0)) throw InputError("unit disk range must be > 0");
        ConnectionModel m;
        m.kind = Kind::unit_disk;
        m.range_m = range_m;
        return m;
    }

    // sigma = 0 is rejected: that regime is exactly the unit disk model.
    static ConnectionModel log_normal(double range_m, double path_loss_exponent,
                                      double shadowing_stddev) {
        if (!(range_m > 0.0)) throw InputError("log-normal range must be > 0");
        if (!(path_loss_exponent > 0.0)) throw InputError("path loss exponent must be > 0");
        if (!(shadowing_stddev > 0.0))
            throw InputError("shadowing stddev must be > 0 (use unit_disk for sigma = 0)");
        ConnectionModel m;
        m.kind = Kind::log_normal;
        m.range_m = range_m;
        m.path_loss_exponent = path_loss_exponent;
        m.shadowing_stddev = shadowing_stddev;
        return m;
    }
};

inline double link_probability(const ConnectionModel& model, double distance) {
    if (distance < 0.0) throw InputError("distance must be >= 0");
    if (distance == 0.0) return 1.0;
    if (model.kind == ConnectionModel::Kind::unit_disk)
        return distance <= model.range_m ? 1.0 : 0.0;
    const double z = 10.0 * model.path_loss_exponent * std::log10(distance / model.range_m) /
                     (std::sqrt(2.0) * model.shadowing_stddev);
    return 0.5 * std::erfc(z);
}

// True when every link probability this model can produce is exactly 0 or 1.
inline bool is_degenerate(const ConnectionModel& model) {
    return model.kind == ConnectionModel::Kind::unit_disk;
}

inline std::string model_name(const ConnectionModel& model) {
    return model.kind == ConnectionModel::Kind::unit_disk ? "unit_disk" : "log_normal";
}

}  // namespace vanetcast
