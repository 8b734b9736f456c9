#ifndef CAC_TESTS_ORACLES_HPP
#define CAC_TESTS_ORACLES_HPP

// Independent reference implementations used only by tests. These must stay
// decoupled from the library's computation paths: the Erlang-B recurrence
// checks the chain, the Kaufman-Roberts recursion checks the simulator, and
// the direct-evaluation helpers check the allocation engine.

#include <cmath>
#include <vector>

#include "cac/model.hpp"

namespace oracles {

// Classical stable recurrence B(0)=1, B(k) = a B(k-1) / (k + a B(k-1)).
inline double erlang_b(int servers, double offered) {
    double b = 1.0;
    for (int k = 1; k <= servers; ++k) b = offered * b / (k + offered * b);
    return b;
}

// Direct evaluation of the proportional-share allocation for one round,
// without caps; callers handle cap cases explicitly where tested.
inline double proportional_share(double residual, double weight_sum, double own_weight) {
    return residual / weight_sum * own_weight;
}

// Occupancy distribution of a multi-class loss system by the Kaufman-Roberts
// recursion on integer bandwidth units.
struct KaufmanRoberts {
    std::vector<double> occupancy;    // P(j units busy)
    std::vector<double> per_class_blocking;
};

inline KaufmanRoberts kaufman_roberts(int capacity_units, const std::vector<int>& class_units,
                                      const std::vector<double>& offered_per_class) {
    std::vector<double> q(capacity_units + 1, 0.0);
    q[0] = 1.0;
    for (int j = 1; j <= capacity_units; ++j) {
        double s = 0.0;
        for (std::size_t m = 0; m < class_units.size(); ++m)
            if (j - class_units[m] >= 0)
                s += offered_per_class[m] * class_units[m] * q[j - class_units[m]];
        q[j] = s / j;
    }
    double total = 0.0;
    for (double x : q) total += x;
    for (double& x : q) x /= total;
    KaufmanRoberts out;
    out.occupancy = q;
    for (std::size_t m = 0; m < class_units.size(); ++m) {
        double blocked = 0.0;
        for (int j = capacity_units - class_units[m] + 1; j <= capacity_units; ++j)
            blocked += q[j];
        out.per_class_blocking.push_back(blocked);
    }
    return out;
}

// Aggregate (p_block, p_drop) of a hard-QoS multi-class loss system with
// handover recirculation: class-wise flow balance iterated to a fixed point.
inline std::pair<double, double> kaufman_roberts_hard_qos(
    const cac::SystemParams& params, double lambda_n, int units_per_kbps) {
    const int cap = static_cast<int>(std::lround(params.capacity * units_per_kbps));
    std::vector<int> units;
    for (const auto& c : params.classes)
        units.push_back(static_cast<int>(std::lround(c.beta_r * units_per_kbps)));
    const double mu_c = 1.0 / params.dwell_mean + 1.0 / params.mean_full_duration();
    const double p_h = (1.0 / params.dwell_mean) / mu_c;

    std::vector<double> lambda_h(params.classes.size());
    for (std::size_t m = 0; m < params.classes.size(); ++m)
        lambda_h[m] = lambda_n * params.classes[m].mix * p_h / (1.0 - p_h);
    std::vector<double> blocking;
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<double> offered;
        for (std::size_t m = 0; m < params.classes.size(); ++m)
            offered.push_back((lambda_n * params.classes[m].mix + lambda_h[m]) / mu_c);
        blocking = kaufman_roberts(cap, units, offered).per_class_blocking;
        double worst = 0.0;
        for (std::size_t m = 0; m < params.classes.size(); ++m) {
            const double b = blocking[m];
            const double next =
                lambda_n * params.classes[m].mix * p_h * (1.0 - b) / (1.0 - p_h * (1.0 - b));
            worst = std::max(worst, std::abs(next - lambda_h[m]));
            lambda_h[m] = next;
        }
        if (worst < 1e-13) break;
    }
    double p_block = 0.0;
    for (std::size_t m = 0; m < params.classes.size(); ++m)
        p_block += params.classes[m].mix * blocking[m];
    double handover_total = 0.0, dropped = 0.0;
    for (std::size_t m = 0; m < params.classes.size(); ++m) {
        handover_total += lambda_h[m];
        dropped += lambda_h[m] * blocking[m];
    }
    return {p_block, dropped / handover_total};
}

}  // namespace oracles

#endif
