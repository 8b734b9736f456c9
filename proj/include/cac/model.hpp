#ifndef CAC_MODEL_HPP
#define CAC_MODEL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "cac/errors.hpp"

// Domain types for multi-class wireless traffic scenarios.
// Units are fixed throughout the library: bandwidth in kbit/s, time in seconds,
// rates in 1/s. All types are immutable after validation; all operations are
// pure functions.

namespace cac {

// Comparison slack for bandwidth arithmetic (kbit/s). Admission and floor
// checks treat values within this distance as equal.
inline constexpr double kBandwidthTol = 1e-9;

struct TrafficClass {
    std::string name;
    bool realtime = false;    // real-time => bandwidth non-adaptive
    double beta_r = 0.0;      // requested per-call bandwidth
    double gamma_n = 0.0;     // max degradable fraction when admitting a new call
    double gamma_h = 0.0;     // max degradable fraction when admitting a handover
    double mix = 0.0;         // arrival-mix fraction, sums to 1 over the scenario
    double duration_mean = 0.0;  // mean call duration at full requested bandwidth
};

struct SystemParams {
    double capacity = 0.0;    // total system bandwidth C
    std::vector<TrafficClass> classes;  // real-time classes first
    double dwell_mean = 0.0;  // mean cell dwell time 1/eta

    std::size_t class_count() const { return classes.size(); }
    // Number of leading real-time classes (q). Valid params keep them first.
    std::size_t realtime_count() const {
        std::size_t q = 0;
        while (q < classes.size() && classes[q].realtime) ++q;
        return q;
    }
    // Mix-weighted requested bandwidth, the chain's per-call average.
    double mean_requested_bandwidth() const;
    // Mix-weighted mean duration at full bandwidth, T(beta_r).
    double mean_full_duration() const;
};

// Minimum per-call allocations implied by the degradation factors.
struct BandwidthLevels {
    double beta_n = 0.0;  // floor to accept a new call
    double beta_h = 0.0;  // floor to accept a handover call
};

// All invariant violations, one message each; empty means valid.
std::vector<std::string> validation_errors(const SystemParams& params);
// Throws ValidationError listing every violation.
void validate(const SystemParams& params);

// beta_n = (1-gamma_n)*beta_r, beta_h = (1-gamma_h)*beta_r.
BandwidthLevels min_bandwidth_levels(const TrafficClass& cls);

// gamma = (beta_r - beta_a)/beta_r for an allocation 0 < beta_a <= beta_r.
double degradation_factor(double beta_r, double beta_a);

// eta/(eta+mu) with eta = 1/dwell_mean, mu = 1/call_duration_mean.
double handover_probability(double dwell_mean, double call_duration_mean);

// Channel release rate when every call holds its requested bandwidth:
// eta + 1/T(beta_r). This is mu_1, the per-call death rate below state N.
double base_release_rate(const SystemParams& params);

}  // namespace cac

#endif
