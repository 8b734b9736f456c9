#include "cac/model.hpp"

#include <cmath>
#include <sstream>

namespace cac {

double SystemParams::mean_requested_bandwidth() const {
    double s = 0.0;
    for (const auto& c : classes) s += c.mix * c.beta_r;
    return s;
}

double SystemParams::mean_full_duration() const {
    double s = 0.0;
    for (const auto& c : classes) s += c.mix * c.duration_mean;
    return s;
}

std::vector<std::string> validation_errors(const SystemParams& params) {
    std::vector<std::string> errs;
    auto fail = [&errs](const std::string& m) { errs.push_back(m); };

    if (params.classes.empty()) fail("at least one traffic class is required");
    if (!(params.dwell_mean > 0.0)) fail("dwell_mean must be > 0");
    if (!(params.capacity > 0.0)) fail("capacity must be > 0");

    double mix_sum = 0.0;
    double max_beta = 0.0;
    bool seen_nonrealtime = false;
    for (std::size_t m = 0; m < params.classes.size(); ++m) {
        const TrafficClass& c = params.classes[m];
        std::ostringstream who;
        who << "class " << m << " ('" << c.name << "'): ";
        if (!(c.beta_r > 0.0)) fail(who.str() + "requested bandwidth must be > 0");
        if (!(c.duration_mean > 0.0)) fail(who.str() + "duration_mean must be > 0");
        if (c.mix < 0.0 || c.mix > 1.0) fail(who.str() + "mix must be in [0,1]");
        if (c.gamma_n < 0.0 || c.gamma_h < 0.0 || c.gamma_h >= 1.0 || c.gamma_n >= 1.0)
            fail(who.str() + "degradation factors must lie in [0,1)");
        if (c.gamma_n > c.gamma_h)
            fail(who.str() + "gamma_new must not exceed gamma_handover (handover priority premise)");
        if (c.realtime && (c.gamma_n != 0.0 || c.gamma_h != 0.0))
            fail(who.str() + "real-time classes must have zero degradation factors");
        if (c.realtime && seen_nonrealtime)
            fail(who.str() + "real-time classes must precede non-real-time classes");
        if (!c.realtime) seen_nonrealtime = true;
        mix_sum += c.mix;
        if (c.beta_r > max_beta) max_beta = c.beta_r;
    }
    if (!params.classes.empty() && std::abs(mix_sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "arrival-mix fractions must sum to 1 (got " << mix_sum << ")";
        fail(os.str());
    }
    if (!params.classes.empty() && !(params.capacity > max_beta))
        fail("capacity must exceed the largest requested per-call bandwidth");
    return errs;
}

void validate(const SystemParams& params) {
    auto errs = validation_errors(params);
    if (errs.empty()) return;
    std::ostringstream os;
    os << "invalid scenario (" << errs.size() << " violation" << (errs.size() == 1 ? "" : "s") << "):";
    for (const auto& e : errs) os << "\n  - " << e;
    throw ValidationError(os.str());
}

BandwidthLevels min_bandwidth_levels(const TrafficClass& cls) {
    return {(1.0 - cls.gamma_n) * cls.beta_r, (1.0 - cls.gamma_h) * cls.beta_r};
}

double degradation_factor(double beta_r, double beta_a) {
    if (!(beta_r > 0.0)) throw ParameterError("degradation_factor: beta_r must be > 0");
    if (!(beta_a > 0.0) || beta_a > beta_r + kBandwidthTol)
        throw ParameterError("degradation_factor: allocation must lie in (0, beta_r]");
    return (beta_r - beta_a) / beta_r;
}

double handover_probability(double dwell_mean, double call_duration_mean) {
    if (!(dwell_mean > 0.0) || !(call_duration_mean > 0.0))
        throw ParameterError("handover_probability: means must be > 0");
    const double eta = 1.0 / dwell_mean;
    const double mu = 1.0 / call_duration_mean;
    return eta / (eta + mu);
}

double base_release_rate(const SystemParams& params) {
    return 1.0 / params.dwell_mean + 1.0 / params.mean_full_duration();
}

}  // namespace cac
