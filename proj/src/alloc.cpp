#include "cac/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cac {

namespace {

void require_shape(const CellState& state, const SystemParams& params) {
    if (state.counts.size() != params.classes.size() || state.alloc.size() != params.classes.size())
        throw ParameterError("cell state shape does not match the scenario's class list");
}

}  // namespace

CellState empty_state(const SystemParams& params) {
    CellState s;
    s.counts.assign(params.classes.size(), 0);
    s.alloc.reserve(params.classes.size());
    for (const auto& c : params.classes) s.alloc.push_back(c.beta_r);
    return s;
}

std::vector<double> allocation_for_census(const std::vector<double>& census,
                                          const SystemParams& params) {
    const std::size_t M = params.classes.size();
    if (census.size() != M) throw ParameterError("census size does not match the class list");

    std::vector<double> alloc(M);
    double realtime_used = 0.0;
    double nrt_requested = 0.0;
    double floors = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        const TrafficClass& c = params.classes[m];
        alloc[m] = c.beta_r;  // real-time allocation; also the rest value for empty classes
        if (c.realtime) {
            realtime_used += census[m] * c.beta_r;
            floors += census[m] * c.beta_r;
        } else {
            nrt_requested += census[m] * c.beta_r;
            floors += census[m] * (1.0 - c.gamma_h) * c.beta_r;
        }
    }
    if (floors > params.capacity + kBandwidthTol) {
        std::ostringstream os;
        os << "census does not fit at the degradation floors (" << floors << " > " << params.capacity << ")";
        throw InfeasibleStateError(os.str());
    }

    const double residual = params.capacity - realtime_used;
    if (nrt_requested <= 0.0 || residual >= nrt_requested) return alloc;  // X >= 1

    // Proportional share with per-class cap at beta_r; redistributes the
    // leftover of capped classes among the rest. Terminates in <= M rounds.
    std::vector<bool> capped(M, false);
    for (;;) {
        double denom = 0.0;
        double capped_used = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            const TrafficClass& c = params.classes[m];
            if (c.realtime || census[m] <= 0.0) continue;
            if (capped[m])
                capped_used += census[m] * c.beta_r;
            else
                denom += census[m] * (1.0 - c.gamma_h) * c.beta_r;
        }
        if (denom <= 0.0) break;  // everyone capped: all at beta_r already
        const double factor = (residual - capped_used) / denom;
        bool newly_capped = false;
        for (std::size_t m = 0; m < M; ++m) {
            const TrafficClass& c = params.classes[m];
            if (c.realtime || census[m] <= 0.0 || capped[m]) continue;
            if (factor * (1.0 - c.gamma_h) * c.beta_r > c.beta_r) {
                capped[m] = true;
                newly_capped = true;
            }
        }
        if (newly_capped) continue;
        for (std::size_t m = 0; m < M; ++m) {
            const TrafficClass& c = params.classes[m];
            if (c.realtime || census[m] <= 0.0 || capped[m]) continue;
            alloc[m] = factor * (1.0 - c.gamma_h) * c.beta_r;
        }
        break;
    }
    return alloc;
}

double residual_fraction(const CellState& state, const SystemParams& params) {
    require_shape(state, params);
    double realtime_used = 0.0;
    double nrt_requested = 0.0;
    for (std::size_t m = 0; m < params.classes.size(); ++m) {
        const TrafficClass& c = params.classes[m];
        if (c.realtime)
            realtime_used += state.counts[m] * c.beta_r;
        else
            nrt_requested += state.counts[m] * c.beta_r;
    }
    if (nrt_requested <= 0.0)
        throw UndefinedResidualError("residual fraction requires at least one non-real-time call");
    return (params.capacity - realtime_used) / nrt_requested;
}

CellState reallocate(const CellState& state, const SystemParams& params) {
    require_shape(state, params);
    std::vector<double> census(state.counts.begin(), state.counts.end());
    CellState out;
    out.counts = state.counts;
    out.alloc = allocation_for_census(census, params);
    return out;
}

double releasable_bandwidth(const CellState& state, const SystemParams& params, CallKind kind) {
    require_shape(state, params);
    double total = 0.0;
    for (std::size_t m = 0; m < params.classes.size(); ++m) {
        const TrafficClass& c = params.classes[m];
        if (c.realtime || state.counts[m] == 0) continue;
        const BandwidthLevels lv = min_bandwidth_levels(c);
        const double floor = kind == CallKind::Handover ? lv.beta_h : lv.beta_n;
        total += state.counts[m] * std::max(0.0, state.alloc[m] - floor);
    }
    return total;
}

double occupied_bandwidth(const CellState& state) {
    double total = 0.0;
    for (std::size_t m = 0; m < state.counts.size(); ++m) total += state.counts[m] * state.alloc[m];
    return total;
}

double available_bandwidth(const CellState& state, const SystemParams& params, CallKind kind) {
    require_shape(state, params);
    double total = params.capacity;
    for (std::size_t m = 0; m < params.classes.size(); ++m) {
        const TrafficClass& c = params.classes[m];
        if (c.realtime) {
            total -= state.counts[m] * c.beta_r;
        } else {
            const BandwidthLevels lv = min_bandwidth_levels(c);
            total -= state.counts[m] * (kind == CallKind::Handover ? lv.beta_h : lv.beta_n);
        }
    }
    return total;
}

double required_bandwidth(const TrafficClass& cls, CallKind kind) {
    if (cls.realtime) return cls.beta_r;
    return kind == CallKind::Handover ? (1.0 - cls.gamma_h) * cls.beta_r
                                      : (1.0 - cls.gamma_n) * cls.beta_r;
}

AdmitOutcome admit(const CellState& state, const SystemParams& params,
                   std::size_t class_index, CallKind kind, NewCallFloorRule rule) {
    require_shape(state, params);
    if (class_index >= params.classes.size())
        throw ParameterError("admit: class index out of range");

    // New calls are shut out while some active adaptive class is already
    // degraded to (or below) its new-call floor; equality rejects. Classes
    // with gamma_n = 0 have beta_n = beta_r and count only when actually
    // degraded, otherwise every undegraded call would trip the rule.
    if (kind == CallKind::New) {
        for (std::size_t m = 0; m < params.classes.size(); ++m) {
            const TrafficClass& c = params.classes[m];
            if (c.realtime || state.counts[m] == 0) continue;
            if (rule == NewCallFloorRule::ArrivingClass && m != class_index) continue;
            const BandwidthLevels lv = min_bandwidth_levels(c);
            if (state.alloc[m] < c.beta_r - kBandwidthTol && state.alloc[m] <= lv.beta_n + kBandwidthTol)
                return {};
        }
    }

    const TrafficClass& cls = params.classes[class_index];
    const double spare = params.capacity - occupied_bandwidth(state);
    bool accept = cls.beta_r <= spare + kBandwidthTol;
    if (!accept) {
        const double required = required_bandwidth(cls, kind);
        const double available = available_bandwidth(state, params, kind);
        accept = required <= available + kBandwidthTol;
    }
    if (!accept) return {};

    CellState next = state;
    next.counts[class_index] += 1;
    next = reallocate(next, params);
    check_state(next, params);
    AdmitOutcome out;
    out.accepted = true;
    out.granted = next.alloc[class_index];
    out.new_state = std::move(next);
    return out;
}

CellState remove_call(const CellState& state, const SystemParams& params, std::size_t class_index) {
    require_shape(state, params);
    if (class_index >= params.classes.size() || state.counts[class_index] <= 0)
        throw ParameterError("remove_call: no active call of that class");
    CellState next = state;
    next.counts[class_index] -= 1;
    return reallocate(next, params);
}

void check_state(const CellState& state, const SystemParams& params) {
    require_shape(state, params);
    for (std::size_t m = 0; m < params.classes.size(); ++m) {
        const TrafficClass& c = params.classes[m];
        if (state.counts[m] < 0) throw InternalError("negative call count");
        if (state.counts[m] == 0) continue;
        if (c.realtime) {
            if (std::abs(state.alloc[m] - c.beta_r) > kBandwidthTol)
                throw InternalError("real-time class not at its requested bandwidth");
        } else {
            const BandwidthLevels lv = min_bandwidth_levels(c);
            if (state.alloc[m] < lv.beta_h - kBandwidthTol || state.alloc[m] > c.beta_r + kBandwidthTol)
                throw InternalError("allocation outside [beta_h, beta_r] for class '" + c.name + "'");
        }
    }
    if (occupied_bandwidth(state) > params.capacity + kBandwidthTol)
        throw InternalError("cell oversubscribed");
}

}  // namespace cac
