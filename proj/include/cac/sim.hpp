#ifndef CAC_SIM_HPP
#define CAC_SIM_HPP

#include <cstdint>

#include "cac/alloc.hpp"
#include "cac/chain.hpp"
#include "cac/model.hpp"

// Discrete-event simulator: Poisson new-call arrivals, exponential cell
// dwell, work-volume-based non-real-time completion under the time-varying
// allocation, and the full CAC of the allocation module.
//
// Handovers are exchanged between two statistically identical cells simulated
// side by side: a call whose dwell expires leaves its cell and is offered to
// the companion cell as a handover arrival, so the admission test sees a
// state independent of the bandwidth the departing call just freed, and the
// handover arrival rate emerges from flow balance with no fixed point.

namespace cac {

struct SimConfig {
    double lambda_n = 0.0;   // new-call arrival rate per cell
    double horizon = 0.0;    // simulated seconds per replication
    double warmup = 0.0;     // simulated seconds discarded before counting
    int replications = 1;
    std::uint64_t seed = 0;  // replication r uses seed + r
    NewCallFloorRule floor_rule = NewCallFloorRule::AnyClass;
};

struct SimReport {
    // Pooled event counts over all replications and both cells, post-warmup.
    long long offered_new = 0;
    long long blocked_new = 0;
    long long handover_attempts = 0;
    long long dropped_handover = 0;
    // Replication means with 95% t-interval half-widths.
    double p_block = 0.0, p_block_ci = 0.0;
    double p_drop = 0.0, p_drop_ci = 0.0;
    double utilization = 0.0;  // time average of occupied/C
    double handovers_per_admitted_call = 0.0;
    double forced_termination = 0.0;  // admitted new calls later dropped at a handover
    double max_work_rel_error = 0.0;  // worst |delivered-drawn|/drawn over completed calls
};

struct SimEvent {
    enum class Type { Arrival, DwellExpiry, Completion };
    double time = 0.0;
    Type type = Type::Arrival;
    int cell = 0;
    int class_index = 0;
    CallKind kind = CallKind::New;
    bool accepted = false;  // admission decision; completions report true
    double occupied = 0.0;  // bandwidth held in the affected cell afterwards
};

class SimEventSink {
public:
    virtual ~SimEventSink() = default;
    virtual void on_replication(int replication) = 0;
    virtual void on_event(const SimEvent& event) = 0;
};

// Runs cfg.replications independent replications and aggregates them.
// Deterministic: identical inputs give bit-identical reports.
SimReport run_simulation(const SystemParams& params, const SchemeSpec& scheme,
                         const SimConfig& cfg, SimEventSink* sink = nullptr);

}  // namespace cac

#endif
