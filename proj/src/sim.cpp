#include "cac/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <vector>

#include "cac/rng.hpp"
#include "cac/stats.hpp"

namespace cac {

namespace {

constexpr double kWorkTol = 1e-6;  // kbit; negative residual beyond this is a bug

struct Call {
    int class_index = 0;
    int cell = 0;
    bool realtime = false;
    bool tracked = false;         // admitted as a new call after warmup
    double remaining_work = 0.0;  // kbit, non-real-time only
    double drawn_work = 0.0;
    double delivered = 0.0;       // integral of the allocated rate so far
    std::uint32_t work_version = 0;
    std::uint32_t dwell_version = 0;
};

struct Event {
    double time = 0.0;
    int rank = 0;  // completion 0, dwell expiry 1, arrival 2
    std::uint64_t seq = 0;
    SimEvent::Type type = SimEvent::Type::Arrival;
    int cell = 0;
    std::uint64_t call_id = 0;
    std::uint32_t version = 0;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.seq > b.seq;
    }
};

struct RepStats {
    long long offered = 0, blocked = 0, admitted = 0;
    long long attempts = 0, dropped = 0;
    long long tracked_admitted = 0, tracked_dropped = 0;
    double occupied_area = 0.0;
    double max_work_rel_error = 0.0;
};

class Replication {
public:
    Replication(const SystemParams& eff, const SchemeSpec& scheme, const SimConfig& cfg,
                std::uint64_t seed, SimEventSink* sink)
        : params_(eff), scheme_(scheme), cfg_(cfg), rng_(seed), sink_(sink) {
        cells_[0] = empty_state(params_);
        cells_[1] = empty_state(params_);
        double acc = 0.0;
        for (const auto& c : params_.classes) mix_cdf_.push_back(acc += c.mix);
    }

    RepStats run() {
        schedule(rng_.exponential(1.0 / cfg_.lambda_n), SimEvent::Type::Arrival, 0, 0, 0);
        schedule(rng_.exponential(1.0 / cfg_.lambda_n), SimEvent::Type::Arrival, 1, 0, 0);
        while (!queue_.empty() && queue_.top().time <= cfg_.horizon) {
            const Event ev = queue_.top();
            queue_.pop();
            integrate_to(ev.time);
            advance_work(ev.time);
            now_ = ev.time;
            switch (ev.type) {
                case SimEvent::Type::Arrival:
                    on_arrival(ev);
                    break;
                case SimEvent::Type::DwellExpiry:
                    on_dwell_expiry(ev);
                    break;
                case SimEvent::Type::Completion:
                    on_completion(ev);
                    break;
            }
        }
        integrate_to(cfg_.horizon);
        return stats_;
    }

private:
    bool post_warmup() const { return now_ >= cfg_.warmup; }

    void schedule(double t, SimEvent::Type type, int cell, std::uint64_t id, std::uint32_t ver) {
        const int rank = type == SimEvent::Type::Completion ? 0
                       : type == SimEvent::Type::DwellExpiry ? 1 : 2;
        queue_.push({t, rank, next_seq_++, type, cell, id, ver});
    }

    void integrate_to(double t) {
        const double from = std::max(last_time_, cfg_.warmup);
        if (t > from)
            stats_.occupied_area +=
                (occupied_bandwidth(cells_[0]) + occupied_bandwidth(cells_[1])) * (t - from);
        last_time_ = std::max(last_time_, t);
    }

    void advance_work(double t) {
        const double dt = t - work_time_;
        if (dt > 0.0) {
            for (auto& [id, call] : calls_) {
                if (call.realtime) continue;
                const double rate = cells_[call.cell].alloc[call.class_index];
                call.remaining_work -= dt * rate;
                call.delivered += dt * rate;
            }
        }
        work_time_ = t;
    }

    // Install a new census/allocation in a cell, rescheduling the projected
    // completion of every non-real-time call whose class rate changed.
    void apply_state(int cell, CellState next) {
        const std::vector<double> before = cells_[cell].alloc;
        cells_[cell] = std::move(next);
        check_state(cells_[cell], params_);
        for (auto& [id, call] : calls_) {
            if (call.cell != cell || call.realtime) continue;
            const double rate = cells_[cell].alloc[call.class_index];
            if (std::abs(rate - before[call.class_index]) <= kBandwidthTol) continue;
            call.work_version += 1;
            schedule(now_ + std::max(call.remaining_work, 0.0) / rate, SimEvent::Type::Completion,
                     cell, id, call.work_version);
        }
    }

    AdmitOutcome try_admit(const CellState& state, std::size_t class_index, CallKind kind) {
        if (scheme_.kind == SchemeKind::HardQoSGuard && kind == CallKind::New) {
            // Guard band: the top guard_fraction of capacity is handover-only.
            const double usable = params_.capacity * (1.0 - scheme_.guard_fraction);
            if (params_.classes[class_index].beta_r >
                usable - occupied_bandwidth(state) + kBandwidthTol)
                return {};
        }
        return admit(state, params_, class_index, kind, cfg_.floor_rule);
    }

    void emit(SimEvent::Type type, int cell, int class_index, CallKind kind, bool accepted) {
        if (sink_ == nullptr) return;
        sink_->on_event({now_, type, cell, class_index, kind, accepted,
                         occupied_bandwidth(cells_[cell])});
    }

    void on_arrival(const Event& ev) {
        schedule(now_ + rng_.exponential(1.0 / cfg_.lambda_n), SimEvent::Type::Arrival, ev.cell, 0, 0);
        const int m = static_cast<int>(rng_.pick(mix_cdf_));
        const TrafficClass& cls = params_.classes[m];
        if (post_warmup()) stats_.offered += 1;
        AdmitOutcome outcome = try_admit(cells_[ev.cell], m, CallKind::New);
        if (!outcome.accepted) {
            if (post_warmup()) stats_.blocked += 1;
            emit(SimEvent::Type::Arrival, ev.cell, m, CallKind::New, false);
            return;
        }
        if (post_warmup()) {
            stats_.admitted += 1;
            stats_.tracked_admitted += 1;
        }
        apply_state(ev.cell, std::move(*outcome.new_state));

        Call call;
        call.class_index = m;
        call.cell = ev.cell;
        call.realtime = cls.realtime;
        call.tracked = post_warmup();
        if (!cls.realtime) {
            call.drawn_work = rng_.exponential(cls.beta_r * cls.duration_mean);
            call.remaining_work = call.drawn_work;
        }
        const std::uint64_t id = next_call_id_++;
        calls_[id] = call;
        if (cls.realtime)
            schedule(now_ + rng_.exponential(cls.duration_mean), SimEvent::Type::Completion,
                     ev.cell, id, 0);
        else
            schedule(now_ + call.remaining_work / cells_[ev.cell].alloc[m],
                     SimEvent::Type::Completion, ev.cell, id, 0);
        schedule(now_ + rng_.exponential(params_.dwell_mean), SimEvent::Type::DwellExpiry,
                 ev.cell, id, 0);
        emit(SimEvent::Type::Arrival, ev.cell, m, CallKind::New, true);
    }

    void on_dwell_expiry(const Event& ev) {
        auto it = calls_.find(ev.call_id);
        if (it == calls_.end() || it->second.dwell_version != ev.version) return;
        Call& call = it->second;
        const int from = call.cell;
        const int to = 1 - from;
        const int m = call.class_index;
        if (post_warmup()) stats_.attempts += 1;

        const CellState left = remove_call(cells_[from], params_, m);
        AdmitOutcome outcome = try_admit(cells_[to], m, CallKind::Handover);
        apply_state(from, left);
        if (!outcome.accepted) {
            if (post_warmup()) stats_.dropped += 1;
            if (call.tracked) stats_.tracked_dropped += 1;
            emit(SimEvent::Type::DwellExpiry, to, m, CallKind::Handover, false);
            calls_.erase(it);
            return;
        }
        call.cell = to;
        call.dwell_version += 1;
        apply_state(to, std::move(*outcome.new_state));
        if (!call.realtime) {
            call.work_version += 1;
            schedule(now_ + std::max(call.remaining_work, 0.0) / cells_[to].alloc[m],
                     SimEvent::Type::Completion, to, ev.call_id, call.work_version);
        }
        // Real-time calls keep their original completion deadline; the
        // memoryless residual makes that distributionally identical to a
        // fresh draw.
        schedule(now_ + rng_.exponential(params_.dwell_mean), SimEvent::Type::DwellExpiry, to,
                 ev.call_id, call.dwell_version);
        emit(SimEvent::Type::DwellExpiry, to, m, CallKind::Handover, true);
    }

    void on_completion(const Event& ev) {
        auto it = calls_.find(ev.call_id);
        if (it == calls_.end() || it->second.work_version != ev.version) return;
        Call& call = it->second;
        const int cell = call.cell;
        const int m = call.class_index;
        if (!call.realtime) {
            if (call.remaining_work < -kWorkTol) {
                std::ostringstream os;
                os << "negative remaining work " << call.remaining_work << " kbit at completion";
                throw InternalError(os.str());
            }
            if (call.drawn_work > 0.0)
                stats_.max_work_rel_error =
                    std::max(stats_.max_work_rel_error,
                             std::abs(call.delivered - call.drawn_work) / call.drawn_work);
        }
        calls_.erase(it);
        apply_state(cell, remove_call(cells_[cell], params_, m));
        emit(SimEvent::Type::Completion, cell, m, CallKind::New, true);
    }

    const SystemParams& params_;
    const SchemeSpec scheme_;
    const SimConfig cfg_;
    Rng rng_;
    SimEventSink* sink_;
    CellState cells_[2];
    std::map<std::uint64_t, Call> calls_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    std::vector<double> mix_cdf_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_call_id_ = 0;
    double now_ = 0.0;
    double last_time_ = 0.0;  // utilization integration frontier
    double work_time_ = 0.0;  // work-advance frontier
    RepStats stats_;
};

double ratio(long long num, long long den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

}  // namespace

SimReport run_simulation(const SystemParams& params, const SchemeSpec& scheme,
                         const SimConfig& cfg, SimEventSink* sink) {
    if (!(cfg.lambda_n > 0.0)) throw ParameterError("simulation requires lambda_n > 0");
    if (!(cfg.horizon > cfg.warmup) || cfg.warmup < 0.0)
        throw ParameterError("simulation requires horizon > warmup >= 0");
    if (cfg.replications < 1) throw ParameterError("simulation requires replications >= 1");
    const SystemParams effective = effective_params(params, scheme);
    validate(effective);
    if (base_capacity(effective) < 1)
        throw ParameterError("degenerate scenario: capacity holds no call at the average bandwidth");

    std::vector<double> p_block, p_drop, util, hpac, ft;
    SimReport report;
    for (int r = 0; r < cfg.replications; ++r) {
        if (sink != nullptr) sink->on_replication(r);
        Replication rep(effective, scheme, cfg, cfg.seed + static_cast<std::uint64_t>(r), sink);
        const RepStats st = rep.run();
        report.offered_new += st.offered;
        report.blocked_new += st.blocked;
        report.handover_attempts += st.attempts;
        report.dropped_handover += st.dropped;
        report.max_work_rel_error = std::max(report.max_work_rel_error, st.max_work_rel_error);
        p_block.push_back(ratio(st.blocked, st.offered));
        p_drop.push_back(ratio(st.dropped, st.attempts));
        util.push_back(st.occupied_area /
                       (2.0 * params.capacity * (cfg.horizon - cfg.warmup)));
        hpac.push_back(ratio(st.attempts, st.admitted));
        ft.push_back(ratio(st.tracked_dropped, st.tracked_admitted));
    }
    report.p_block = mean(p_block);
    report.p_block_ci = ci_halfwidth_95(p_block);
    report.p_drop = mean(p_drop);
    report.p_drop_ci = ci_halfwidth_95(p_drop);
    report.utilization = mean(util);
    report.handovers_per_admitted_call = mean(hpac);
    report.forced_termination = mean(ft);
    return report;
}

}  // namespace cac
