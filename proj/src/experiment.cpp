#include "cac/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

namespace cac {

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

KpiRow analytical_row(const SchemeSpec& scheme, double lambda_n, const ExperimentConfig& cfg) {
    const ChainSolution sol = solve_fixed_point(lambda_n, cfg.system, scheme);
    const SystemParams eff = effective_params(cfg.system, scheme);
    const double p_h = handover_probability(eff.dwell_mean, eff.mean_full_duration());
    KpiRow row;
    row.scheme = scheme_name(scheme.kind);
    row.lambda_n = lambda_n;
    row.source = KpiSource::Analytical;
    row.p_block = sol.p_block;
    row.p_drop = sol.p_drop;
    row.utilization = analytical_utilization(sol, cfg.system);
    row.handover_rate = handover_rate(lambda_n, sol.lambda_h, sol.p_block);
    row.forced_termination = forced_termination(
        sol.p_block, sol.p_drop, p_h, cfg.options.forced_termination_includes_blocking);
    row.n_base = sol.n_base;
    row.s_extra = sol.s_extra;
    row.l_newcall = sol.l_newcall;
    row.fp_iterations = sol.iterations;
    return row;
}

KpiRow simulated_row(const SchemeSpec& scheme, double lambda_n, const ExperimentConfig& cfg,
                     SimEventSink* trace) {
    SimConfig sim;
    sim.lambda_n = lambda_n;
    sim.horizon = cfg.sim->horizon;
    sim.warmup = cfg.sim->warmup;
    sim.replications = cfg.sim->replications;
    sim.seed = cfg.sim->seed;
    sim.floor_rule = cfg.options.newcall_floor_rule;
    const SimReport report = run_simulation(cfg.system, scheme, sim, trace);
    const SystemParams eff = effective_params(cfg.system, scheme);
    KpiRow row;
    row.scheme = scheme_name(scheme.kind);
    row.lambda_n = lambda_n;
    row.source = KpiSource::Simulated;
    row.p_block = report.p_block;
    row.p_drop = report.p_drop;
    row.utilization = report.utilization;
    row.handover_rate = report.handovers_per_admitted_call;
    row.forced_termination = cfg.options.forced_termination_includes_blocking
                                 ? report.p_block +
                                       (1.0 - report.p_block) * report.forced_termination
                                 : report.forced_termination;
    row.n_base = base_capacity(eff);
    row.s_extra = extra_states(eff);
    row.l_newcall = newcall_states(eff);
    row.fp_iterations = 0;
    row.has_ci = true;
    row.p_block_ci = report.p_block_ci;
    row.p_drop_ci = report.p_drop_ci;
    return row;
}

std::string csv_header(bool with_ci) {
    std::string header =
        "scheme,lambda_n,source,p_block,p_drop,utilization,handover_rate,"
        "forced_termination,n_base,s_extra,l_newcall,fp_iterations";
    if (with_ci) header += ",p_block_ci,p_drop_ci";
    return header;
}

std::string csv_line(const KpiRow& row, bool with_ci) {
    std::string line = row.scheme;
    line += ',' + format_number(row.lambda_n);
    line += row.source == KpiSource::Analytical ? ",Analytical" : ",Simulated";
    line += ',' + format_number(row.p_block);
    line += ',' + format_number(row.p_drop);
    line += ',' + format_number(row.utilization);
    line += ',' + format_number(row.handover_rate);
    line += ',' + format_number(row.forced_termination);
    line += ',' + std::to_string(row.n_base);
    line += ',' + std::to_string(row.s_extra);
    line += ',' + std::to_string(row.l_newcall);
    line += ',' + std::to_string(row.fp_iterations);
    if (with_ci) {
        if (row.has_ci) {
            line += ',' + format_number(row.p_block_ci);
            line += ',' + format_number(row.p_drop_ci);
        } else {
            line += ",,";
        }
    }
    return line;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log,
                   SimEventSink* trace, bool analytical_only) {
    const bool with_sim = !analytical_only && cfg.sim.has_value();
    std::vector<SchemeSpec> schemes = cfg.schemes;
    std::sort(schemes.begin(), schemes.end(), [](const SchemeSpec& a, const SchemeSpec& b) {
        return scheme_name(a.kind) < scheme_name(b.kind);
    });

    csv << csv_header(with_sim) << '\n';
    auto* tracer = dynamic_cast<TraceWriter*>(trace);
    for (const SchemeSpec& scheme : schemes) {
        for (double lambda_n : cfg.sweep) {
            try {
                csv << csv_line(analytical_row(scheme, lambda_n, cfg), with_sim) << '\n';
                if (with_sim) {
                    if (tracer != nullptr) tracer->set_context(scheme_name(scheme.kind), lambda_n);
                    csv << csv_line(simulated_row(scheme, lambda_n, cfg, trace), with_sim) << '\n';
                }
            } catch (const ConvergenceError& err) {
                csv.flush();
                log << "convergence error at scheme=" << scheme_name(scheme.kind)
                    << " lambda_n=" << format_number(lambda_n) << ": " << err.what() << '\n';
                return 2;
            }
            csv.flush();
        }
    }
    return 0;
}

TraceWriter::TraceWriter(std::ostream& out, const SystemParams& params) : out_(out) {
    for (const auto& c : params.classes) class_names_.push_back(c.name);
}

void TraceWriter::set_context(const std::string& scheme, double lambda_n) {
    out_ << "# scheme=" << scheme << "\tlambda_n=" << format_number(lambda_n) << '\n';
}

void TraceWriter::on_replication(int replication) {
    out_ << "# replication=" << replication << '\n';
}

void TraceWriter::on_event(const SimEvent& event) {
    static const char* type_names[] = {"arrival", "dwell-expiry", "completion"};
    const char* decision = event.type == SimEvent::Type::Completion
                               ? "completed"
                               : (event.accepted ? "accepted" : "rejected");
    out_ << format_number(event.time) << '\t' << type_names[static_cast<int>(event.type)] << '\t'
         << class_names_[event.class_index] << '\t'
         << (event.kind == CallKind::New ? "new" : "handover") << '\t' << decision << '\t'
         << format_number(event.occupied) << '\n';
}

}  // namespace cac
