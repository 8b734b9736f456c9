#ifndef CAC_EXPERIMENT_HPP
#define CAC_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "cac/config.hpp"
#include "cac/metrics.hpp"
#include "cac/sim.hpp"

// Orchestration: scheme x load sweep, analytical always, simulated when the
// configuration carries a sim block, rows streamed to CSV as they complete.

namespace cac {

// Locale-independent shortest-general formatting with 10 significant digits.
std::string format_number(double value);

// One KPI row per (scheme, lambda) and source. Throws ConvergenceError
// upward after the caller's rows so far have been flushed.
KpiRow analytical_row(const SchemeSpec& scheme, double lambda_n, const ExperimentConfig& cfg);
KpiRow simulated_row(const SchemeSpec& scheme, double lambda_n, const ExperimentConfig& cfg,
                     SimEventSink* trace);

std::string csv_header(bool with_ci);
std::string csv_line(const KpiRow& row, bool with_ci);

// Runs the whole experiment, streaming rows ordered by (scheme name,
// lambda_n, source). Returns 0 on success, 2 after a convergence error
// (completed rows are already written). With analytical_only the sim block
// is ignored and the CSV carries no CI columns.
int run_experiment(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log,
                   SimEventSink* trace = nullptr, bool analytical_only = false);

// Tab-separated event trace: one line per simulator event.
class TraceWriter : public SimEventSink {
public:
    TraceWriter(std::ostream& out, const SystemParams& params);
    void set_context(const std::string& scheme, double lambda_n);
    void on_replication(int replication) override;
    void on_event(const SimEvent& event) override;

private:
    std::ostream& out_;
    std::vector<std::string> class_names_;
};

}  // namespace cac

#endif
