#include "cac/metrics.hpp"

namespace cac {

double analytical_utilization(const ChainSolution& solution, const SystemParams& params) {
    const double per_call = params.mean_requested_bandwidth();
    double util = 0.0;
    for (std::size_t i = 0; i < solution.pi.size(); ++i) {
        const double occupied = i <= static_cast<std::size_t>(solution.n_base)
                                    ? static_cast<double>(i) * per_call
                                    : params.capacity;
        util += solution.pi[i] * occupied / params.capacity;
    }
    return util;
}

double forced_termination(double p_block, double p_drop, double p_h, bool include_blocking) {
    const double dropped_ever = p_h * p_drop / (1.0 - p_h * (1.0 - p_drop));
    return include_blocking ? p_block + (1.0 - p_block) * dropped_ever : dropped_ever;
}

double handover_rate(double lambda_n, double lambda_h, double p_block) {
    if (!(lambda_n > 0.0)) throw ParameterError("handover_rate requires lambda_n > 0");
    if (p_block >= 1.0)
        throw UndefinedRatioError("handover rate undefined when every new call is blocked");
    return lambda_h / (lambda_n * (1.0 - p_block));
}

}  // namespace cac
