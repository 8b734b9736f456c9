#ifndef CAC_METRICS_HPP
#define CAC_METRICS_HPP

#include <string>

#include "cac/chain.hpp"

// Derived KPIs shared by the analytical and simulated paths.

namespace cac {

enum class KpiSource { Analytical, Simulated };

struct KpiRow {
    std::string scheme;
    double lambda_n = 0.0;
    KpiSource source = KpiSource::Analytical;
    double p_block = 0.0;
    double p_drop = 0.0;
    double utilization = 0.0;
    double handover_rate = 0.0;       // handover attempts per admitted call
    double forced_termination = 0.0;
    int n_base = 0;
    int s_extra = 0;
    int l_newcall = 0;
    int fp_iterations = 0;
    bool has_ci = false;
    double p_block_ci = 0.0;
    double p_drop_ci = 0.0;
};

// Expected occupied fraction under the stationary distribution: i calls at
// the mix-average bandwidth below N, the full capacity in degraded states.
double analytical_utilization(const ChainSolution& solution, const SystemParams& params);

// Probability an admitted call is eventually dropped at some handover,
// from the geometric sequence of handover attempts:
// p_h*p_drop / (1 - p_h*(1 - p_drop)). With include_blocking, the call may
// also be denied at origin: p_block + (1-p_block)*that.
double forced_termination(double p_block, double p_drop, double p_h,
                          bool include_blocking = false);

// Expected handover attempts per admitted call, lambda_h/(lambda_n*(1-p_block)).
// Throws UndefinedRatioError when p_block = 1.
double handover_rate(double lambda_n, double lambda_h, double p_block);

}  // namespace cac

#endif
