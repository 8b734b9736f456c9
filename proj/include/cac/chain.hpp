#ifndef CAC_CHAIN_HPP
#define CAC_CHAIN_HPP

#include <utility>
#include <vector>

#include "cac/model.hpp"

// Analytical performance model: the birth-death chain over the number of
// active calls, with state-dependent release rates in the degraded region,
// and the handover-rate fixed point coupling lambda_h to (P_B, P_D).

namespace cac {

enum class SchemeKind {
    Proposed,                // gamma_n/gamma_h as configured
    NonPrioritizedAdaptive,  // gamma_n := gamma_h
    AQoSHandoverPriority,    // gamma_n := 0
    HardQoS,                 // gamma := 0
    HardQoSGuard,            // gamma := 0 plus G = ceil(guard_fraction * N) guard channels
};

struct SchemeSpec {
    SchemeKind kind = SchemeKind::Proposed;
    double guard_fraction = 0.05;  // used by HardQoSGuard only
};

struct ChainSolution {
    int n_base = 0;     // N
    int s_extra = 0;    // S
    int l_newcall = 0;  // L
    std::vector<double> pi;  // stationary probabilities over states 0..K
    double p_block = 0.0;
    double p_drop = 0.0;
    double lambda_h = 0.0;  // converged handover arrival rate
    int iterations = 0;
};

// The scenario with the scheme's degradation-factor rewrite applied.
SystemParams effective_params(const SystemParams& params, const SchemeSpec& scheme);

// N: hard-QoS call capacity, floor(C / sum a_m beta_r).
int base_capacity(const SystemParams& params);
// S: extra calls supported by degrading to the handover floors.
int extra_states(const SystemParams& params);
// L: extra states in which new calls are still accepted.
int newcall_states(const SystemParams& params);
// Guard channels for a guard-band scheme on this scenario.
int guard_channels(const SystemParams& params, const SchemeSpec& scheme);

// Per-call channel release rate mu_i at state i. Constant mu_1 for
// 0 < i <= N; above N the expected census a_m*i is allocated per the
// proportional rule and non-real-time durations stretch inversely with the
// allocation. Throws IndexError outside (0, N+S].
double state_release_rate(int i, const SystemParams& params);

// Stationary distribution of the scheme's chain at the given arrival rates.
// States 0..N+S (0..N for the hard-QoS variants); probabilities are built
// from birth/death rate ratios in the log domain, never raw factorials.
std::vector<double> stationary_distribution(double lambda_n, double lambda_h,
                                            const SystemParams& params, const SchemeSpec& scheme);

// (P_B, P_D) from a stationary distribution of the non-guard chain:
// P_B = sum_{i=N+L}^{N+S} pi[i], P_D = pi[N+S].
std::pair<double, double> blocking_dropping(const std::vector<double>& pi, int n, int l, int s);

// Solves lambda_h = lambda_n*P_h(1-P_B)/(1-P_h(1-P_D)) by damped Picard
// iteration (tolerance 1e-9 relative, cap 10000) and returns the converged
// chain. Throws ConvergenceError with the last iterate on failure and
// ParameterError for degenerate scenarios (N = 0).
ChainSolution solve_fixed_point(double lambda_n, const SystemParams& params,
                                const SchemeSpec& scheme);

}  // namespace cac

#endif
