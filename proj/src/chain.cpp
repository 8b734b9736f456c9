#include "cac/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cac/alloc.hpp"

namespace cac {

namespace {

double state_release_rate_impl(int i, const SystemParams& params, int n) {
    if (i <= n) return base_release_rate(params);
    std::vector<double> census(params.classes.size());
    for (std::size_t m = 0; m < params.classes.size(); ++m)
        census[m] = params.classes[m].mix * i;
    const std::vector<double> alloc = allocation_for_census(census, params);
    double duration = 0.0;
    for (std::size_t m = 0; m < params.classes.size(); ++m) {
        const TrafficClass& c = params.classes[m];
        // Fixed work volume: duration scales inversely with the allocation.
        duration += c.realtime ? c.mix * c.duration_mean
                               : c.mix * c.duration_mean * c.beta_r / alloc[m];
    }
    return 1.0 / params.dwell_mean + 1.0 / duration;
}

// Everything solve/stationary need, built once per (params, scheme).
struct ChainModel {
    int n = 0;
    int s = 0;
    int l = 0;
    int g = 0;
    int top = 0;            // highest state K
    int block_from = 0;     // first state whose arrivals see new calls blocked
    std::vector<double> death_rate;  // death_rate[p] = p * mu_p, p in 0..top
};

ChainModel build_chain_model(const SystemParams& raw, const SchemeSpec& scheme) {
    const SystemParams params = effective_params(raw, scheme);
    ChainModel model;
    model.n = base_capacity(params);
    if (model.n < 1)
        throw ParameterError("degenerate scenario: capacity holds no call at the average bandwidth");
    model.s = extra_states(params);
    model.l = newcall_states(params);
    if (scheme.kind == SchemeKind::HardQoSGuard) {
        model.g = guard_channels(params, scheme);
        model.top = model.n;
        model.block_from = model.n - model.g;
    } else {
        model.top = model.n + model.s;
        model.block_from = model.n + model.l;
    }
    model.death_rate.assign(model.top + 1, 0.0);
    for (int p = 1; p <= model.top; ++p)
        model.death_rate[p] = p * state_release_rate_impl(p, params, model.n);
    return model;
}

std::vector<double> stationary_of_model(const ChainModel& model, double lambda_n, double lambda_h) {
    if (!(lambda_n > 0.0)) throw ParameterError("stationary distribution requires lambda_n > 0");
    if (lambda_h < 0.0) throw ParameterError("stationary distribution requires lambda_h >= 0");

    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(model.top + 1, 0.0);
    for (int i = 1; i <= model.top; ++i) {
        const double birth = (i - 1) < model.block_from ? lambda_n + lambda_h : lambda_h;
        logs[i] = birth > 0.0 && logs[i - 1] != neg_inf
                      ? logs[i - 1] + std::log(birth) - std::log(model.death_rate[i])
                      : neg_inf;
    }
    double peak = neg_inf;
    for (double l : logs) peak = std::max(peak, l);
    if (!std::isfinite(peak)) throw NumericalError("stationary distribution degenerated");
    double total = 0.0;
    for (double l : logs)
        if (l != neg_inf) total += std::exp(l - peak);
    const double log_norm = peak + std::log(total);
    if (!std::isfinite(log_norm)) throw NumericalError("stationary normalization under/overflowed");
    std::vector<double> pi(model.top + 1, 0.0);
    for (int i = 0; i <= model.top; ++i)
        if (logs[i] != neg_inf) pi[i] = std::exp(logs[i] - log_norm);
    return pi;
}

std::pair<double, double> blocking_of_model(const ChainModel& model, const std::vector<double>& pi) {
    double p_block = 0.0;
    for (int i = model.block_from; i <= model.top; ++i) p_block += pi[i];
    return {p_block, pi[model.top]};
}

}  // namespace

SystemParams effective_params(const SystemParams& params, const SchemeSpec& scheme) {
    SystemParams out = params;
    switch (scheme.kind) {
        case SchemeKind::Proposed:
            break;
        case SchemeKind::NonPrioritizedAdaptive:
            for (auto& c : out.classes) c.gamma_n = c.gamma_h;
            break;
        case SchemeKind::AQoSHandoverPriority:
            for (auto& c : out.classes) c.gamma_n = 0.0;
            break;
        case SchemeKind::HardQoS:
        case SchemeKind::HardQoSGuard:
            for (auto& c : out.classes) {
                c.gamma_n = 0.0;
                c.gamma_h = 0.0;
            }
            break;
    }
    return out;
}

int base_capacity(const SystemParams& params) {
    return static_cast<int>(std::floor(params.capacity / params.mean_requested_bandwidth()));
}

int extra_states(const SystemParams& params) {
    double reclaimable = 0.0;  // sum a_m gamma_h beta_r
    double floor_avg = 0.0;    // sum a_m (1-gamma_h) beta_r
    for (const auto& c : params.classes) {
        reclaimable += c.mix * c.gamma_h * c.beta_r;
        floor_avg += c.mix * (1.0 - c.gamma_h) * c.beta_r;
    }
    if (!(floor_avg > 0.0)) throw ParameterError("every class fully degradable: S undefined");
    return static_cast<int>(
        std::floor(params.capacity * reclaimable / (floor_avg * params.mean_requested_bandwidth())));
}

int newcall_states(const SystemParams& params) {
    double reclaimable = 0.0;
    double floor_avg = 0.0;
    for (const auto& c : params.classes) {
        reclaimable += c.mix * c.gamma_n * c.beta_r;
        floor_avg += c.mix * (1.0 - c.gamma_n) * c.beta_r;
    }
    if (!(floor_avg > 0.0)) throw ParameterError("every class fully degradable: L undefined");
    return static_cast<int>(
        std::floor(params.capacity * reclaimable / (floor_avg * params.mean_requested_bandwidth())));
}

int guard_channels(const SystemParams& params, const SchemeSpec& scheme) {
    if (scheme.kind != SchemeKind::HardQoSGuard) return 0;
    if (scheme.guard_fraction < 0.0 || scheme.guard_fraction > 1.0)
        throw ParameterError("guard_fraction must lie in [0,1]");
    return static_cast<int>(std::ceil(scheme.guard_fraction * base_capacity(params)));
}

double state_release_rate(int i, const SystemParams& params) {
    const int n = base_capacity(params);
    const int s = extra_states(params);
    if (i < 1 || i > n + s) {
        std::ostringstream os;
        os << "state " << i << " outside (0, " << n + s << "]";
        throw IndexError(os.str());
    }
    return state_release_rate_impl(i, params, n);
}

std::vector<double> stationary_distribution(double lambda_n, double lambda_h,
                                            const SystemParams& params, const SchemeSpec& scheme) {
    return stationary_of_model(build_chain_model(params, scheme), lambda_n, lambda_h);
}

std::pair<double, double> blocking_dropping(const std::vector<double>& pi, int n, int l, int s) {
    if (pi.size() != static_cast<std::size_t>(n + s + 1))
        throw ParameterError("distribution length does not match N+S+1");
    double p_block = 0.0;
    for (int i = n + l; i <= n + s; ++i) p_block += pi[i];
    return {p_block, pi[n + s]};
}

ChainSolution solve_fixed_point(double lambda_n, const SystemParams& params,
                                const SchemeSpec& scheme) {
    if (!(lambda_n > 0.0)) throw ParameterError("solve_fixed_point requires lambda_n > 0");
    const ChainModel model = build_chain_model(params, scheme);
    const SystemParams eff = effective_params(params, scheme);
    const double p_handover = handover_probability(eff.dwell_mean, eff.mean_full_duration());

    const int max_iterations = 10000;
    const double rel_tol = 1e-9;
    double lambda_h = lambda_n * p_handover / (1.0 - p_handover);
    double damping = 1.0;
    double prev_step = 0.0;

    for (int k = 1; k <= max_iterations; ++k) {
        const std::vector<double> pi = stationary_of_model(model, lambda_n, lambda_h);
        const auto [p_block, p_drop] = blocking_of_model(model, pi);
        const double target =
            lambda_n * p_handover * (1.0 - p_block) / (1.0 - p_handover * (1.0 - p_drop));
        const double step = target - lambda_h;
        if (std::abs(step) <= rel_tol * std::max(lambda_n, lambda_h)) {
            ChainSolution sol;
            sol.n_base = model.n;
            sol.s_extra = model.s;
            sol.l_newcall = model.l;
            sol.lambda_h = target;
            sol.iterations = k;
            sol.pi = stationary_of_model(model, lambda_n, sol.lambda_h);
            const auto [pb, pd] = blocking_of_model(model, sol.pi);
            sol.p_block = pb;
            sol.p_drop = pd;
            return sol;
        }
        if (step * prev_step < 0.0) damping = 0.5;  // oscillation guard
        prev_step = step;
        lambda_h += damping * step;
    }
    std::ostringstream os;
    os << "handover fixed point did not converge in " << max_iterations
       << " iterations (lambda_n=" << lambda_n << ", last lambda_h=" << lambda_h << ")";
    throw ConvergenceError(os.str(), lambda_h, prev_step);
}

}  // namespace cac
