#include <doctest.h>

#include <cmath>

#include "cac/alloc.hpp"
#include "cac/chain.hpp"
#include "support/oracles.hpp"
#include "support/scenarios.hpp"

using namespace cac;

namespace {

// Test-side direct evaluation of the state-dependent release rate: build the
// expected census, allocate it, stretch non-real-time durations inversely
// with the granted rate, and average by the mix.
double release_rate_oracle(int i, const SystemParams& p) {
    std::vector<double> census;
    for (const auto& c : p.classes) census.push_back(c.mix * i);
    const std::vector<double> alloc = allocation_for_census(census, p);
    double duration = 0.0;
    for (std::size_t m = 0; m < p.classes.size(); ++m) {
        const auto& c = p.classes[m];
        duration += c.realtime ? c.mix * c.duration_mean
                               : c.mix * c.duration_mean * (c.beta_r / alloc[m]);
    }
    return 1.0 / p.dwell_mean + 1.0 / duration;
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("state counts for the reference scenario") {
    const SystemParams p = scenarios::reference();
    CHECK(base_capacity(p) == 100);
    CHECK(extra_states(p) == 53);
    CHECK(newcall_states(p) == 26);
    // Consistency with the closed-form exponent expression.
    double den_n = 0.0;
    for (const auto& c : p.classes) den_n += c.mix * (1.0 - c.gamma_n) * c.beta_r;
    CHECK(base_capacity(p) + newcall_states(p) ==
          static_cast<int>(std::floor(p.capacity / den_n)));
    CHECK(base_capacity(p) + newcall_states(p) == 126);
}

TEST_CASE("state counts for the small scenario") {
    const SystemParams p = scenarios::small_reference();
    CHECK(base_capacity(p) == 10);
    CHECK(extra_states(p) == 5);
    CHECK(newcall_states(p) == 2);
}

TEST_CASE("state counts in degenerate corners") {
    SystemParams one;
    one.capacity = 56.0;
    one.dwell_mean = 240.0;
    one.classes = {scenarios::cls("only", false, 56.0, 0.0, 0.0, 1.0)};
    CHECK(base_capacity(one) == 1);

    SystemParams tiny = one;
    tiny.capacity = 30.0;  // below the mix-average bandwidth
    CHECK(base_capacity(tiny) == 0);
    CHECK_THROWS_AS(solve_fixed_point(0.01, tiny, {SchemeKind::Proposed}), ParameterError);

    SystemParams rigid = scenarios::reference();
    for (auto& c : rigid.classes) c.gamma_n = c.gamma_h = 0.0;
    CHECK(extra_states(rigid) == 0);
    CHECK(newcall_states(rigid) == 0);

    const SystemParams aqos = effective_params(scenarios::reference(),
                                               {SchemeKind::AQoSHandoverPriority});
    CHECK(newcall_states(aqos) == 0);
    CHECK(extra_states(aqos) == 53);

    SystemParams flat = scenarios::reference();
    for (auto& c : flat.classes) c.gamma_n = c.gamma_h;
    CHECK(newcall_states(flat) == extra_states(flat));
}

TEST_CASE("release rate is constant below N and matches the census oracle above") {
    const SystemParams p = scenarios::reference();
    const int n = base_capacity(p);
    const int s = extra_states(p);
    const double mu1 = base_release_rate(p);
    CHECK(state_release_rate(1, p) == mu1);
    CHECK(state_release_rate(n, p) == mu1);
    for (int i = n + 1; i <= n + s; ++i)
        CHECK(state_release_rate(i, p) == doctest::Approx(release_rate_oracle(i, p)).epsilon(1e-9));
    CHECK_THROWS_AS(state_release_rate(0, p), IndexError);
    CHECK_THROWS_AS(state_release_rate(n + s + 1, p), IndexError);
}

TEST_CASE("release rate never exceeds mu_1 and is non-increasing in the state") {
    const SystemParams p = scenarios::reference();
    const int n = base_capacity(p);
    const int s = extra_states(p);
    double prev = base_release_rate(p);
    for (int i = n + 1; i <= n + s; ++i) {
        const double mu = state_release_rate(i, p);
        CHECK(mu <= prev + 1e-15);
        prev = mu;
    }
}

TEST_CASE("all-real-time scenarios keep the full-bandwidth release rate") {
    const SystemParams p = scenarios::single_realtime(20);
    CHECK(extra_states(p) == 0);
    CHECK(state_release_rate(7, p) == base_release_rate(p));
}

TEST_CASE("stationary distribution reproduces the two-server Erlang case") {
    const SystemParams p = scenarios::single_realtime(2);
    const double mu1 = base_release_rate(p);
    // (lambda_n + lambda_h)/mu1 = 1 erlang
    const auto pi = stationary_distribution(0.7 * mu1, 0.3 * mu1, p, {SchemeKind::Proposed});
    REQUIRE(pi.size() == 3);
    CHECK(pi[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(pi[2] == doctest::Approx(0.2).epsilon(1e-12));
    const auto [pb, pd] = blocking_dropping(pi, 2, 0, 0);
    CHECK(pb == doctest::Approx(oracles::erlang_b(2, 1.0)).epsilon(1e-12));
    CHECK(pd == pb);
}

TEST_CASE("stationary distribution of the hand-solved guard chain") {
    const SystemParams p = scenarios::single_realtime(2);
    const double mu1 = base_release_rate(p);
    SchemeSpec guard{SchemeKind::HardQoSGuard, 0.05};  // ceil(0.05*2) = 1 guard channel
    CHECK(guard_channels(p, guard) == 1);
    const auto pi = stationary_distribution(mu1, mu1, p, guard);
    REQUIRE(pi.size() == 3);
    CHECK(std::abs(pi[0] - 0.25) <= 1e-12);
    CHECK(std::abs(pi[1] - 0.50) <= 1e-12);
    CHECK(std::abs(pi[2] - 0.25) <= 1e-12);
}

TEST_CASE("stationary distribution stays normalized with lambda_h = 0") {
    SystemParams p = scenarios::reference();
    for (auto& c : p.classes) c.gamma_n = c.gamma_h;  // L = S
    const auto pi = stationary_distribution(0.5, 0.0, p, {SchemeKind::Proposed});
    double total = 0.0;
    for (double x : pi) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // New calls carry the chain to N+L; beyond that nothing flows.
    CHECK(pi[base_capacity(p) + extra_states(p)] >= 0.0);
}

TEST_CASE("erlang-B equivalence for all-real-time scenarios across sizes and loads") {
    for (int n : {1, 5, 20, 100}) {
        const SystemParams p = scenarios::single_realtime(n);
        const double mu1 = base_release_rate(p);
        const double p_h = handover_probability(p.dwell_mean, p.mean_full_duration());
        for (double factor : {0.1, 0.5, 1.0, 2.0}) {
            const double lambda_n = factor * n * mu1 * (1.0 - p_h);
            const ChainSolution sol = solve_fixed_point(lambda_n, p, {SchemeKind::Proposed});
            const double offered = (lambda_n + sol.lambda_h) / mu1;
            const double reference = oracles::erlang_b(n, offered);
            CHECK(std::abs(sol.p_block - reference) <= 1e-10);
            CHECK(std::abs(sol.p_drop - reference) <= 1e-10);
        }
    }
}

TEST_CASE("fixed point: no mobility means no handover traffic") {
    SystemParams p = scenarios::single_realtime(5);
    p.dwell_mean = 1e12;
    const ChainSolution sol = solve_fixed_point(0.02, p, {SchemeKind::Proposed});
    CHECK(sol.lambda_h <= 1e-10);
}

TEST_CASE("fixed point: light load closes the Eq. 6 loop at lambda_n/2") {
    const SystemParams p = scenarios::reference();
    const ChainSolution sol = solve_fixed_point(1e-6, p, {SchemeKind::Proposed});
    CHECK(sol.lambda_h / 1e-6 == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("fixed point residual at the returned iterate") {
    const SystemParams p = scenarios::reference();
    for (double lambda_n : {0.05, 0.35, 0.7, 1.0}) {
        for (SchemeKind kind : {SchemeKind::Proposed, SchemeKind::HardQoS,
                                SchemeKind::HardQoSGuard, SchemeKind::AQoSHandoverPriority,
                                SchemeKind::NonPrioritizedAdaptive}) {
            const SchemeSpec scheme{kind, 0.05};
            const ChainSolution sol = solve_fixed_point(lambda_n, p, scheme);
            const SystemParams eff = effective_params(p, scheme);
            const double p_h = handover_probability(eff.dwell_mean, eff.mean_full_duration());
            const double image = lambda_n * p_h * (1.0 - sol.p_block) /
                                 (1.0 - p_h * (1.0 - sol.p_drop));
            CHECK(std::abs(sol.lambda_h - image) <= 1e-8 * lambda_n);
            double total = 0.0;
            for (double x : sol.pi) total += x;
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("degeneracy identities: rewritten Proposed equals each baseline exactly") {
    const SystemParams p = scenarios::reference();
    for (double lambda_n : {0.05, 0.5, 1.0}) {
        SystemParams nonprior = p;
        for (auto& c : nonprior.classes) c.gamma_n = c.gamma_h;
        const ChainSolution a1 = solve_fixed_point(lambda_n, nonprior, {SchemeKind::Proposed});
        const ChainSolution b1 =
            solve_fixed_point(lambda_n, p, {SchemeKind::NonPrioritizedAdaptive});
        SystemParams aqos = p;
        for (auto& c : aqos.classes) c.gamma_n = 0.0;
        const ChainSolution a2 = solve_fixed_point(lambda_n, aqos, {SchemeKind::Proposed});
        const ChainSolution b2 =
            solve_fixed_point(lambda_n, p, {SchemeKind::AQoSHandoverPriority});
        SystemParams rigid = p;
        for (auto& c : rigid.classes) c.gamma_n = c.gamma_h = 0.0;
        const ChainSolution a3 = solve_fixed_point(lambda_n, rigid, {SchemeKind::Proposed});
        const ChainSolution b3 = solve_fixed_point(lambda_n, p, {SchemeKind::HardQoS});
        for (auto pair : {std::pair{&a1, &b1}, {&a2, &b2}, {&a3, &b3}}) {
            REQUIRE(pair.first->pi.size() == pair.second->pi.size());
            CHECK(std::abs(pair.first->p_block - pair.second->p_block) <= 1e-12);
            CHECK(std::abs(pair.first->p_drop - pair.second->p_drop) <= 1e-12);
            for (std::size_t i = 0; i < pair.first->pi.size(); ++i)
                CHECK(std::abs(pair.first->pi[i] - pair.second->pi[i]) <= 1e-12);
        }
    }
}

TEST_CASE("blocking and dropping respond monotonically to load") {
    const SystemParams p = scenarios::reference();
    double prev_pb = -1.0, prev_pd = -1.0;
    for (int i = 0; i < 20; ++i) {
        const double lambda_n = 0.05 + i * 0.95 / 19.0;
        const ChainSolution sol = solve_fixed_point(lambda_n, p, {SchemeKind::Proposed});
        CHECK(sol.p_block >= prev_pb);
        CHECK(sol.p_drop >= prev_pd);
        CHECK(sol.p_drop <= sol.p_block + 1e-15);  // L < S prioritization
        prev_pb = sol.p_block;
        prev_pd = sol.p_drop;
    }
}

TEST_CASE("guard blocking counts the guard states, dropping the full cell") {
    const SystemParams p = scenarios::single_realtime(2);
    const double mu1 = base_release_rate(p);
    const SchemeSpec guard{SchemeKind::HardQoSGuard, 0.05};
    const auto pi = stationary_distribution(mu1, mu1, p, guard);
    // P_B sums states N-G..N, P_D takes state N.
    CHECK(pi[1] + pi[2] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(pi[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("non-prioritized chain collapses blocking and dropping") {
    SystemParams p = scenarios::reference();
    const ChainSolution sol = solve_fixed_point(0.8, p, {SchemeKind::NonPrioritizedAdaptive});
    CHECK(sol.l_newcall == sol.s_extra);
    CHECK(sol.p_block == doctest::Approx(sol.p_drop).epsilon(1e-12));
}

}  // TEST_SUITE
