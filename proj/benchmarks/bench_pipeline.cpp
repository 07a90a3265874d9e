#include <benchmark/benchmark.h>

#include <cmath>

#include "mqra/approximant.hpp"
#include "mqra/asymptotics.hpp"
#include "mqra/odesolve.hpp"
#include "mqra/perturb.hpp"

using namespace mqra;

namespace {

const Potential& harmonic() {
    static const Potential W = power_potential(2, 1.0, 4, 0.0);
    return W;
}

const EigenSolution& ground_state() {
    static const EigenSolution s = solve_eigen(harmonic(), 0);
    return s;
}

const ChainState& ground_chain() {
    static const ChainState chain = [] {
        ChainState c{harmonic(), 4, Parity::Even, 1e-6, {ground_state().psi},
                     {ground_state().energy}};
        chain_extend(c);
        return c;
    }();
    return chain;
}

SeriesBank published_bank() {
    const ProblemFamily fam(2, 4);
    SeriesBank bank;
    bank.add(SeriesData{fam, 0, ExpansionPoint::finite(0.0),
                        {1.0, 0.75, -21.0 / 16, 333.0 / 64, -30885.0 / 1024}, {}});
    bank.add(SeriesData{fam, 0, ExpansionPoint::asymptotic(),
                        {1.060361944892, 0.362022935, -0.034510565, 0.005195593, -0.000831127},
                        {}});
    bank.add(SeriesData{fam, 0, ExpansionPoint::finite(0.5), {1.241854043136}, {}});
    bank.add(SeriesData{fam, 0, ExpansionPoint::finite(1.0), {1.392351580103}, {}});
    bank.add(SeriesData{fam, 0, ExpansionPoint::finite(2.0), {1.607541348124}, {}});
    bank.add(SeriesData{fam, 0, ExpansionPoint::finite(5.0), {2.018340657447}, {}});
    bank.add(SeriesData{fam, 0, ExpansionPoint::finite(20.0), {3.009944947791}, {}});
    return bank;
}

std::vector<Constraint> degree3_constraints() {
    std::vector<Constraint> cons;
    for (int k = 0; k < 5; ++k) cons.push_back(Constraint::finite(0.0, k));
    for (int i = 0; i < 5; ++i) cons.push_back(Constraint::asymptotic(i));
    for (double a : {0.5, 1.0, 2.0, 5.0, 20.0}) cons.push_back(Constraint::finite(a, 0));
    return cons;
}

void BM_IntegrateIvp(benchmark::State& state) {
    const GridSpec grid(8.0, 1e-3);
    for (auto _ : state) {
        IvpResult r = integrate_ivp(harmonic(), 1.0, nullptr, {1.0, 0.0}, grid, Parity::Even);
        benchmark::DoNotOptimize(r.u.values.data());
    }
}
BENCHMARK(BM_IntegrateIvp);

void BM_SolveEigen(benchmark::State& state) {
    const Potential W = power_potential(2, 1.0, 4, 1.0);
    for (auto _ : state) {
        EigenSolution s = solve_eigen(W, int(state.range(0)));
        benchmark::DoNotOptimize(s.energy);
    }
}
BENCHMARK(BM_SolveEigen)->Arg(0)->Arg(2);

void BM_ChainEnergy(benchmark::State& state) {
    for (auto _ : state) {
        const double e2 = chain_energy(ground_chain(), 2);
        benchmark::DoNotOptimize(e2);
    }
}
BENCHMARK(BM_ChainEnergy);

void BM_ChainFunction(benchmark::State& state) {
    const double e2 = chain_energy(ground_chain(), 2);
    for (auto _ : state) {
        GridFunction psi2 = chain_function(ground_chain(), 2, e2);
        benchmark::DoNotOptimize(psi2.values.data());
    }
}
BENCHMARK(BM_ChainFunction);

void BM_ExactSeries(benchmark::State& state) {
    for (auto _ : state) {
        RationalSeries s = exact_harmonic_series(4, 0, int(state.range(0)));
        benchmark::DoNotOptimize(s.coefficients.data());
    }
}
BENCHMARK(BM_ExactSeries)->Arg(6)->Arg(10);

void BM_AssembleSystem(benchmark::State& state) {
    const SeriesBank bank = published_bank();
    const std::vector<Constraint> cons = degree3_constraints();
    for (auto _ : state) {
        LinearSystem sys = assemble_system(ProblemFamily(2, 4), 0, 3, 2.0, cons, bank);
        benchmark::DoNotOptimize(sys.matrix.data());
    }
}
BENCHMARK(BM_AssembleSystem);

void BM_SolveCoefficients(benchmark::State& state) {
    const SeriesBank bank = published_bank();
    const LinearSystem sys =
        assemble_system(ProblemFamily(2, 4), 0, 3, 2.0, degree3_constraints(), bank);
    for (auto _ : state) {
        std::vector<double> x = solve_coefficients(sys);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_SolveCoefficients);

void BM_Evaluate(benchmark::State& state) {
    const SeriesBank bank = published_bank();
    const Approximant ap =
        build_approximant(ProblemFamily(2, 4), 0, 3, 2.0, degree3_constraints(), bank);
    double lam = 0.0;
    for (auto _ : state) {
        lam += 1e-3;
        benchmark::DoNotOptimize(evaluate(ap, lam));
    }
}
BENCHMARK(BM_Evaluate);

}  // namespace

BENCHMARK_MAIN();
