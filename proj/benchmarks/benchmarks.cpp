#include <benchmark/benchmark.h>

#include <random>

#include "imprec/audit.hpp"
#include "imprec/credal.hpp"
#include "imprec/randomset.hpp"

using namespace imprec;

namespace {

Frame numbered(const char* p, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(p + std::to_string(i));
  return Frame(labels);
}

MassFunction random_mass(std::mt19937_64& rng, const Frame& fr, std::size_t focals) {
  std::uniform_int_distribution<std::uint64_t> pick(1, fr.full_mask());
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::map<std::uint64_t, double> chosen;
  focals = std::min<std::size_t>(focals, static_cast<std::size_t>(fr.full_mask()));
  while (chosen.size() < focals) chosen.emplace(pick(rng), u(rng));
  std::vector<MassFunction::Entry> entries(chosen.begin(), chosen.end());
  return MassFunction::normalized(fr, entries);
}

CredalModel random_model(std::mt19937_64& rng, std::size_t ny, std::size_t nt,
                         std::size_t focals) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> table(ny * nt);
  for (std::size_t t = 0; t < nt; ++t) {
    double s = 0.0;
    for (std::size_t y = 0; y < ny; ++y) s += (table[t * ny + y] = u(rng));
    double partial = 0.0;
    for (std::size_t y = 0; y + 1 < ny; ++y) partial += (table[t * ny + y] /= s);
    table[t * ny + ny - 1] = 1.0 - partial;
  }
  Likelihood lik(numbered("y", ny), numbered("t", nt), std::move(table));
  MassFunction prior = random_mass(rng, lik.param_frame(), focals);
  return CredalModel(std::move(lik), std::move(prior));
}

void BM_DempsterCombine(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Frame fr = numbered("e", static_cast<std::size_t>(state.range(0)));
  MassFunction m1 = random_mass(rng, fr, 6);
  MassFunction m2 = random_mass(rng, fr, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dempster_combine(m1, m2));
  }
}
BENCHMARK(BM_DempsterCombine)->Arg(4)->Arg(8)->Arg(16);

void BM_GeneralizedBayesTable(benchmark::State& state) {
  std::mt19937_64 rng(2);
  CredalModel model =
      random_model(rng, 4, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generalized_bayes_im(model));
  }
}
BENCHMARK(BM_GeneralizedBayesTable)->Arg(4)->Arg(8)->Arg(12);

void BM_AuditValidity(benchmark::State& state) {
  std::mt19937_64 rng(3);
  CredalModel model =
      random_model(rng, 4, static_cast<std::size_t>(state.range(0)), 3);
  IMTable gb = generalized_bayes_im(model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(audit_validity(model, gb));
  }
}
BENCHMARK(BM_AuditValidity)->Arg(4)->Arg(6)->Arg(8);

void BM_AuditInvulnerability(benchmark::State& state) {
  std::mt19937_64 rng(4);
  CredalModel model =
      random_model(rng, 4, static_cast<std::size_t>(state.range(0)), 3);
  IMTable gb = generalized_bayes_im(model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(audit_invulnerability(model, gb));
  }
}
BENCHMARK(BM_AuditInvulnerability)->Arg(4)->Arg(6)->Arg(8);

void BM_CombinedBoundsMc(benchmark::State& state) {
  IntervalPrior prior({{Interval::at_most(7.0), 0.9}, {Interval::whole(), 0.1}});
  CombinedIm im{prior, {state.range(0), 20240601}};
  IntervalUnion H({Interval::at_most(7.0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(combined_bounds_mc(im, 9.0, H));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CombinedBoundsMc)->Arg(10000)->Arg(100000);

void BM_CombinedCdfAnalytic(benchmark::State& state) {
  IntervalPrior prior({{Interval::at_most(7.0), 0.9}, {Interval::whole(), 0.1}});
  double theta = 6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(combined_cdf_analytic(prior, 9.0, theta));
    theta += 1e-9;
  }
}
BENCHMARK(BM_CombinedCdfAnalytic);

}  // namespace

BENCHMARK_MAIN();
