// Acceptance suite: one test case per numbered criterion, each printing a
// single PASS/FAIL line with the measured quantities. The cases are
// registered individually with ctest so a red criterion is visible on its
// own.

#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <random>

#include "imprec/audit.hpp"
#include "imprec/credal.hpp"
#include "imprec/model_io.hpp"
#include "imprec/randomset.hpp"
#include "imprec/sim.hpp"
#include "support/oracles.hpp"

using namespace imprec;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void announce(int criterion, bool pass, const std::string& detail) {
  std::printf("[criterion %d] %s - %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

IntervalPrior bundled_location_prior() {
  return IntervalPrior({{Interval::at_most(7.0), 0.9}, {Interval::whole(), 0.1}});
}

CredalModel demo3() {
  Frame df({"y1", "y2", "y3"});
  Frame pf({"t1", "t2", "t3"});
  Likelihood lik(df, pf, {0.8, 0.1, 0.1, 0.1, 0.8, 0.1, 0.1, 0.1, 0.8});
  return CredalModel(lik, MassFunction::vacuous(pf));
}

/// Tables for criteria 3 and 5: generalized Bayes IMs of 200 random models.
std::vector<std::pair<CredalModel, IMTable>> criterion3_tables() {
  std::mt19937_64 rng(3001);
  std::vector<std::pair<CredalModel, IMTable>> out;
  for (int i = 0; i < 200; ++i) {
    CredalModel model = testsup::random_model(rng, 4, 3);
    IMTable gb = generalized_bayes_im(model);
    out.emplace_back(std::move(model), std::move(gb));
  }
  return out;
}

/// Tables for criteria 4 and 5: precise sharpened posteriors under vacuous
/// priors, kept only when they fail the validity audit outright.
std::vector<std::pair<CredalModel, IMTable>> criterion4_tables() {
  std::mt19937_64 rng(4001);
  std::uniform_int_distribution<std::size_t> size(2, 4);
  std::uniform_real_distribution<double> temp(1.0, 4.0);
  std::vector<std::pair<CredalModel, IMTable>> out;
  int attempts = 0;
  while (out.size() < 50 && attempts < 500) {
    ++attempts;
    Likelihood lik = testsup::random_likelihood(rng, size(rng), size(rng));
    CredalModel model(lik, MassFunction::vacuous(lik.param_frame()));
    const std::size_t nt = lik.param_frame().size();
    const std::size_t n_sub = std::size_t{1} << nt;
    double tau = temp(rng);
    std::vector<std::vector<double>> rows;
    for (std::size_t y = 0; y < lik.data_frame().size(); ++y) {
      auto post = testsup::bayes_posterior(
          lik, std::vector<double>(nt, 1.0 / static_cast<double>(nt)), y);
      double s = 0.0;
      for (double& p : post) s += (p = std::pow(p, tau));
      double partial = 0.0;
      for (std::size_t t = 0; t + 1 < nt; ++t) partial += (post[t] /= s);
      post[nt - 1] = 1.0 - partial;
      std::vector<double> row(n_sub, 0.0);
      for (std::uint64_t H = 1; H + 1 < n_sub; ++H) {
        double v = 0.0;
        for_each_member(H, [&](std::size_t t) { v += post[t]; });
        row[H] = v;
      }
      row[n_sub - 1] = 1.0;
      rows.push_back(std::move(row));
    }
    IMTable table(lik.data_frame(), lik.param_frame(), std::move(rows));
    if (!audit_validity(model, table).pass) out.emplace_back(std::move(model), table);
  }
  return out;
}

}  // namespace

TEST_CASE("criterion 1: location-model curves and interval lengths") {
  IntervalPrior prior = bundled_location_prior();

  // the actual CLI produces the curve files within the runtime budget
  Stopwatch watch;
  int rc_analytic = std::system((std::string(IMTOOL_PATH) +
                                 " im-curve --out-dir /tmp/accept_curves > /dev/null")
                                    .c_str());
  double analytic_cli_seconds = watch.seconds();
  REQUIRE(rc_analytic == 0);

  auto vac = credible_interval_vacuous(5.0, 0.95);
  double vac_len = vac.hi - vac.lo;
  auto c75 = credible_interval(prior, 7.5, 0.95);
  double len75 = c75.hi - c75.lo;
  auto c9 = credible_interval(prior, 9.0, 0.95);
  double len9 = c9.hi - c9.lo;
  double supdist = 0.0;
  for (int i = 0; i <= 1200; ++i) {
    double theta = 0.01 * i;  // lands exactly on the prior boundary at 7
    auto b = combined_cdf_analytic(prior, 5.0, theta);
    supdist = std::max(supdist, std::fabs(b.lower - vacuous_lower_cdf(5.0, theta)));
    supdist = std::max(supdist, std::fabs(b.upper - vacuous_upper_cdf(5.0, theta)));
  }

  // The implementation is pinned first: exact values of this construction,
  // cross-checked at build time against an independent Monte Carlo oracle.
  CHECK(std::fabs(vac_len - 4.482805455209891) < 1e-6);
  CHECK(std::fabs(len75 - 3.79250894925) < 1e-6);
  CHECK(std::fabs(len9 - 5.02353711362) < 1e-6);
  CHECK(std::fabs(supdist - 0.040950237506723) < 1e-9);

  // Required ranges. They do not all agree with the exact values above: no
  // percentile convention reproduces every one of them simultaneously, so
  // the checks that miss are left to fail rather than loosened.
  bool ok_vac = vac_len >= 3.8 && vac_len <= 4.1;
  bool ok_75 = len75 < 3.5;
  bool ok_9 = len9 >= 4.7 && len9 <= 5.3;
  bool ok_sup = supdist <= 0.02;
  CHECK(ok_vac);
  CHECK(ok_75);
  CHECK(ok_9);
  CHECK(ok_sup);

  // Monte Carlo path of the CLI at n = 1e5 for the same grids
  Stopwatch mc_watch;
  int rc_mc = std::system((std::string(IMTOOL_PATH) +
                           " im-curve --mc --samples 100000 --seed 20240601"
                           " --out-dir /tmp/accept_curves_mc > /dev/null")
                              .c_str());
  double mc_cli_seconds = mc_watch.seconds();
  REQUIRE(rc_mc == 0);

  bool ok_time = analytic_cli_seconds < 10.0 && mc_cli_seconds < 60.0;
  CHECK(ok_time);

  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "vacuous len %.4f (need [3.8,4.1]: %s), y=7.5 len %.4f (need <3.5: %s), "
                "y=9 len %.4f (need [4.7,5.3]: %s), y=5 supdist %.4f (need <=0.02: %s), "
                "cli analytic %.2fs, cli mc %.2fs",
                vac_len, ok_vac ? "yes" : "NO", len75, ok_75 ? "yes" : "NO", len9,
                ok_9 ? "yes" : "NO", supdist, ok_sup ? "yes" : "NO",
                analytic_cli_seconds, mc_cli_seconds);
  announce(1, ok_vac && ok_75 && ok_9 && ok_sup && ok_time, buf);
}

TEST_CASE("criterion 2: combination rule against the brute-force oracle") {
  std::mt19937_64 rng(2001);
  std::uniform_int_distribution<std::size_t> size(2, 5);
  int checked = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    Frame fr = testsup::numbered_frame("e", size(rng));
    MassFunction m1 = testsup::random_mass(rng, fr, 6);
    MassFunction m2 = testsup::random_mass(rng, fr, 6);
    double conflict = 0.0;
    auto oracle = testsup::brute_dempster(m1, m2, &conflict);
    if (1.0 - conflict <= 1e-12) {
      CHECK_THROWS_AS(dempster_combine(m1, m2), std::runtime_error);
      continue;
    }
    auto [combined, got_conflict] = dempster_combine(m1, m2);
    REQUIRE(combined.entries().size() == oracle.size());
    worst = std::max(worst, std::fabs(got_conflict - conflict));
    auto it = oracle.begin();
    for (const auto& [mask, mass] : combined.entries()) {
      REQUIRE(mask == it->first);
      worst = std::max(worst, std::fabs(mass - it->second / (1.0 - conflict)));
      ++it;
    }
    ++checked;
  }
  bool ok_float = worst <= 1e-12 && checked > 450;

  // exact mode: same flow over rationals, equality is literal
  std::mt19937_64 rrng(2002);
  std::uniform_int_distribution<int> denom(1, 30);
  std::uniform_int_distribution<std::size_t> rsize(2, 5);
  bool ok_exact = true;
  for (int i = 0; i < 500; ++i) {
    Frame fr = testsup::numbered_frame("e", rsize(rrng));
    auto random_rational_mass = [&](std::size_t focals) {
      focals = std::min<std::size_t>(focals, static_cast<std::size_t>(fr.full_mask()));
      std::uniform_int_distribution<std::uint64_t> pick(1, fr.full_mask());
      std::map<std::uint64_t, long long> chosen;
      while (chosen.size() < focals) chosen.emplace(pick(rrng), denom(rrng));
      long long total = 0;
      for (auto& [mask, w] : chosen) total += w;
      std::vector<RationalMassFunction::Entry> entries;
      for (auto& [mask, w] : chosen) entries.emplace_back(mask, Rational(w, total));
      return RationalMassFunction(fr, entries);
    };
    RationalMassFunction m1 = random_rational_mass(1 + i % 4);
    RationalMassFunction m2 = random_rational_mass(1 + (i / 2) % 4);
    Rational conflict(0);
    auto oracle = testsup::brute_dempster(m1, m2, &conflict);
    if (conflict == Rational(1)) continue;
    auto [combined, got] = dempster_combine(m1, m2);
    ok_exact = ok_exact && (got == conflict);
    auto it = oracle.begin();
    for (const auto& [mask, mass] : combined.entries()) {
      ok_exact = ok_exact && mask == it->first &&
                 mass == it->second / (Rational(1) - conflict);
      ++it;
    }
  }
  CHECK(ok_float);
  CHECK(ok_exact);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%d float pairs within %.2e of the oracle; exact mode %s", checked,
                worst, ok_exact ? "identical" : "MISMATCH");
  announce(2, ok_float && ok_exact, buf);
}

TEST_CASE("criterion 3: generalized Bayes IMs are invulnerable (200 random models)") {
  Stopwatch watch;
  auto tables = criterion3_tables();
  int failures = 0;
  for (const auto& [model, gb] : tables)
    if (!audit_invulnerability(model, gb).pass) ++failures;
  double secs = watch.seconds();
  bool ok = failures == 0 && secs < 120.0;
  CHECK(failures == 0);
  CHECK(secs < 120.0);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%zu models, %d failures, %.1fs", tables.size(),
                failures, secs);
  announce(3, ok, buf);
}

TEST_CASE("criterion 4: invalid tables are vulnerable with explicit check gambles") {
  auto tables = criterion4_tables();
  REQUIRE(tables.size() == 50);
  int vulnerable = 0, gambles_negative = 0;
  for (const auto& [model, table] : tables) {
    AuditReport validity = audit_validity(model, table);
    REQUIRE_FALSE(validity.pass);
    if (!audit_invulnerability(model, table).pass) ++vulnerable;
    const Witness& w = *validity.worst();
    auto [f, fc] = build_check_gamble(table, w.hypothesis, w.threshold);
    double lower_fc = joint_lower_prevision(model, fc);
    if (lower_fc < -1e-8) ++gambles_negative;
    CHECK(joint_lower_prevision(model, f) <= lower_fc + 1e-15);
  }
  bool ok = vulnerable == 50 && gambles_negative == 50;
  CHECK(vulnerable == 50);
  CHECK(gambles_negative == 50);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "50/50 fail validity, %d/50 fail invulnerability, %d/50 check gambles "
                "below -1e-8",
                vulnerable, gambles_negative);
  announce(4, ok, buf);
}

TEST_CASE("criterion 5: validity never coexists with sure loss") {
  int valid_count = 0, violations = 0, scanned = 0;
  auto run = [&](const CredalModel& model, const IMTable& table) {
    ++scanned;
    if (audit_validity(model, table).pass) {
      ++valid_count;
      if (!audit_no_sure_loss(model.prior, table).pass) ++violations;
    }
  };
  for (const auto& [model, table] : criterion3_tables()) run(model, table);
  for (const auto& [model, table] : criterion4_tables()) run(model, table);
  std::mt19937_64 rng(5001);
  for (int i = 0; i < 100; ++i) {
    CredalModel model = testsup::random_model(rng, 4, 3);
    IMTable table = testsup::random_belief_table(rng, model.likelihood.data_frame(),
                                                 model.likelihood.param_frame());
    run(model, table);
  }
  bool ok = violations == 0;
  CHECK(violations == 0);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d tables scanned, %d pass validity, %d sure-loss "
                "violations among them",
                scanned, valid_count, violations);
  announce(5, ok, buf);
}

TEST_CASE("criterion 6: nine-point combined location IM passes the validity audit") {
  const std::size_t n = 9;
  Frame grid = testsup::numbered_frame("g", n);
  std::vector<double> table(n * n, 0.0);
  auto clamp = [&](int v) { return std::min<int>(std::max<int>(v, 0), n - 1); };
  for (std::size_t t = 0; t < n; ++t) {
    table[t * n + clamp(static_cast<int>(t) - 1)] += 0.2;
    table[t * n + t] += 0.6;
    table[t * n + clamp(static_cast<int>(t) + 1)] += 0.2;
  }
  Likelihood lik(grid, grid, std::move(table));
  MassFunction prior(grid, {{0b000011111, 0.9}, {grid.full_mask(), 0.1}});
  CredalModel model(lik, prior);
  REQUIRE(is_nested(prior));

  // nested data-side random set: the singleton {y} inside its one-step
  // neighbourhood, with the imprecise level weights (0.4, 0.6)
  std::vector<MassFunction> per_y;
  for (std::size_t y = 0; y < n; ++y) {
    std::uint64_t singleton = std::uint64_t{1} << y;
    std::uint64_t wide = 0;
    for (std::size_t t = 0; t < n; ++t)
      for (int u = -1; u <= 1; ++u)
        if (clamp(static_cast<int>(t) + u) == static_cast<int>(y))
          wide |= std::uint64_t{1} << t;
    MassFunction data_set(grid, {{singleton, 0.4}, {wide, 0.6}});
    REQUIRE(is_nested(data_set));
    per_y.push_back(dempster_combine(data_set, prior).combined);
  }
  IMTable combined = belief_table(grid, per_y);

  // the underlying vacuous-prior IM itself is valid, as required
  std::vector<MassFunction> vac_rows;
  for (std::size_t y = 0; y < n; ++y) {
    std::uint64_t singleton = std::uint64_t{1} << y;
    std::uint64_t wide = 0;
    for (std::size_t t = 0; t < n; ++t)
      for (int u = -1; u <= 1; ++u)
        if (clamp(static_cast<int>(t) + u) == static_cast<int>(y))
          wide |= std::uint64_t{1} << t;
    vac_rows.push_back(MassFunction(grid, {{singleton, 0.4}, {wide, 0.6}}));
  }
  IMTable vac_im = belief_table(grid, vac_rows);
  REQUIRE(audit_validity_vacuous(lik, vac_im).pass);

  AuditReport r = audit_validity(model, combined);
  CHECK(r.pass);
  char buf[160];
  if (r.pass) {
    std::snprintf(buf, sizeof(buf), "valid (%zu thresholds examined)",
                  r.thresholds_examined);
  } else {
    std::snprintf(buf, sizeof(buf), "INVALID, worst margin %.4f", r.worst()->margin);
  }
  announce(6, r.pass, buf);
}

TEST_CASE("criterion 7: false confidence has a monetary face") {
  CredalModel model = demo3();
  IMTable bayes = bayes_table(model.likelihood, {1. / 3, 1. / 3, 1. / 3});
  auto witness = false_confidence_search(model.likelihood, bayes);
  REQUIRE(witness.has_value());

  SideBetGameConfig bayes_game(model, bayes, std::size_t{*witness->theta},
                               strategy_from_name("witness", witness));
  bayes_game.rounds = 100000;
  bayes_game.seed = 7001;
  SideBetResult br = simulate_sidebet_game(bayes_game);
  bool bayes_loses = br.mean_per_round + 3.0 * br.se_per_round < 0.0;

  SideBetGameConfig gb_game(model, generalized_bayes_im(model),
                            std::size_t{*witness->theta},
                            strategy_from_name("witness", witness));
  gb_game.rounds = 100000;
  gb_game.seed = 7001;
  SideBetResult gr = simulate_sidebet_game(gb_game);
  bool gb_safe = gr.mean_per_round + 3.0 * gr.se_per_round >= 0.0;

  CHECK(bayes_loses);
  CHECK(gb_safe);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "witness found (margin %.3f); Bayes mean/round %.4f (se %.5f) loses; "
                "generalized Bayes mean/round %.4f (se %.5f) does not",
                witness->margin, br.mean_per_round, br.se_per_round, gr.mean_per_round,
                gr.se_per_round);
  announce(7, bayes_loses && gb_safe, buf);
}

TEST_CASE("criterion 8: Monte Carlo engine agrees with the closed forms") {
  IntervalPrior prior = bundled_location_prior();
  CombinedIm im{prior, {100000, 20240601}};
  int cells = 0, misses = 0;
  double worst_ratio = 0.0;
  for (double y : {5.0, 6.5, 7.5, 9.0}) {
    for (int i = 0; i < 41; ++i) {
      double theta = y - 4.0 + 0.2 * i;
      auto mc = combined_bounds_mc(im, y, IntervalUnion({Interval::at_most(theta)}));
      auto exact = combined_cdf_analytic(prior, y, theta);
      ++cells;
      double dl = std::fabs(mc.lower - exact.lower);
      double du = std::fabs(mc.upper - exact.upper);
      if (dl > 4.0 * mc.lower_se + 1e-12) ++misses;
      if (du > 4.0 * mc.upper_se + 1e-12) ++misses;
      if (mc.lower_se > 0) worst_ratio = std::max(worst_ratio, dl / mc.lower_se);
      if (mc.upper_se > 0) worst_ratio = std::max(worst_ratio, du / mc.upper_se);
    }
  }
  bool ok = misses == 0;
  CHECK(misses == 0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d grid cells at n=1e5, %d outside the 4-sigma band (worst %.2f sigma)",
                cells, misses, worst_ratio);
  announce(8, ok, buf);
}

TEST_CASE("criterion 9: die bettor drift reproduces the break-even boundary") {
  BetPolicy policy(4.0, 1.0);
  const std::int64_t n = 100000;
  bool ok = true;
  std::string detail;
  for (double p : {1.0 / 6.0, 1.0 / 5.0, 1.0 / 2.0}) {
    CapitalTrajectory t = simulate_agent1(p, policy, n, 9001);
    double drift = t.final_capital() / static_cast<double>(n);
    double want = (1.0 - p) - 4.0 * p;
    double se = 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    bool hit = std::fabs(drift - want) <= 3.0 * se;
    ok = ok && hit;
    CHECK(hit);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "p=%.3f drift %.4f vs %.4f (3se %.4f); ", p, drift,
                  want, 3.0 * se);
    detail += buf;
  }
  announce(9, ok, detail);
}
