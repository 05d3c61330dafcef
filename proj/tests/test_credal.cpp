#include <doctest.h>

#include <random>

#include "imprec/credal.hpp"
#include "support/oracles.hpp"

using namespace imprec;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

/// y=1 column: L(y1|t1) = 0.8, L(y1|t2) = 0.4 over a two-point data frame.
Likelihood two_by_two() {
  return Likelihood(Frame({"y1", "y2"}), Frame({"t1", "t2"}), {0.8, 0.2, 0.4, 0.6});
}

JointGamble rectangle(const CredalModel& m, std::uint64_t data_mask,
                      std::uint64_t param_mask) {
  JointGamble f = JointGamble::zero(m.data_size(), m.param_size());
  for (std::size_t y = 0; y < m.data_size(); ++y)
    for (std::size_t t = 0; t < m.param_size(); ++t)
      if (((data_mask >> y) & 1u) && ((param_mask >> t) & 1u)) f.set(y, t, 1.0);
  return f;
}

}  // namespace

TEST_CASE("joint previsions: vacuous prior reductions") {
  Likelihood lik = two_by_two();
  CredalModel model(lik, MassFunction::vacuous(lik.param_frame()));

  // indicator of Y x H for proper H has lower 0
  CHECK(joint_lower_prevision(model, rectangle(model, 0b11, 0b01)) == 0.0);
  // rectangle A x H: lower = min_{theta in H} P(A|theta), upper = max
  JointGamble rect = rectangle(model, 0b01, 0b11);  // A = {y1}, H = full
  CHECK(close(joint_lower_prevision(model, rect), 0.4));
  CHECK(close(joint_upper_prevision(model, rect), 0.8));

  // point-mass prior: plain expectation
  CredalModel point(lik, MassFunction(lik.param_frame(), {{0b01, 1.0}}));
  JointGamble f = JointGamble::zero(2, 2);
  f.set(0, 0, 2.0);
  f.set(1, 0, -1.0);
  f.set(0, 1, 100.0);
  CHECK(close(joint_lower_prevision(point, f), 0.8 * 2.0 + 0.2 * (-1.0)));

  // constants are self-conjugate
  JointGamble c = JointGamble::zero(2, 2);
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t t = 0; t < 2; ++t) c.set(y, t, 0.77);
  CHECK(close(joint_upper_prevision(model, c), 0.77));

  // indicator of a theta-slice under a single-focal two-point prior
  CredalModel pair(lik, MassFunction(lik.param_frame(), {{0b11, 1.0}}));
  CHECK(close(joint_upper_prevision(pair, rectangle(pair, 0b11, 0b01)), 1.0));
  // indicator of a y-slice: Choquet max over theta of the slice mass
  CHECK(close(joint_upper_prevision(pair, rectangle(pair, 0b01, 0b11)), 0.8));
}

TEST_CASE("joint previsions: conjugacy and vertex agreement") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    CredalModel model = testsup::random_model(rng);
    std::vector<double> vals(model.data_size() * model.param_size());
    for (auto& v : vals) v = u(rng);
    JointGamble f(model.data_size(), model.param_size(), vals);
    double lower = joint_lower_prevision(model, f);
    CHECK(close(joint_upper_prevision(model, f),
                -joint_lower_prevision(model, f.negate())));

    // Choquet integral equals the brute-force minimum over prior vertices
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : prior_vertices(model.prior)) {
      double e = 0.0;
      for (std::size_t t = 0; t < model.param_size(); ++t)
        for (std::size_t y = 0; y < model.data_size(); ++y)
          e += v.probs[t] * model.likelihood.at(y, t) * f.at(y, t);
      best = std::min(best, e);
    }
    CHECK(close(lower, best));
  }
}

TEST_CASE("prior_vertices: examples, dominance, cap") {
  Frame f({"a", "b"});
  auto single = prior_vertices(MassFunction(f, {{0b01, 1.0}}));
  REQUIRE(single.size() == 1);
  CHECK(single[0].probs == std::vector<double>{1.0, 0.0});

  auto vac = prior_vertices(MassFunction::vacuous(f));
  REQUIRE(vac.size() == 2);
  CHECK(vac[0].probs == std::vector<double>{1.0, 0.0});
  CHECK(vac[1].probs == std::vector<double>{0.0, 1.0});

  auto two = prior_vertices(MassFunction(f, {{0b01, 0.9}, {0b11, 0.1}}));
  REQUIRE(two.size() == 2);
  CHECK(close(two[0].probs[0], 1.0));
  CHECK(close(two[1].probs[0], 0.9));
  CHECK(close(two[1].probs[1], 0.1));

  // every allocation dominates the belief function
  std::mt19937_64 rng(22);
  for (int i = 0; i < 40; ++i) {
    Frame fr = testsup::numbered_frame("e", 2 + i % 4);
    MassFunction m = testsup::random_mass(rng, fr, 4);
    for (const auto& v : prior_vertices(m)) {
      double total = 0.0;
      for (double p : v.probs) total += p;
      CHECK(close(total, 1.0));
      for (std::uint64_t H = 0; H <= fr.full_mask(); ++H) {
        double qh = 0.0;
        for_each_member(H, [&](std::size_t t) { qh += v.probs[t]; });
        CHECK(qh + 1e-12 >= m.belief(H));
      }
    }
  }

  // vertex count cap
  Frame big = testsup::numbered_frame("e", 12);
  MassFunction wide(big, {{big.full_mask(), 0.5},
                          {big.full_mask() >> 1, 0.25},
                          {big.full_mask() >> 2, 0.25}});
  CHECK_THROWS_AS(prior_vertices(wide, 100), std::length_error);
}

TEST_CASE("generalized Bayes lower: worked examples") {
  Likelihood lik = two_by_two();
  Frame pf = lik.param_frame();
  Gamble ind_t1 = Gamble::indicator(Subset(pf, 0b01));

  // vacuous prior: vacuous posterior
  CredalModel vac(lik, MassFunction::vacuous(pf));
  CHECK(generalized_bayes_lower(vac, 0, ind_t1) == 0.0);
  CHECK(close(generalized_bayes_upper(vac, 0, ind_t1), 1.0));

  // precise uniform prior reduces to the Bayes posterior 2/3
  CredalModel precise(lik, MassFunction(pf, {{0b01, 0.5}, {0b10, 0.5}}));
  CHECK(close(generalized_bayes_lower(precise, 0, ind_t1), 2.0 / 3.0));

  // two-vertex partial prior: min(1, 18/19)
  CredalModel partial(lik, MassFunction(pf, {{0b01, 0.9}, {0b11, 0.1}}));
  CHECK(close(generalized_bayes_lower(partial, 0, ind_t1), 18.0 / 19.0));
}

TEST_CASE("generalized Bayes lower: zero-probability slice takes the vacuous branch") {
  Frame df({"y1", "y2"});
  Frame pf({"t1", "t2"});
  // y1 impossible under both parameter values
  Likelihood lik(df, pf, {0.0, 1.0, 0.0, 1.0});
  CredalModel model(lik, MassFunction(pf, {{0b01, 0.4}, {0b11, 0.6}}));
  Gamble g(pf, {0.3, -0.7});
  CHECK(generalized_bayes_lower(model, 0, g) == -0.7);
  CHECK(generalized_bayes_upper(model, 0, g) == 0.3);
}

TEST_CASE("generalized_bayes_im: tabulation invariants and examples") {
  Likelihood lik = two_by_two();
  Frame pf = lik.param_frame();

  IMTable vac_tab = generalized_bayes_im(CredalModel(lik, MassFunction::vacuous(pf)));
  CHECK(vac_tab.lower(0, 0b01) == 0.0);
  CHECK(vac_tab.lower(1, 0b10) == 0.0);
  CHECK(vac_tab.lower(0, 0b11) == 1.0);

  // precise prior: generalized Bayes equals Bayes
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    CredalModel model = testsup::random_model(rng);
    const std::size_t nt = model.param_size();
    std::vector<double> probs(nt, 0.0);
    double partial = 0.0;
    for (std::size_t t = 0; t + 1 < nt; ++t) {
      probs[t] = (1.0 - partial) / static_cast<double>(nt - t + 1);
      partial += probs[t];
    }
    probs[nt - 1] = 1.0 - partial;
    std::vector<MassFunction::Entry> entries;
    for (std::size_t t = 0; t < nt; ++t) entries.emplace_back(std::uint64_t{1} << t, probs[t]);
    CredalModel precise(model.likelihood, MassFunction(model.likelihood.param_frame(), entries));
    IMTable gb = generalized_bayes_im(precise);
    for (std::size_t y = 0; y < precise.data_size(); ++y) {
      auto post = testsup::bayes_posterior(precise.likelihood, probs, y);
      for (std::uint64_t H = 0; H <= precise.likelihood.param_frame().full_mask(); ++H) {
        double want = 0.0;
        for_each_member(H, [&](std::size_t t) { want += post[t]; });
        if (H == precise.likelihood.param_frame().full_mask()) want = 1.0;
        CHECK(std::fabs(gb.lower(y, H) - want) <= 1e-12);
      }
    }
  }
}

TEST_CASE("generalized Bayes: vertex minimum beats random credal mixtures") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    CredalModel model = testsup::random_model(rng);
    auto vertices = prior_vertices(model.prior);
    const std::size_t nt = model.param_size();
    std::vector<double> vals(nt);
    for (auto& v : vals) v = u(rng);
    Gamble f(model.likelihood.param_frame(), vals);
    for (std::size_t y = 0; y < model.data_size(); ++y) {
      double vertex_min = generalized_bayes_lower(model, y, f);
      double mix_min = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 200; ++k) {
        // random convex mixture of vertices (pure vertices included)
        std::vector<double> w(vertices.size());
        double s = 0.0;
        for (auto& x : w) s += (x = k < static_cast<int>(vertices.size())
                                        ? 0.0
                                        : -std::log(1.0 - u(rng)));
        if (k < static_cast<int>(vertices.size())) {
          w[static_cast<std::size_t>(k)] = 1.0;
          s = 1.0;
        }
        std::vector<double> q(nt, 0.0);
        for (std::size_t j = 0; j < vertices.size(); ++j)
          for (std::size_t t = 0; t < nt; ++t) q[t] += (w[j] / s) * vertices[j].probs[t];
        double den = 0.0, num = 0.0;
        for (std::size_t t = 0; t < nt; ++t) {
          double ww = q[t] * model.likelihood.at(y, t);
          den += ww;
          num += ww * f[t];
        }
        if (den > 0.0) mix_min = std::min(mix_min, num / den);
      }
      // the vertex minimum is attained among mixtures and never beaten
      bool slice_positive = false;
      for (const auto& [mask, mm] : model.prior.entries()) {
        double lo = std::numeric_limits<double>::infinity();
        for_each_member(mask, [&](std::size_t t) {
          lo = std::min(lo, model.likelihood.at(y, t));
        });
        if (lo > 0.0) slice_positive = true;
        (void)mm;
      }
      if (slice_positive) CHECK(std::fabs(vertex_min - mix_min) <= 1e-9);
    }
  }
}

TEST_CASE("generalized_bayes_im: subset-enumeration cap") {
  std::mt19937_64 rng(25);
  Likelihood lik = testsup::random_likelihood(rng, 2, 3);
  CredalModel model(lik, MassFunction::vacuous(lik.param_frame()));
  CHECK_THROWS_AS(generalized_bayes_im(model, 2), std::length_error);
}
