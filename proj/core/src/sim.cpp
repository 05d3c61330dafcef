#include "imprec/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "imprec/rng.hpp"

namespace imprec {

DieBox::DieBox(std::vector<Die> d) : dice(std::move(d)) {
  if (dice.empty()) throw std::invalid_argument("die box: empty");
  double total = 0.0;
  for (const auto& die : dice) {
    if (!(die.p_ace >= 0.0 && die.p_ace <= 1.0))
      throw std::invalid_argument("die box: ace probability outside [0,1]");
    if (!(die.weight > 0.0)) throw std::invalid_argument("die box: nonpositive weight");
    total += die.weight;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("die box: selection weights do not sum to 1");
}

BetPolicy::BetPolicy(double odds, double stake_unit) : odds_against(odds), stake(stake_unit) {
  if (!(odds_against > 0.0)) throw std::invalid_argument("bet policy: odds must be positive");
  if (!(stake > 0.0)) throw std::invalid_argument("bet policy: stake must be positive");
}

CapitalTrajectory simulate_agent1(double p_ace, const BetPolicy& policy,
                                  std::int64_t rounds, std::uint64_t seed,
                                  double start_capital) {
  if (!(p_ace >= 0.0 && p_ace <= 1.0))
    throw std::invalid_argument("simulate_agent1: ace probability outside [0,1]");
  if (rounds < 0) throw std::invalid_argument("simulate_agent1: negative round count");
  CounterRng rng(seed);
  CapitalTrajectory traj;
  traj.start_capital = start_capital;
  traj.capital.reserve(static_cast<std::size_t>(rounds));
  double capital = start_capital;
  for (std::int64_t r = 0; r < rounds; ++r) {
    bool ace = rng.uniform(0, static_cast<std::uint64_t>(r)) < p_ace;
    capital += ace ? -policy.odds_against * policy.stake : policy.stake;
    traj.capital.push_back(capital);
    if (!traj.ruin_round && capital < 0.0) traj.ruin_round = r;
  }
  return traj;
}

RuinEstimate simulate_agent2_wager(const DieBox& box, const BetPolicy& policy,
                                   std::int64_t horizon, std::int64_t replications,
                                   std::uint64_t seed, double start_capital) {
  if (replications < 1)
    throw std::invalid_argument("simulate_agent2_wager: needs at least one replication");
  if (horizon < 1)
    throw std::invalid_argument("simulate_agent2_wager: needs a positive horizon");
  CounterRng rng(seed);
  std::vector<double> cum;
  double running = 0.0;
  for (const auto& die : box.dice) {
    running += die.weight;
    cum.push_back(running);
  }
  std::int64_t ruined = 0;
  for (std::int64_t rep = 0; rep < replications; ++rep) {
    std::size_t k = rng.categorical(1, static_cast<std::uint64_t>(rep), cum);
    double p = box.dice[k].p_ace;
    // per-replication substream keyed off the master seed
    std::uint64_t sub = rng.bits(2, static_cast<std::uint64_t>(rep));
    CapitalTrajectory t = simulate_agent1(p, policy, horizon, sub, start_capital);
    if (t.ruin_round) ++ruined;
  }
  double n = static_cast<double>(replications);
  double p_hat = static_cast<double>(ruined) / n;
  double se = std::sqrt(p_hat * (1.0 - p_hat) / n);
  return {p_hat, se, p_hat > 0.1, replications};
}

SideBetGameConfig::SideBetGameConfig(CredalModel m, IMTable table, GeneratingTruth t,
                                     ScrutinizerStrategy s)
    : model(std::move(m)), im(std::move(table)), truth(std::move(t)), strategy(std::move(s)) {
  require_same_frame(model.likelihood.data_frame(), im.data_frame(), "side-bet game");
  require_same_frame(model.likelihood.param_frame(), im.param_frame(), "side-bet game");
  if (const auto* fixed = std::get_if<std::size_t>(&truth)) {
    if (*fixed >= model.param_size())
      throw std::invalid_argument("side-bet game: generating parameter outside frame");
  } else {
    const auto& v = std::get<PriorVertex>(truth);
    if (v.probs.size() != model.param_size())
      throw std::invalid_argument("side-bet game: generating vertex dimension mismatch");
  }
}

ScrutinizerStrategy strategy_from_name(const std::string& name,
                                       const std::optional<Witness>& witness) {
  if (name == "exhaustive") return ExhaustiveStrategy{};
  if (name == "random") return RandomStrategy{};
  if (name == "abstain") return AbstainStrategy{};
  if (name == "witness") {
    if (!witness) throw std::invalid_argument("witness strategy needs a witness");
    return WitnessStrategy{witness->hypothesis, 1.0 - witness->threshold};
  }
  throw std::invalid_argument("unknown scrutinizer strategy '" + name + "'");
}

double expected_sidebet_payoff(const CredalModel& model, const IMTable& im,
                               const GeneratingTruth& truth, std::uint64_t H,
                               double beta) {
  std::vector<double> theta_probs(model.param_size(), 0.0);
  if (const auto* fixed = std::get_if<std::size_t>(&truth))
    theta_probs[*fixed] = 1.0;
  else
    theta_probs = std::get<PriorVertex>(truth).probs;

  double acc = 0.0;
  for (std::size_t t = 0; t < model.param_size(); ++t) {
    if (theta_probs[t] == 0.0) continue;
    double in_h = ((H >> t) & 1u) ? 1.0 : 0.0;
    for (std::size_t y = 0; y < model.data_size(); ++y)
      if (im.lower(y, H) > beta)
        acc += theta_probs[t] * model.likelihood.at(y, t) * (in_h - beta);
  }
  return acc;
}

namespace {

/// Critical prices the exhaustive scrutinizer considers for one hypothesis:
/// attained lower values, interval midpoints, and prices a hair below each
/// attained value (the left limits, where the acceptance set is widest).
std::vector<double> candidate_betas(const IMTable& im, std::uint64_t H) {
  std::set<double> vals{0.0, 1.0};
  for (std::size_t y = 0; y < im.data_size(); ++y) vals.insert(im.lower(y, H));
  std::vector<double> sorted(vals.begin(), vals.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back(sorted[i]);
    if (i + 1 < sorted.size()) {
      out.push_back(0.5 * (sorted[i] + sorted[i + 1]));
      // just below the next attained value: acceptance still includes it
      out.push_back(std::nextafter(sorted[i + 1], sorted[i]));
    }
  }
  return out;
}

struct FixedOffer {
  std::uint64_t hypothesis;
  double beta;
};

std::optional<FixedOffer> exhaustive_offer(const CredalModel& model, const IMTable& im,
                                           const GeneratingTruth& truth) {
  const std::size_t n_sub = std::size_t{1} << im.param_size();
  std::optional<FixedOffer> best;
  double best_value = 0.0;
  for (std::uint64_t H = 0; H < n_sub; ++H) {
    for (double beta : candidate_betas(im, H)) {
      double e = expected_sidebet_payoff(model, im, truth, H, beta);
      if (!best || e < best_value ||
          (e == best_value && (H < best->hypothesis ||
                               (H == best->hypothesis && beta < best->beta)))) {
        best = FixedOffer{H, beta};
        best_value = e;
      }
    }
  }
  return best;
}

}  // namespace

SideBetResult simulate_sidebet_game(const SideBetGameConfig& config) {
  const auto& model = config.model;
  const auto& im = config.im;
  if (config.rounds < 1)
    throw std::invalid_argument("simulate_sidebet_game: needs at least one round");

  if (const auto* w = std::get_if<WitnessStrategy>(&config.strategy)) {
    if ((w->hypothesis & ~im.full_mask()) != 0)
      throw std::invalid_argument("simulate_sidebet_game: strategy hypothesis outside frame");
  }

  std::vector<double> theta_probs(model.param_size(), 0.0);
  if (const auto* fixed = std::get_if<std::size_t>(&config.truth))
    theta_probs[*fixed] = 1.0;
  else
    theta_probs = std::get<PriorVertex>(config.truth).probs;
  std::vector<double> theta_cum;
  double run = 0.0;
  for (double p : theta_probs) {
    run += p;
    theta_cum.push_back(run);
  }

  std::optional<FixedOffer> fixed_offer;
  if (std::holds_alternative<ExhaustiveStrategy>(config.strategy))
    fixed_offer = exhaustive_offer(model, im, config.truth);
  else if (const auto* w = std::get_if<WitnessStrategy>(&config.strategy))
    fixed_offer = FixedOffer{w->hypothesis, w->beta};

  CounterRng rng(config.seed);
  const std::size_t n_sub = std::size_t{1} << im.param_size();

  SideBetResult result;
  result.rounds = config.rounds;
  result.trajectory.start_capital = 0.0;
  result.trajectory.capital.reserve(static_cast<std::size_t>(config.rounds));

  double capital = 0.0;
  double sum = 0.0, sum_sq = 0.0;  // accepted payoffs
  for (std::int64_t r = 0; r < config.rounds; ++r) {
    std::size_t theta = rng.categorical(0, static_cast<std::uint64_t>(r), theta_cum);
    // y ~ P(.|theta)
    double u = rng.uniform(1, static_cast<std::uint64_t>(r));
    std::size_t y = 0;
    double acc = 0.0;
    for (; y + 1 < model.data_size(); ++y) {
      acc += model.likelihood.at(y, theta);
      if (u < acc) break;
    }

    std::optional<FixedOffer> offer;
    if (std::holds_alternative<AbstainStrategy>(config.strategy)) {
      offer = std::nullopt;
    } else if (std::holds_alternative<RandomStrategy>(config.strategy)) {
      std::uint64_t h =
          rng.bits(2, static_cast<std::uint64_t>(r)) % (n_sub ? n_sub : 1);
      offer = FixedOffer{h, rng.uniform(3, static_cast<std::uint64_t>(r))};
    } else {
      offer = fixed_offer;
    }

    double payoff = 0.0;
    if (offer && im.lower(y, offer->hypothesis) > offer->beta) {
      bool in_h = (offer->hypothesis >> theta) & 1u;
      payoff = (in_h ? 1.0 : 0.0) - offer->beta;
      ++result.accepted;
      sum += payoff;
      sum_sq += payoff * payoff;
      result.log.push_back({r, y, offer->hypothesis, offer->beta, payoff});
    }
    capital += payoff;
    result.trajectory.capital.push_back(capital);
    if (!result.trajectory.ruin_round && capital < 0.0) result.trajectory.ruin_round = r;
  }

  const double n = static_cast<double>(config.rounds);
  result.mean_per_round = capital / n;
  // per-round variance from the accepted-payoff moments (non-accepted rounds
  // contribute zeros)
  double mean_r = result.mean_per_round;
  double var_round =
      (sum_sq - 2.0 * mean_r * sum + n * mean_r * mean_r) / (n > 1 ? n - 1 : 1);
  result.se_per_round = std::sqrt(std::max(var_round, 0.0) / n);

  if (result.accepted > 0) {
    const double m = static_cast<double>(result.accepted);
    result.mean_per_accepted = sum / m;
    double var_acc =
        (sum_sq - m * result.mean_per_accepted * result.mean_per_accepted) /
        (m > 1 ? m - 1 : 1);
    result.se_per_accepted = std::sqrt(std::max(var_acc, 0.0) / m);
  }
  return result;
}

}  // namespace imprec
