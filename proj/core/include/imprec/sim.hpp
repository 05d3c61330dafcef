#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "imprec/audit.hpp"
#include "imprec/im_table.hpp"
#include "imprec/likelihood.hpp"

namespace imprec {

/// Box of dice: each entry is (probability of Ace, selection weight).
struct DieBox {
  struct Die {
    double p_ace;
    double weight;
  };
  std::vector<Die> dice;

  explicit DieBox(std::vector<Die> d);
};

/// Odds convention: "odds k:1 against an Ace" means the book holder gains
/// one stake unit when no Ace shows and loses k stake units on an Ace, so
/// the book is fair exactly at P(Ace) = 1/(k+1).
struct BetPolicy {
  double odds_against = 4.0;
  double stake = 1.0;

  BetPolicy() = default;
  BetPolicy(double odds, double stake_unit);
};

struct CapitalTrajectory {
  std::vector<double> capital;          // value after each round
  std::optional<std::int64_t> ruin_round;  // first round with capital < 0
  double start_capital = 0.0;

  double final_capital() const { return capital.empty() ? start_capital : capital.back(); }
};

/// Level-1 bettor: accepts bets against an Ace every round.
CapitalTrajectory simulate_agent1(double p_ace, const BetPolicy& policy,
                                  std::int64_t rounds, std::uint64_t seed,
                                  double start_capital = 0.0);

struct RuinEstimate {
  double probability;
  double std_error;
  bool favorable_at_9_to_1;  // does the meta-wager at odds 9:1 pay?
  std::int64_t replications;
};

/// Level-2 meta-wager: draw a die from the box, run the level-1 bettor to
/// the horizon, estimate the ruin probability.
RuinEstimate simulate_agent2_wager(const DieBox& box, const BetPolicy& policy,
                                   std::int64_t horizon, std::int64_t replications,
                                   std::uint64_t seed, double start_capital = 0.0);

// --- statistician vs scrutinizer side bets --------------------------------

/// Scrutinizer strategies: exhaustive best response (minimises the
/// statistician's model-expected payoff over all hypotheses and critical
/// prices), a fixed supplied witness, uniformly random price offers, and
/// abstention.
struct ExhaustiveStrategy {};
struct WitnessStrategy {
  std::uint64_t hypothesis;
  double beta;
};
struct RandomStrategy {};
struct AbstainStrategy {};
using ScrutinizerStrategy =
    std::variant<ExhaustiveStrategy, WitnessStrategy, RandomStrategy, AbstainStrategy>;

ScrutinizerStrategy strategy_from_name(const std::string& name,
                                       const std::optional<Witness>& witness);

/// Data-generating truth: either a fixed parameter value or a prior vertex
/// whose induced distribution draws a fresh theta every round.
using GeneratingTruth = std::variant<std::size_t, PriorVertex>;

struct SideBetGameConfig {
  CredalModel model;
  IMTable im;
  GeneratingTruth truth;
  ScrutinizerStrategy strategy;
  std::int64_t rounds = 100000;
  std::uint64_t seed = 1;

  SideBetGameConfig(CredalModel m, IMTable table, GeneratingTruth t,
                    ScrutinizerStrategy s);
};

struct GambleRecord {
  std::int64_t round;
  std::size_t y;
  std::uint64_t hypothesis;
  double beta;
  double payoff;
};

struct SideBetResult {
  double mean_per_accepted = 0.0;
  double se_per_accepted = 0.0;
  double mean_per_round = 0.0;
  double se_per_round = 0.0;
  std::int64_t accepted = 0;
  std::int64_t rounds = 0;
  CapitalTrajectory trajectory;
  std::vector<GambleRecord> log;
};

/// Runs the side-bet game: each round nature draws theta (fixed or from the
/// vertex) and y from the likelihood; the scrutinizer offers (H, beta); the
/// statistician accepts whenever the IM prices H strictly above beta, paying
/// beta for the indicator payout.
SideBetResult simulate_sidebet_game(const SideBetGameConfig& config);

/// Model-expected per-round payoff of the (H, beta) gamble under the
/// generating truth; the quantity the exhaustive scrutinizer minimises and
/// the empirical per-round mean converges to.
double expected_sidebet_payoff(const CredalModel& model, const IMTable& im,
                               const GeneratingTruth& truth, std::uint64_t H,
                               double beta);

}  // namespace imprec
