#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imprec/credal.hpp"
#include "imprec/im_table.hpp"
#include "imprec/likelihood.hpp"

namespace imprec {

/// A concrete property violation: the hypothesis, the threshold at which the
/// defining display fails, the achieved value against its required bound,
/// and the margin of violation. `theta` is set for the scans that expose a
/// single offending parameter value.
struct Witness {
  std::string property;
  std::uint64_t hypothesis = 0;
  double threshold = 0.0;  // the alpha or beta at which the violation bites
  double achieved = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  std::optional<std::size_t> theta;
};

struct AuditReport {
  std::string property;
  bool pass = true;
  std::vector<Witness> witnesses;  // verdict is fail iff nonempty
  std::size_t thresholds_examined = 0;

  /// Largest-margin witness (reports keep them sorted, best first).
  const Witness* worst() const { return witnesses.empty() ? nullptr : &witnesses.front(); }
};

struct AuditOptions {
  double slack = 1e-10;           // numerical slack on verdict comparisons
  double witness_margin = 1e-8;   // violations below this margin are noise
  std::size_t max_witnesses = 16;
};

/// Scrutinizer payoff f^{H,beta}(y,theta) = (1(theta in H) - beta) whenever
/// the IM prices H above beta at y, else 0.
JointGamble scrutinizer_gamble(const IMTable& im, std::uint64_t H, double beta);

/// Invulnerability: every scrutinizer gamble must have nonnegative joint
/// lower prevision. The beta scan covers, for each H, every interval between
/// consecutive attained lower values evaluated at both endpoints (the payoff
/// is affine in beta on each interval, so endpoint checks are complete) plus
/// the midpoints.
AuditReport audit_invulnerability(const CredalModel& model, const IMTable& im,
                                  const AuditOptions& opts = {});

/// Validity: joint upper probability of { lower_Y(H) > 1-alpha, Theta not in
/// H } is at most alpha for every H and alpha. Checked at every attained
/// lower value with both the strict event and its closure (the right-limit
/// in alpha), which together decide the display for every real alpha.
AuditReport audit_validity(const CredalModel& model, const IMTable& im,
                           const AuditOptions& opts = {});

/// Vacuous-prior specialization: sup over theta outside H of
/// P_{Y|theta}{ lower_Y(H) > 1-alpha } <= alpha.
AuditReport audit_validity_vacuous(const Likelihood& likelihood, const IMTable& im,
                                   const AuditOptions& opts = {});

/// Strong validity: the existential event "lower_Y(H) > 1-alpha for some H
/// not containing theta" reduces, by monotonicity of H -> lower_y(H), to the
/// single check lower_y(frame minus theta) > 1-alpha. (Lemma: among H with
/// theta outside H, the largest lower value is attained at the complement of
/// the singleton, since every such H is contained in it.)
AuditReport audit_strong_validity(const CredalModel& model, const IMTable& im,
                                  const AuditOptions& opts = {});

/// No sure loss against the prior: inf_y lower_y(H) <= prior plausibility of
/// H for every H; a failing H yields the money-pump profit as the margin.
AuditReport audit_no_sure_loss(const MassFunction& prior, const IMTable& im,
                               const AuditOptions& opts = {});

/// Exhaustive scan of (H, alpha, theta outside H) for violations of the
/// vacuous-prior validity display; returns the maximal-margin witness
/// (lexicographically smallest on ties) or nothing.
std::optional<Witness> false_confidence_search(const Likelihood& likelihood,
                                               const IMTable& im,
                                               const AuditOptions& opts = {});

struct CheckGamblePair {
  JointGamble f;        // scrutinizer gamble at beta = 1 - alpha
  JointGamble f_check;  // dominating gamble alpha - 1{lower > 1-alpha, theta outside H}
};

/// Materialises the scrutinizer gamble and its dominating check gamble at
/// (H, alpha). f <= f_check pointwise, and the joint lower prevision of
/// f_check equals alpha minus the joint upper probability of the validity
/// event, which ties the validity and invulnerability audits together.
CheckGamblePair build_check_gamble(const IMTable& im, std::uint64_t H, double alpha);

}  // namespace imprec
