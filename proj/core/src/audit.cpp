#include "imprec/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

namespace imprec {

namespace {

bool witness_before(const Witness& a, const Witness& b) {
  if (a.margin != b.margin) return a.margin > b.margin;
  if (a.hypothesis != b.hypothesis) return a.hypothesis < b.hypothesis;
  if (a.threshold != b.threshold) return a.threshold < b.threshold;
  return a.theta.value_or(0) < b.theta.value_or(0);
}

void finish(AuditReport& report, const AuditOptions& opts) {
  std::sort(report.witnesses.begin(), report.witnesses.end(), witness_before);
  if (report.witnesses.size() > opts.max_witnesses)
    report.witnesses.resize(opts.max_witnesses);
  report.pass = report.witnesses.empty();
}

/// Sorted distinct attained lower values of H across the data frame.
std::vector<double> attained_levels(const IMTable& im, std::uint64_t H) {
  std::set<double> vals;
  for (std::size_t y = 0; y < im.data_size(); ++y) vals.insert(im.lower(y, H));
  return {vals.begin(), vals.end()};
}

/// Active set {y : lower_y(H) > v} or its closure {>= v}.
std::vector<char> active_set(const IMTable& im, std::uint64_t H, double v, bool closed) {
  std::vector<char> act(im.data_size(), 0);
  for (std::size_t y = 0; y < im.data_size(); ++y) {
    double l = im.lower(y, H);
    act[y] = closed ? (l >= v) : (l > v);
  }
  return act;
}

struct ValidityEvent {
  double alpha;   // bound the display must respect
  bool closed;    // event uses >= (the right limit in alpha)
  double level;   // lower value defining the event
};

/// Critical alpha structure for one hypothesis. The event {lower_Y(H) >
/// 1-alpha} changes only when 1-alpha crosses an attained lower value, so
/// checking, at every attained v, the strict event against alpha = 1-v and
/// the closed event against the same bound (the infimum over the open
/// interval just above it) decides the display for every real alpha.
/// Midpoints are redundant given the closed forms but cost nothing.
std::vector<ValidityEvent> validity_events(const std::vector<double>& levels) {
  std::vector<ValidityEvent> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    double v = levels[i];
    out.push_back({1.0 - v, false, v});
    out.push_back({1.0 - v, true, v});
    if (i + 1 < levels.size()) {
      double mid = 0.5 * (v + levels[i + 1]);
      out.push_back({1.0 - mid, false, mid});
    }
  }
  return out;
}

/// A plain alpha strictly inside the violating interval of a closed-event
/// witness: the event {lower >= v} equals the strict event for every alpha
/// in (1-v, 1-prev_v), prev_v being the next smaller attained value; any
/// alpha there below `achieved` violates the display outright. Downstream
/// consumers (check gambles, side-bet strategies) need such an alpha.
double representative_alpha(const std::vector<double>& levels, double v, bool closed,
                            double alpha, double achieved) {
  if (!closed) return alpha;
  auto it = std::lower_bound(levels.begin(), levels.end(), v);
  double prev = (it == levels.begin()) ? -std::numeric_limits<double>::infinity()
                                       : *(it - 1);
  double hi = std::min(achieved, std::isinf(prev) ? 1.0 : 1.0 - prev);
  if (!(hi > alpha)) return alpha;
  return 0.5 * (alpha + hi);
}

}  // namespace

JointGamble scrutinizer_gamble(const IMTable& im, std::uint64_t H, double beta) {
  JointGamble f = JointGamble::zero(im.data_size(), im.param_size());
  for (std::size_t y = 0; y < im.data_size(); ++y) {
    if (!(im.lower(y, H) > beta)) continue;
    for (std::size_t t = 0; t < im.param_size(); ++t)
      f.set(y, t, (((H >> t) & 1u) ? 1.0 : 0.0) - beta);
  }
  return f;
}

AuditReport audit_invulnerability(const CredalModel& model, const IMTable& im,
                                  const AuditOptions& opts) {
  require_same_frame(model.likelihood.data_frame(), im.data_frame(), "audit_invulnerability");
  require_same_frame(model.likelihood.param_frame(), im.param_frame(), "audit_invulnerability");
  AuditReport report{"invulnerability", true, {}, 0};
  const std::size_t n_sub = std::size_t{1} << im.param_size();
  const std::size_t ny = im.data_size();
  const std::size_t nt = im.param_size();

  for (std::uint64_t H = 0; H < n_sub; ++H) {
    std::set<double> cuts{0.0, 1.0};
    for (std::size_t y = 0; y < ny; ++y) cuts.insert(im.lower(y, H));
    std::vector<double> bs(cuts.begin(), cuts.end());

    for (std::size_t i = 0; i < bs.size(); ++i) {
      double b = bs[i];
      // The active set {y : lower_y(H) > beta} is constant for beta in
      // [b, next). The payoff is affine in beta there, so its lower
      // prevision is concave in beta and the interval endpoints bound the
      // whole segment; the midpoint is a cross-check.
      std::vector<char> act = active_set(im, H, b, /*closed=*/false);
      bool any = std::find(act.begin(), act.end(), char(1)) != act.end();
      std::vector<double> betas{b};
      if (i + 1 < bs.size()) {
        betas.push_back(bs[i + 1]);
        betas.push_back(0.5 * (b + bs[i + 1]));
      }
      // expected active-probability per theta, reused across betas
      std::vector<double> e(nt, 0.0);
      if (any)
        for (std::size_t t = 0; t < nt; ++t)
          for (std::size_t y = 0; y < ny; ++y)
            if (act[y]) e[t] += model.likelihood.at(y, t);
      for (double beta : betas) {
        ++report.thresholds_examined;
        if (!any) continue;  // payoff identically zero
        double value = 0.0;
        for (const auto& [mask, m] : model.prior.entries()) {
          double lo = std::numeric_limits<double>::infinity();
          for_each_member(mask, [&](std::size_t t) {
            double g = e[t] * ((((H >> t) & 1u) ? 1.0 : 0.0) - beta);
            lo = std::min(lo, g);
          });
          value += m * lo;
        }
        if (value < -opts.slack && -value > opts.witness_margin) {
          report.witnesses.push_back(
              {"invulnerability", H, beta, value, 0.0, -value, std::nullopt});
        }
      }
    }
  }
  finish(report, opts);
  return report;
}

namespace {

using UpperEventFn =
    std::function<double(const std::vector<char>&, std::uint64_t, std::size_t*)>;

AuditReport validity_scan(const IMTable& im, const AuditOptions& opts,
                          const char* property, const UpperEventFn& upper_event) {
  AuditReport report{property, true, {}, 0};
  const std::size_t n_sub = std::size_t{1} << im.param_size();
  for (std::uint64_t H = 0; H < n_sub; ++H) {
    if (H == im.full_mask()) continue;  // no theta outside H: event empty
    std::vector<double> levels = attained_levels(im, H);
    for (const auto& ev : validity_events(levels)) {
      ++report.thresholds_examined;
      std::vector<char> act = active_set(im, H, ev.level, ev.closed);
      if (std::find(act.begin(), act.end(), char(1)) == act.end()) continue;
      std::size_t worst_theta = 0;
      double value = upper_event(act, H, &worst_theta);
      double margin = value - ev.alpha;
      if (value > ev.alpha + opts.slack && margin > opts.witness_margin) {
        double rep = representative_alpha(levels, ev.level, ev.closed, ev.alpha, value);
        report.witnesses.push_back({property, H, rep, value, ev.alpha, margin, worst_theta});
      }
    }
  }
  finish(report, opts);
  return report;
}

}  // namespace

AuditReport audit_validity(const CredalModel& model, const IMTable& im,
                           const AuditOptions& opts) {
  require_same_frame(model.likelihood.data_frame(), im.data_frame(), "audit_validity");
  require_same_frame(model.likelihood.param_frame(), im.param_frame(), "audit_validity");
  return validity_scan(
      im, opts, "validity",
      [&](const std::vector<char>& act, std::uint64_t H, std::size_t* worst_theta) {
        const std::size_t nt = model.param_size();
        std::vector<double> g(nt, 0.0);
        double best = -1.0;
        for (std::size_t t = 0; t < nt; ++t) {
          if ((H >> t) & 1u) continue;
          for (std::size_t y = 0; y < model.data_size(); ++y)
            if (act[y]) g[t] += model.likelihood.at(y, t);
          if (g[t] > best) { best = g[t]; *worst_theta = t; }
        }
        double acc = 0.0;
        for (const auto& [mask, m] : model.prior.entries()) {
          double hi = 0.0;
          for_each_member(mask, [&](std::size_t t) { hi = std::max(hi, g[t]); });
          acc += m * hi;
        }
        return acc;
      });
}

AuditReport audit_validity_vacuous(const Likelihood& likelihood, const IMTable& im,
                                   const AuditOptions& opts) {
  require_same_frame(likelihood.data_frame(), im.data_frame(), "audit_validity_vacuous");
  require_same_frame(likelihood.param_frame(), im.param_frame(), "audit_validity_vacuous");
  return validity_scan(
      im, opts, "validity_vacuous",
      [&](const std::vector<char>& act, std::uint64_t H, std::size_t* worst_theta) {
        double best = 0.0;
        for (std::size_t t = 0; t < likelihood.param_frame().size(); ++t) {
          if ((H >> t) & 1u) continue;
          double p = 0.0;
          for (std::size_t y = 0; y < likelihood.data_frame().size(); ++y)
            if (act[y]) p += likelihood.at(y, t);
          if (p > best) { best = p; *worst_theta = t; }
        }
        return best;
      });
}

AuditReport audit_strong_validity(const CredalModel& model, const IMTable& im,
                                  const AuditOptions& opts) {
  require_same_frame(model.likelihood.data_frame(), im.data_frame(), "audit_strong_validity");
  require_same_frame(model.likelihood.param_frame(), im.param_frame(), "audit_strong_validity");
  AuditReport report{"strong_validity", true, {}, 0};
  const std::size_t ny = im.data_size();
  const std::size_t nt = im.param_size();
  const std::uint64_t full = im.full_mask();

  // The existential event reduces per theta to the complement-singleton
  // hypothesis (see header); its attained lower values over all theta give
  // the complete critical set.
  std::set<double> levels_all;
  for (std::size_t t = 0; t < nt; ++t) {
    std::uint64_t H = full & ~(std::uint64_t{1} << t);
    for (std::size_t y = 0; y < ny; ++y) levels_all.insert(im.lower(y, H));
  }
  std::vector<double> levels(levels_all.begin(), levels_all.end());

  for (const auto& ev : validity_events(levels)) {
    ++report.thresholds_examined;
    std::vector<double> g(nt, 0.0);
    bool any = false;
    for (std::size_t t = 0; t < nt; ++t) {
      std::uint64_t H = full & ~(std::uint64_t{1} << t);
      for (std::size_t y = 0; y < ny; ++y) {
        double l = im.lower(y, H);
        bool hit = ev.closed ? (l >= ev.level) : (l > ev.level);
        if (hit) { g[t] += model.likelihood.at(y, t); any = true; }
      }
    }
    if (!any) continue;
    double value = 0.0;
    for (const auto& [mask, m] : model.prior.entries()) {
      double hi = 0.0;
      for_each_member(mask, [&](std::size_t t) { hi = std::max(hi, g[t]); });
      value += m * hi;
    }
    double margin = value - ev.alpha;
    if (value > ev.alpha + opts.slack && margin > opts.witness_margin) {
      std::size_t worst_theta =
          static_cast<std::size_t>(std::max_element(g.begin(), g.end()) - g.begin());
      double rep = representative_alpha(levels, ev.level, ev.closed, ev.alpha, value);
      report.witnesses.push_back(
          {"strong_validity", full & ~(std::uint64_t{1} << worst_theta), rep, value,
           ev.alpha, margin, worst_theta});
    }
  }
  finish(report, opts);
  return report;
}

AuditReport audit_no_sure_loss(const MassFunction& prior, const IMTable& im,
                               const AuditOptions& opts) {
  require_same_frame(prior.frame(), im.param_frame(), "audit_no_sure_loss");
  AuditReport report{"no_sure_loss", true, {}, 0};
  const std::size_t n_sub = std::size_t{1} << im.param_size();
  for (std::uint64_t H = 0; H < n_sub; ++H) {
    ++report.thresholds_examined;
    double inf_lower = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < im.data_size(); ++y)
      inf_lower = std::min(inf_lower, im.lower(y, H));
    double upper_prior = prior.plausibility(H);
    double gap = inf_lower - upper_prior;  // the money-pump profit per unit stake
    if (gap > opts.slack && gap > opts.witness_margin) {
      report.witnesses.push_back(
          {"no_sure_loss", H, upper_prior, inf_lower, upper_prior, gap, std::nullopt});
    }
  }
  finish(report, opts);
  return report;
}

std::optional<Witness> false_confidence_search(const Likelihood& likelihood,
                                               const IMTable& im,
                                               const AuditOptions& opts) {
  AuditReport r = audit_validity_vacuous(likelihood, im, opts);
  if (r.witnesses.empty()) return std::nullopt;
  Witness w = r.witnesses.front();
  w.property = "false_confidence";
  return w;
}

CheckGamblePair build_check_gamble(const IMTable& im, std::uint64_t H, double alpha) {
  const std::size_t ny = im.data_size();
  const std::size_t nt = im.param_size();
  JointGamble f = scrutinizer_gamble(im, H, 1.0 - alpha);
  JointGamble fc = JointGamble::zero(ny, nt);
  for (std::size_t y = 0; y < ny; ++y) {
    bool active = im.lower(y, H) > 1.0 - alpha;
    for (std::size_t t = 0; t < nt; ++t) {
      bool outside = ((H >> t) & 1u) == 0;
      fc.set(y, t, alpha - ((active && outside) ? 1.0 : 0.0));
    }
  }
  return {std::move(f), std::move(fc)};
}

}  // namespace imprec
