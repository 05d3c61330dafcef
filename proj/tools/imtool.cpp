// imtool: command-line front end for the imprecise-probability IM library.
// Subcommands: combine, gb, im-curve, audit, simulate.
// Exit codes: 0 success / all properties pass, 1 property violation found,
// 2 input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "imprec/audit.hpp"
#include "imprec/credal.hpp"
#include "imprec/mass.hpp"
#include "imprec/model_io.hpp"
#include "imprec/randomset.hpp"
#include "imprec/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

imprec::ModelBundle load_bundle(const std::string& path) {
  return imprec::parse_model(imprec::read_text_file(path));
}

imprec::CredalModel require_model(const std::string& path) {
  auto bundle = load_bundle(path);
  if (!bundle.model)
    throw std::runtime_error(path + ": no credal model (needs frames, likelihood, prior)");
  return std::move(*bundle.model);
}

imprec::MassFunction require_mass(const std::string& path) {
  auto bundle = load_bundle(path);
  if (bundle.mass) return std::move(*bundle.mass);
  if (bundle.model) return bundle.model->prior;
  throw std::runtime_error(path + ": no mass function (needs param_frame and prior)");
}

/// Default partial prior used by im-curve when no prior file is given:
/// mass 0.9 on (-inf, 7], mass 0.1 on the whole line.
imprec::IntervalPrior default_interval_prior() {
  return imprec::IntervalPrior({{imprec::Interval::at_most(7.0), 0.9},
                                {imprec::Interval::whole(), 0.1}});
}

/// Builds the audited IM table from its source spec: "gb", "vacuous",
/// "bayes:uniform", "bayes:p1,p2,...", or "file:PATH".
imprec::IMTable table_from_source(const std::string& source,
                                  const imprec::CredalModel& model) {
  const auto& lik = model.likelihood;
  if (source == "gb") return imprec::generalized_bayes_im(model);
  if (source == "vacuous")
    return imprec::vacuous_table(lik.data_frame(), lik.param_frame());
  if (source.rfind("bayes:", 0) == 0) {
    std::string spec = source.substr(6);
    std::vector<double> probs;
    if (spec == "uniform") {
      probs.assign(lik.param_frame().size(),
                   1.0 / static_cast<double>(lik.param_frame().size()));
    } else {
      std::size_t start = 0;
      while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string tok = spec.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        probs.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    return imprec::bayes_table(lik, probs);
  }
  if (source.rfind("file:", 0) == 0)
    return imprec::parse_im_table(imprec::read_text_file(source.substr(5)));
  throw std::runtime_error("unknown IM source '" + source +
                           "' (expected gb, vacuous, bayes:<spec>, file:<path>)");
}

json witness_to_json(const imprec::Witness& w, const imprec::Frame& pframe) {
  json j;
  j["hypothesis"] = imprec::subset_to_braces(pframe, w.hypothesis);
  j["threshold"] = w.threshold;
  j["achieved"] = w.achieved;
  j["bound"] = w.bound;
  j["margin"] = w.margin;
  if (w.theta) j["theta"] = pframe.label(*w.theta);
  return j;
}

void print_report(const imprec::AuditReport& r, const imprec::Frame& pframe) {
  std::cout << r.property << ": " << (r.pass ? "pass" : "FAIL")
            << "  (thresholds examined: " << r.thresholds_examined << ")\n";
  for (const auto& w : r.witnesses) {
    std::cout << "  witness H=" << imprec::subset_to_braces(pframe, w.hypothesis)
              << " threshold=" << imprec::format_double(w.threshold)
              << " achieved=" << imprec::format_double(w.achieved)
              << " bound=" << imprec::format_double(w.bound)
              << " margin=" << imprec::format_double(w.margin);
    if (w.theta) std::cout << " theta=" << pframe.label(*w.theta);
    std::cout << "\n";
  }
}

int cmd_combine(const std::string& path1, const std::string& path2,
                const std::string& out_path) {
  auto m1 = require_mass(path1);
  auto m2 = require_mass(path2);
  auto [combined, conflict] = imprec::dempster_combine(m1, m2);
  imprec::ModelBundle bundle;
  bundle.mass = combined;
  std::string text = imprec::serialize_model(bundle);
  if (out_path.empty())
    std::cout << text;
  else
    imprec::write_text_file(out_path, text);
  std::cout << "conflict: " << imprec::format_double(conflict) << "\n";
  return kExitOk;
}

int cmd_gb(const std::string& model_path, const std::string& out_path) {
  auto model = require_model(model_path);
  imprec::IMTable table = imprec::generalized_bayes_im(model);
  std::string text = imprec::serialize_im_table(table);
  if (out_path.empty())
    std::cout << text;
  else {
    imprec::write_text_file(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

struct CurveArgs {
  std::vector<double> ys{5.0, 6.5, 7.5, 9.0};
  std::string prior_path;
  double theta_halfwidth = 4.0;
  std::size_t steps = 41;
  bool use_mc = false;
  std::int64_t samples = 100000;
  std::uint64_t seed = 20240601;
  std::string out_dir = ".";
};

int cmd_im_curve(const CurveArgs& args) {
  imprec::IntervalPrior prior = default_interval_prior();
  if (!args.prior_path.empty()) {
    auto bundle = load_bundle(args.prior_path);
    if (!bundle.interval_prior)
      throw std::runtime_error(args.prior_path + ": no interval_prior section");
    prior = *bundle.interval_prior;
  }
  if (args.steps < 1) throw std::runtime_error("theta grid needs at least one point");
  if (!args.out_dir.empty()) fs::create_directories(args.out_dir);

  for (double y : args.ys) {
    imprec::CurveFile curve;
    for (std::size_t i = 0; i < args.steps; ++i) {
      double frac = args.steps == 1 ? 0.0
                                    : static_cast<double>(i) /
                                          static_cast<double>(args.steps - 1);
      double theta = y - args.theta_halfwidth + 2.0 * args.theta_halfwidth * frac;
      curve.theta.push_back(theta);
      curve.lower_vacuous.push_back(imprec::vacuous_lower_cdf(y, theta));
      curve.upper_vacuous.push_back(imprec::vacuous_upper_cdf(y, theta));
      if (args.use_mc) {
        imprec::CombinedIm im{prior, {args.samples, args.seed}};
        auto b = imprec::combined_bounds_mc(im, y,
                                            imprec::IntervalUnion({{imprec::kNegInf, theta}}));
        curve.lower_combined.push_back(b.lower);
        curve.upper_combined.push_back(b.upper);
      } else {
        auto b = imprec::combined_cdf_analytic(prior, y, theta);
        curve.lower_combined.push_back(b.lower);
        curve.upper_combined.push_back(b.upper);
      }
    }
    fs::path out = fs::path(args.out_dir) /
                   ("curve_y" + imprec::format_double(y) + ".csv");
    imprec::write_text_file(out.string(), imprec::write_curve_csv(curve));
    std::cout << "wrote " << out.string() << "\n";
  }
  return kExitOk;
}

int cmd_audit(const std::string& model_path, const std::string& im_source,
              std::vector<std::string> properties, const std::string& json_path) {
  auto model = require_model(model_path);
  imprec::IMTable table = table_from_source(im_source, model);
  const imprec::Frame& pframe = model.likelihood.param_frame();

  if (properties.empty() || (properties.size() == 1 && properties[0] == "all"))
    properties = {"invulnerability", "validity", "validity-vacuous", "strong-validity",
                  "no-sure-loss", "false-confidence"};

  bool all_pass = true;
  json out;
  out["model"] = model_path;
  out["im"] = im_source;
  for (const auto& prop : properties) {
    if (prop == "invulnerability") {
      auto r = imprec::audit_invulnerability(model, table);
      print_report(r, pframe);
      out["properties"][prop] = {{"pass", r.pass},
                                 {"thresholds_examined", r.thresholds_examined}};
      for (const auto& w : r.witnesses)
        out["properties"][prop]["witnesses"].push_back(witness_to_json(w, pframe));
      all_pass = all_pass && r.pass;
    } else if (prop == "validity") {
      auto r = imprec::audit_validity(model, table);
      print_report(r, pframe);
      out["properties"][prop] = {{"pass", r.pass},
                                 {"thresholds_examined", r.thresholds_examined}};
      for (const auto& w : r.witnesses)
        out["properties"][prop]["witnesses"].push_back(witness_to_json(w, pframe));
      all_pass = all_pass && r.pass;
    } else if (prop == "validity-vacuous") {
      auto r = imprec::audit_validity_vacuous(model.likelihood, table);
      print_report(r, pframe);
      out["properties"][prop] = {{"pass", r.pass},
                                 {"thresholds_examined", r.thresholds_examined}};
      for (const auto& w : r.witnesses)
        out["properties"][prop]["witnesses"].push_back(witness_to_json(w, pframe));
      all_pass = all_pass && r.pass;
    } else if (prop == "strong-validity") {
      auto r = imprec::audit_strong_validity(model, table);
      print_report(r, pframe);
      out["properties"][prop] = {{"pass", r.pass},
                                 {"thresholds_examined", r.thresholds_examined}};
      for (const auto& w : r.witnesses)
        out["properties"][prop]["witnesses"].push_back(witness_to_json(w, pframe));
      all_pass = all_pass && r.pass;
    } else if (prop == "no-sure-loss") {
      auto r = imprec::audit_no_sure_loss(model.prior, table);
      print_report(r, pframe);
      out["properties"][prop] = {{"pass", r.pass},
                                 {"thresholds_examined", r.thresholds_examined}};
      for (const auto& w : r.witnesses)
        out["properties"][prop]["witnesses"].push_back(witness_to_json(w, pframe));
      all_pass = all_pass && r.pass;
    } else if (prop == "false-confidence") {
      auto w = imprec::false_confidence_search(model.likelihood, table);
      if (w) {
        std::cout << "false_confidence: witness found\n";
        std::cout << "  H=" << imprec::subset_to_braces(pframe, w->hypothesis)
                  << " alpha=" << imprec::format_double(w->threshold)
                  << " achieved=" << imprec::format_double(w->achieved)
                  << " margin=" << imprec::format_double(w->margin);
        if (w->theta) std::cout << " theta=" << pframe.label(*w->theta);
        std::cout << "\n";
        out["properties"][prop] = {{"witness_found", true}};
        out["properties"][prop]["witness"] = witness_to_json(*w, pframe);
        all_pass = false;
      } else {
        std::cout << "false_confidence: no witness\n";
        out["properties"][prop] = {{"witness_found", false}};
      }
    } else {
      throw std::runtime_error("unknown property '" + prop + "'");
    }
  }
  if (!json_path.empty()) imprec::write_text_file(json_path, out.dump(2) + "\n");
  return all_pass ? kExitOk : kExitViolation;
}

void write_trajectory_csv(const std::string& path, const imprec::CapitalTrajectory& t) {
  std::string out = "round,capital\n";
  for (std::size_t i = 0; i < t.capital.size(); ++i)
    out += std::to_string(i) + "," + imprec::format_double(t.capital[i]) + "\n";
  imprec::write_text_file(path, out);
}

imprec::DieBox parse_box(const std::string& spec) {
  std::vector<imprec::DieBox::Die> dice;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string tok = spec.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t colon = tok.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("die box entries look like p_ace:weight");
    dice.push_back({std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return imprec::DieBox(dice);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imprecise-probability inferential models toolkit"};
  app.require_subcommand(1);

  // combine
  std::string c_m1, c_m2, c_out;
  auto* combine = app.add_subcommand("combine", "Dempster-combine two mass functions");
  combine->add_option("mass1", c_m1, "first mass function file")->required();
  combine->add_option("mass2", c_m2, "second mass function file")->required();
  combine->add_option("-o,--out", c_out, "output file (default stdout)");

  // gb
  std::string g_model, g_out;
  auto* gb = app.add_subcommand("gb", "tabulate the generalized Bayes IM");
  gb->add_option("model", g_model, "credal model file")->required();
  gb->add_option("-o,--out", g_out, "IM table output file (default stdout)");

  // im-curve
  CurveArgs curve;
  auto* imcurve = app.add_subcommand(
      "im-curve", "lower/upper distribution curves for the location-model IM");
  imcurve->add_option("--y", curve.ys, "data values (default 5 6.5 7.5 9)");
  imcurve->add_option("--prior", curve.prior_path,
                      "interval prior file (default: 0.9 on (-inf,7], 0.1 on R)");
  imcurve->add_option("--halfwidth", curve.theta_halfwidth,
                      "theta grid half-width around y");
  imcurve->add_option("--steps", curve.steps, "theta grid size (default 41)");
  imcurve->add_flag("--mc", curve.use_mc, "Monte Carlo combined columns");
  imcurve->add_option("--samples", curve.samples, "Monte Carlo sample count");
  imcurve->add_option("--seed", curve.seed, "Monte Carlo seed");
  imcurve->add_option("--out-dir", curve.out_dir, "output directory");

  // audit
  std::string a_model, a_im = "gb", a_json;
  std::vector<std::string> a_props;
  auto* audit = app.add_subcommand("audit", "audit an IM against a credal model");
  audit->add_option("model", a_model, "credal model file")->required();
  audit->add_option("--im", a_im, "IM source: gb | vacuous | bayes:<spec> | file:<path>");
  audit->add_option("--properties", a_props,
                    "properties to audit (default all): invulnerability validity "
                    "validity-vacuous strong-validity no-sure-loss false-confidence");
  audit->add_option("--json", a_json, "write machine-readable report here");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "betting simulators");
  simulate->require_subcommand(1);

  double s1_p = 1.0 / 6.0, s1_odds = 4.0, s1_stake = 1.0, s1_start = 0.0;
  std::int64_t s1_rounds = 100000;
  std::uint64_t s1_seed = 1;
  std::string s1_out;
  auto* agent1 = simulate->add_subcommand("agent1", "die bettor capital trajectory");
  agent1->add_option("--p-ace", s1_p, "ace probability");
  agent1->add_option("--odds", s1_odds, "odds against an ace (k in k:1)");
  agent1->add_option("--stake", s1_stake, "stake per round");
  agent1->add_option("--rounds", s1_rounds, "number of rounds");
  agent1->add_option("--seed", s1_seed, "seed");
  agent1->add_option("--start-capital", s1_start, "starting capital");
  agent1->add_option("--out", s1_out, "trajectory CSV (round,capital)");

  std::string s2_box = "0.166666666666666657:1";
  double s2_odds = 4.0, s2_stake = 1.0, s2_start = 0.0;
  std::int64_t s2_horizon = 1000, s2_reps = 1000;
  std::uint64_t s2_seed = 1;
  auto* agent2 = simulate->add_subcommand("agent2", "ruin-probability meta-wager");
  agent2->add_option("--box", s2_box, "dice as p_ace:weight,p_ace:weight,...");
  agent2->add_option("--odds", s2_odds, "odds against an ace");
  agent2->add_option("--stake", s2_stake, "stake per round");
  agent2->add_option("--horizon", s2_horizon, "rounds per replication");
  agent2->add_option("--replications", s2_reps, "number of replications");
  agent2->add_option("--seed", s2_seed, "seed");
  agent2->add_option("--start-capital", s2_start, "starting capital");

  std::string sb_model, sb_im = "gb", sb_theta, sb_strategy = "exhaustive";
  std::string sb_traj, sb_log, sb_witness_h;
  double sb_witness_beta = -1.0;
  int sb_vertex = -1;
  std::int64_t sb_rounds = 100000;
  std::uint64_t sb_seed = 1;
  auto* sidebet = simulate->add_subcommand("sidebet", "statistician vs scrutinizer");
  sidebet->add_option("model", sb_model, "credal model file")->required();
  sidebet->add_option("--im", sb_im, "IM source: gb | vacuous | bayes:<spec> | file:<path>");
  sidebet->add_option("--theta", sb_theta, "generating parameter label");
  sidebet->add_option("--theta-vertex", sb_vertex,
                      "draw theta per round from prior vertex #");
  sidebet->add_option("--strategy", sb_strategy,
                      "exhaustive | witness | random | abstain");
  sidebet->add_option("--witness-h", sb_witness_h, "witness hypothesis, e.g. '{t1 t2}'");
  sidebet->add_option("--witness-beta", sb_witness_beta, "witness price beta");
  sidebet->add_option("--rounds", sb_rounds, "number of rounds");
  sidebet->add_option("--seed", sb_seed, "seed");
  sidebet->add_option("--traj", sb_traj, "trajectory CSV (round,capital)");
  sidebet->add_option("--log", sb_log, "gamble log CSV (round,H,beta,payoff)");

  try {
    app.parse(argc, argv);

    if (combine->parsed()) return cmd_combine(c_m1, c_m2, c_out);
    if (gb->parsed()) return cmd_gb(g_model, g_out);
    if (imcurve->parsed()) return cmd_im_curve(curve);
    if (audit->parsed()) return cmd_audit(a_model, a_im, a_props, a_json);

    if (agent1->parsed()) {
      imprec::BetPolicy policy(s1_odds, s1_stake);
      auto t = imprec::simulate_agent1(s1_p, policy, s1_rounds, s1_seed, s1_start);
      if (!s1_out.empty()) write_trajectory_csv(s1_out, t);
      double drift = (t.final_capital() - s1_start) / static_cast<double>(s1_rounds);
      std::cout << "final_capital: " << imprec::format_double(t.final_capital())
                << "\nmean_increment: " << imprec::format_double(drift) << "\nruined: "
                << (t.ruin_round ? std::to_string(*t.ruin_round) : std::string("never"))
                << "\n";
      return kExitOk;
    }
    if (agent2->parsed()) {
      imprec::BetPolicy policy(s2_odds, s2_stake);
      auto est = imprec::simulate_agent2_wager(parse_box(s2_box), policy, s2_horizon,
                                               s2_reps, s2_seed, s2_start);
      std::cout << "ruin_probability: " << imprec::format_double(est.probability)
                << "\nstd_error: " << imprec::format_double(est.std_error)
                << "\nfavorable_at_9_to_1: " << (est.favorable_at_9_to_1 ? "yes" : "no")
                << "\n";
      return kExitOk;
    }
    if (sidebet->parsed()) {
      auto model = require_model(sb_model);
      imprec::IMTable table = table_from_source(sb_im, model);
      const imprec::Frame& pframe = model.likelihood.param_frame();

      imprec::GeneratingTruth truth = std::size_t{0};
      if (sb_vertex >= 0) {
        auto vs = imprec::prior_vertices(model.prior);
        if (static_cast<std::size_t>(sb_vertex) >= vs.size())
          throw std::runtime_error("vertex index out of range");
        truth = vs[static_cast<std::size_t>(sb_vertex)];
      } else if (!sb_theta.empty()) {
        truth = pframe.index(sb_theta);
      } else {
        throw std::runtime_error("sidebet needs --theta or --theta-vertex");
      }

      std::optional<imprec::Witness> witness;
      if (sb_strategy == "witness") {
        if (!sb_witness_h.empty() && sb_witness_beta >= 0.0) {
          std::uint64_t mask = 0;
          std::string inner = sb_witness_h;
          if (!inner.empty() && inner.front() == '{') inner = inner.substr(1);
          if (!inner.empty() && inner.back() == '}') inner.pop_back();
          std::istringstream iss(inner);
          std::string lab;
          while (iss >> lab) mask |= std::uint64_t{1} << pframe.index(lab);
          witness = imprec::Witness{"cli", mask, 1.0 - sb_witness_beta, 0, 0, 0, {}};
        } else {
          witness = imprec::false_confidence_search(model.likelihood, table);
          if (!witness)
            throw std::runtime_error(
                "witness strategy: no false-confidence witness found; supply "
                "--witness-h/--witness-beta");
        }
      }
      imprec::SideBetGameConfig config(model, table, truth,
                                       imprec::strategy_from_name(sb_strategy, witness));
      config.rounds = sb_rounds;
      config.seed = sb_seed;
      auto result = imprec::simulate_sidebet_game(config);
      if (!sb_traj.empty()) write_trajectory_csv(sb_traj, result.trajectory);
      if (!sb_log.empty()) {
        std::string out = "round,H,beta,payoff\n";
        for (const auto& g : result.log)
          out += std::to_string(g.round) + "," +
                 imprec::subset_to_braces(pframe, g.hypothesis) + "," +
                 imprec::format_double(g.beta) + "," +
                 imprec::format_double(g.payoff) + "\n";
        imprec::write_text_file(sb_log, out);
      }
      std::cout << "accepted: " << result.accepted
                << "\nmean_per_round: " << imprec::format_double(result.mean_per_round)
                << "\nse_per_round: " << imprec::format_double(result.se_per_round)
                << "\nmean_per_accepted: "
                << imprec::format_double(result.mean_per_accepted)
                << "\nse_per_accepted: "
                << imprec::format_double(result.se_per_accepted) << "\n";
      return kExitOk;
    }
    return kExitInputError;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
