#include "imprec/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace imprec {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;

  bool done() const { return pos >= text.size(); }

  /// Next non-empty line with comments stripped; returns its 1-based number.
  std::optional<std::pair<std::string, std::size_t>> next_line() {
    while (!done()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view raw = text.substr(pos, eol == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : eol - pos);
      std::size_t this_line = line;
      pos = eol == std::string_view::npos ? text.size() : eol + 1;
      ++line;
      std::size_t hash = raw.find('#');
      if (hash != std::string_view::npos) raw = raw.substr(0, hash);
      std::size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) continue;
      std::size_t e = raw.find_last_not_of(" \t\r");
      return std::make_pair(std::string(raw.substr(b, e - b + 1)), this_line);
    }
    return std::nullopt;
  }
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, std::size_t line) {
  if (tok == "-inf") return kNegInf;
  if (tok == "inf" || tok == "+inf") return kPosInf;
  double v;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(line, 1, "malformed number '" + tok + "'");
  return v;
}

}  // namespace

ModelBundle parse_model(std::string_view text) {
  Cursor cur{text};
  std::optional<Frame> data_frame, param_frame;
  std::vector<std::vector<double>> lik_rows;
  std::vector<std::pair<std::vector<std::string>, double>> prior_rows;
  std::vector<IntervalPrior::Focal> interval_rows;
  bool saw_likelihood = false, saw_prior = false, saw_interval = false;

  enum class Section { None, Likelihood, Prior, IntervalPrior };
  Section section = Section::None;
  std::size_t section_line = 0;

  bool saw_anything = false;
  while (auto ln = cur.next_line()) {
    saw_anything = true;
    const auto& [body, lineno] = *ln;
    if (body.rfind("data_frame:", 0) == 0) {
      auto labels = split_ws(body.substr(11));
      if (labels.empty()) throw ParseError(lineno, 1, "data_frame: needs labels");
      data_frame = Frame(labels);
      section = Section::None;
    } else if (body.rfind("param_frame:", 0) == 0) {
      auto labels = split_ws(body.substr(12));
      if (labels.empty()) throw ParseError(lineno, 1, "param_frame: needs labels");
      param_frame = Frame(labels);
      section = Section::None;
    } else if (body == "likelihood:") {
      section = Section::Likelihood;
      saw_likelihood = true;
      section_line = lineno;
    } else if (body == "prior:") {
      section = Section::Prior;
      saw_prior = true;
      section_line = lineno;
    } else if (body == "interval_prior:") {
      section = Section::IntervalPrior;
      saw_interval = true;
      section_line = lineno;
    } else if (section == Section::Likelihood) {
      std::vector<double> row;
      for (const auto& tok : split_ws(body)) row.push_back(parse_number(tok, lineno));
      lik_rows.push_back(std::move(row));
    } else if (section == Section::Prior) {
      std::size_t close = body.find('}');
      if (body.empty() || body[0] != '{' || close == std::string::npos)
        throw ParseError(lineno, 1, "prior line must be '{members} mass'");
      auto members = split_ws(body.substr(1, close - 1));
      auto rest = split_ws(body.substr(close + 1));
      if (rest.size() != 1)
        throw ParseError(lineno, close + 2, "prior line needs exactly one mass");
      prior_rows.emplace_back(members, parse_number(rest[0], lineno));
    } else if (section == Section::IntervalPrior) {
      auto toks = split_ws(body);
      if (toks.size() != 3)
        throw ParseError(lineno, 1, "interval_prior line must be 'lo hi mass'");
      interval_rows.push_back({{parse_number(toks[0], lineno), parse_number(toks[1], lineno)},
                               parse_number(toks[2], lineno)});
    } else {
      throw ParseError(lineno, 1, "unexpected content outside any section");
    }
  }
  if (!saw_anything) throw ParseError(1, 1, "empty document");

  ModelBundle bundle;

  if (saw_prior && param_frame && !saw_likelihood && !data_frame) {
    // standalone mass function document
    std::vector<MassFunction::Entry> entries;
    for (const auto& [members, mass] : prior_rows) {
      std::uint64_t mask = 0;
      for (const auto& l : members) mask |= std::uint64_t{1} << param_frame->index(l);
      entries.emplace_back(mask, mass);
    }
    try {
      bundle.mass = MassFunction(*param_frame, entries);
    } catch (const std::invalid_argument& e) {
      throw ParseError(section_line, 1, std::string("prior section: ") + e.what());
    }
  } else if (saw_likelihood || saw_prior || data_frame || param_frame) {
    if (!data_frame) throw ParseError(1, 1, "missing data_frame section");
    if (!param_frame) throw ParseError(1, 1, "missing param_frame section");
    if (!saw_likelihood) throw ParseError(1, 1, "missing likelihood section");
    if (!saw_prior) throw ParseError(1, 1, "missing prior section");
    if (lik_rows.size() != param_frame->size())
      throw ParseError(section_line, 1,
                       "likelihood section: expected one row per parameter value");
    std::vector<double> table;
    for (const auto& row : lik_rows) {
      if (row.size() != data_frame->size())
        throw ParseError(section_line, 1,
                         "likelihood section: row width must match data frame");
      table.insert(table.end(), row.begin(), row.end());
    }
    // likelihood stored row-major as [theta][y]
    std::vector<double> rm(table.size());
    for (std::size_t t = 0; t < param_frame->size(); ++t)
      for (std::size_t y = 0; y < data_frame->size(); ++y)
        rm[t * data_frame->size() + y] = table[t * data_frame->size() + y];
    Likelihood lik = [&]() {
      try {
        return Likelihood(*data_frame, *param_frame, std::move(rm));
      } catch (const std::invalid_argument& e) {
        throw ParseError(section_line, 1,
                         std::string("likelihood section: ") + e.what());
      }
    }();

    std::vector<MassFunction::Entry> entries;
    for (const auto& [members, mass] : prior_rows) {
      std::uint64_t mask = 0;
      for (const auto& l : members) mask |= std::uint64_t{1} << param_frame->index(l);
      entries.emplace_back(mask, mass);
    }
    try {
      bundle.model = CredalModel(std::move(lik), MassFunction(*param_frame, entries));
    } catch (const std::invalid_argument& e) {
      throw ParseError(section_line, 1, std::string("prior section: ") + e.what());
    }
  }

  if (saw_interval) {
    try {
      bundle.interval_prior = IntervalPrior(interval_rows);
    } catch (const std::invalid_argument& e) {
      throw ParseError(section_line, 1, std::string("interval_prior section: ") + e.what());
    }
  }
  return bundle;
}

std::string subset_to_braces(const Frame& frame, std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for_each_member(mask, [&](std::size_t i) {
    if (!first) out += ' ';
    out += frame.label(i);
    first = false;
  });
  out += '}';
  return out;
}

std::string serialize_model(const ModelBundle& bundle) {
  std::string out;
  if (bundle.mass && !bundle.model) {
    const Frame& pf = bundle.mass->frame();
    out += "param_frame:";
    for (const auto& l : pf.labels()) out += " " + l;
    out += "\nprior:\n";
    for (const auto& [mask, mass] : bundle.mass->entries())
      out += subset_to_braces(pf, mask) + " " + format_double(mass) + "\n";
  }
  if (bundle.model) {
    const auto& m = *bundle.model;
    const Frame& df = m.likelihood.data_frame();
    const Frame& pf = m.likelihood.param_frame();
    out += "data_frame:";
    for (const auto& l : df.labels()) out += " " + l;
    out += "\nparam_frame:";
    for (const auto& l : pf.labels()) out += " " + l;
    out += "\nlikelihood:\n";
    for (std::size_t t = 0; t < pf.size(); ++t) {
      for (std::size_t y = 0; y < df.size(); ++y) {
        if (y) out += ' ';
        out += format_double(m.likelihood.at(y, t));
      }
      out += '\n';
    }
    out += "prior:\n";
    for (const auto& [mask, mass] : m.prior.entries())
      out += subset_to_braces(pf, mask) + " " + format_double(mass) + "\n";
  }
  if (bundle.interval_prior) {
    out += "interval_prior:\n";
    for (const auto& f : bundle.interval_prior->focal()) {
      auto bound = [](double v) {
        if (v == kNegInf) return std::string("-inf");
        if (v == kPosInf) return std::string("inf");
        return format_double(v);
      };
      out += bound(f.set.lo) + " " + bound(f.set.hi) + " " + format_double(f.mass) + "\n";
    }
  }
  return out;
}

IMTable parse_im_table(std::string_view text) {
  Cursor cur{text};
  auto first = cur.next_line();
  if (!first || first->first != "im_table")
    throw ParseError(first ? first->second : 1, 1, "expected 'im_table' header");
  std::optional<Frame> data_frame, param_frame;
  std::vector<std::vector<double>> rows;
  while (auto ln = cur.next_line()) {
    const auto& [body, lineno] = *ln;
    if (body.rfind("data_frame:", 0) == 0) {
      data_frame = Frame(split_ws(body.substr(11)));
      rows.assign(data_frame->size(), {});
    } else if (body.rfind("param_frame:", 0) == 0) {
      param_frame = Frame(split_ws(body.substr(12)));
    } else {
      if (!data_frame || !param_frame)
        throw ParseError(lineno, 1, "table rows before frame declarations");
      if (rows[0].empty())
        for (auto& r : rows) r.assign(std::size_t{1} << param_frame->size(), -1.0);
      auto open = body.find('{');
      auto close = body.find('}');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError(lineno, 1, "table row must be 'y {members} lower'");
      auto y_lab = split_ws(body.substr(0, open));
      if (y_lab.size() != 1) throw ParseError(lineno, 1, "table row needs one data label");
      std::size_t y = data_frame->index(y_lab[0]);
      std::uint64_t mask = 0;
      for (const auto& l : split_ws(body.substr(open + 1, close - open - 1)))
        mask |= std::uint64_t{1} << param_frame->index(l);
      auto rest = split_ws(body.substr(close + 1));
      if (rest.size() != 1) throw ParseError(lineno, 1, "table row needs one lower value");
      rows[y][mask] = parse_number(rest[0], lineno);
    }
  }
  if (!data_frame || !param_frame) throw ParseError(1, 1, "missing frame declarations");
  for (std::size_t y = 0; y < rows.size(); ++y)
    for (std::size_t h = 0; h < rows[y].size(); ++h)
      if (rows[y][h] < 0.0)
        throw ParseError(1, 1, "table incomplete: missing entry for data point '" +
                                   data_frame->label(y) + "'");
  try {
    return IMTable(*data_frame, *param_frame, std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::string serialize_im_table(const IMTable& table) {
  std::string out = "im_table\n";
  out += "data_frame:";
  for (const auto& l : table.data_frame().labels()) out += " " + l;
  out += "\nparam_frame:";
  for (const auto& l : table.param_frame().labels()) out += " " + l;
  out += "\n";
  const std::size_t n_sub = std::size_t{1} << table.param_size();
  for (std::size_t y = 0; y < table.data_size(); ++y)
    for (std::uint64_t H = 0; H < n_sub; ++H)
      out += table.data_frame().label(y) + " " +
             subset_to_braces(table.param_frame(), H) + " " +
             format_double(table.lower(y, H)) + "\n";
  return out;
}

std::string write_curve_csv(const CurveFile& curve) {
  std::string out = "theta,lower_vacuous,upper_vacuous,lower_combined,upper_combined\n";
  for (std::size_t i = 0; i < curve.theta.size(); ++i) {
    out += format_double(curve.theta[i]) + "," + format_double(curve.lower_vacuous[i]) +
           "," + format_double(curve.upper_vacuous[i]) + "," +
           format_double(curve.lower_combined[i]) + "," +
           format_double(curve.upper_combined[i]) + "\n";
  }
  return out;
}

CurveFile parse_curve_csv(std::string_view text) {
  Cursor cur{text};
  auto header = cur.next_line();
  if (!header ||
      header->first != "theta,lower_vacuous,upper_vacuous,lower_combined,upper_combined")
    throw ParseError(1, 1, "bad curve header");
  CurveFile out;
  while (auto ln = cur.next_line()) {
    const auto& [body, lineno] = *ln;
    std::vector<double> vals;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = body.find(',', start);
      std::string tok = body.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start);
      vals.push_back(parse_number(tok, lineno));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (vals.size() != 5) throw ParseError(lineno, 1, "curve row needs 5 columns");
    if (!out.theta.empty() && vals[0] <= out.theta.back())
      throw ParseError(lineno, 1, "theta must be strictly increasing");
    for (std::size_t i = 1; i < 5; ++i)
      if (vals[i] < -1e-12 || vals[i] > 1.0 + 1e-12)
        throw ParseError(lineno, 1, "probability outside [0,1]");
    out.theta.push_back(vals[0]);
    out.lower_vacuous.push_back(vals[1]);
    out.upper_vacuous.push_back(vals[2]);
    out.lower_combined.push_back(vals[3]);
    out.upper_combined.push_back(vals[4]);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace imprec
