#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imprec/im_table.hpp"
#include "imprec/likelihood.hpp"
#include "imprec/randomset.hpp"

namespace imprec {

/// Parse failure with 1-based location.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Everything a model file can carry. A credal model needs the frames, the
/// likelihood table and a prior section; a document with just param_frame
/// and prior yields a standalone mass function; the interval prior is
/// independent and optional.
struct ModelBundle {
  std::optional<CredalModel> model;
  std::optional<MassFunction> mass;
  std::optional<IntervalPrior> interval_prior;
};

/// Model file format (line oriented, '#' comments):
///   data_frame: y1 y2 y3
///   param_frame: t1 t2 t3
///   likelihood:           # one row per parameter value, columns follow data_frame
///   0.8 0.1 0.1
///   ...
///   prior:                # focal member list + decimal mass
///   {t1} 0.5
///   {t1 t2 t3} 0.5
///   interval_prior:       # lower bound, upper bound, mass; -inf/inf allowed
///   -inf 7 0.9
///   -inf inf 0.1
ModelBundle parse_model(std::string_view text);

std::string serialize_model(const ModelBundle& bundle);

/// IM table file: frames plus one "label {members} decimal" line per (y, H).
IMTable parse_im_table(std::string_view text);
std::string serialize_im_table(const IMTable& table);

/// CSV with header theta,lower_vacuous,upper_vacuous,lower_combined,
/// upper_combined; theta strictly increasing, all probabilities in [0,1].
struct CurveFile {
  std::vector<double> theta;
  std::vector<double> lower_vacuous, upper_vacuous;
  std::vector<double> lower_combined, upper_combined;
};

std::string write_curve_csv(const CurveFile& curve);
CurveFile parse_curve_csv(std::string_view text);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Reads a whole file; throws std::runtime_error on IO failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

std::string subset_to_braces(const Frame& frame, std::uint64_t mask);

}  // namespace imprec
