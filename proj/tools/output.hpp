#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace arctn::cli {

enum class Format { text, json, csv };

Format parse_format(const std::string& name);

using InputValue = std::variant<std::int64_t, double, std::string, std::vector<double>>;

/// One result line. Field order on output is fixed: command, inputs, value,
/// error_estimate, reference, residual, converged, evals, pass.
struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, InputValue>> inputs;
  double value = 0.0;
  double error_estimate = 0.0;
  std::optional<double> reference;
  std::optional<double> residual;
  bool converged = true;
  std::int64_t evals = 0;
  /// Set by commands that compare against a reference.
  std::optional<bool> pass;

  /// Sets reference and residual = value - reference.
  void set_reference(double ref) {
    reference = ref;
    residual = value - ref;
  }
};

/// JSON numbers: 17 significant digits. Text: 10.
std::string format_json_number(double x);
std::string format_text_number(double x);

std::string to_json(const OutputRecord& record);

/// Writes records in the requested format; text is an aligned table, csv has
/// a header row.
void write_records(std::ostream& out, Format format, const std::vector<OutputRecord>& records);

}  // namespace arctn::cli
