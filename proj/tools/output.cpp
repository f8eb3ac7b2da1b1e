#include "output.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace arctn::cli {

namespace {

std::string printf_number(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_input(const InputValue& v) {
  struct Visitor {
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_json_number(d); }
    std::string operator()(const std::string& s) const { return json_string(s); }
    std::string operator()(const std::vector<double>& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_json_number(xs[i]);
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v);
}

std::string text_input(const InputValue& v) {
  struct Visitor {
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_text_number(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const std::vector<double>& xs) const {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_text_number(xs[i]);
      return out;
    }
  };
  return std::visit(Visitor{}, v);
}

std::string inputs_text(const OutputRecord& r, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    out += (i ? sep : "") + r.inputs[i].first + "=" + text_input(r.inputs[i].second);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string optional_text(const std::optional<double>& x) { return x ? format_text_number(*x) : "-"; }

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw std::invalid_argument("unknown format '" + name + "'");
}

std::string format_json_number(double x) { return printf_number("%.17g", x); }
std::string format_text_number(double x) { return printf_number("%.10g", x); }

std::string to_json(const OutputRecord& r) {
  std::string out = "{\"command\":" + json_string(r.command) + ",\"inputs\":{";
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    out += (i ? "," : "") + json_string(r.inputs[i].first) + ":" + json_input(r.inputs[i].second);
  }
  out += "},\"value\":" + format_json_number(r.value);
  out += ",\"error_estimate\":" + format_json_number(r.error_estimate);
  if (r.reference) out += ",\"reference\":" + format_json_number(*r.reference);
  if (r.residual) out += ",\"residual\":" + format_json_number(*r.residual);
  out += std::string(",\"converged\":") + (r.converged ? "true" : "false");
  out += ",\"evals\":" + std::to_string(r.evals);
  if (r.pass) out += std::string(",\"pass\":") + (*r.pass ? "true" : "false");
  return out + "}";
}

void write_records(std::ostream& out, Format format, const std::vector<OutputRecord>& records) {
  switch (format) {
    case Format::json:
      for (const auto& r : records) out << to_json(r) << '\n';
      return;
    case Format::csv:
      out << "command,inputs,value,error_estimate,reference,residual,converged,evals,pass\n";
      for (const auto& r : records) {
        out << csv_field(r.command) << ',' << csv_field(inputs_text(r, ";")) << ','
            << format_json_number(r.value) << ',' << format_json_number(r.error_estimate) << ','
            << (r.reference ? format_json_number(*r.reference) : "") << ','
            << (r.residual ? format_json_number(*r.residual) : "") << ',' << (r.converged ? "true" : "false")
            << ',' << r.evals << ',' << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
      }
      return;
    case Format::text: {
      const std::vector<std::string> header = {"command", "inputs", "value",     "error", "reference",
                                               "residual", "conv",  "evals", "pass"};
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : records) {
        rows.push_back({r.command, inputs_text(r, " "), format_text_number(r.value),
                        format_text_number(r.error_estimate), optional_text(r.reference), optional_text(r.residual),
                        r.converged ? "yes" : "no", std::to_string(r.evals),
                        r.pass ? (*r.pass ? "yes" : "no") : "-"});
      }
      std::vector<std::size_t> width(header.size());
      for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
      }
      auto print_row = [&](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c) line += "  ";
          line += row[c];
          if (c + 1 < row.size()) line += std::string(width[c] - row[c].size(), ' ');
        }
        out << line << '\n';
      };
      print_row(header);
      for (const auto& row : rows) print_row(row);
      return;
    }
  }
}

}  // namespace arctn::cli
