#include "fhnx/report.hpp"

namespace fhnx {

std::string csv_field(std::string_view raw) {
  if (raw.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(raw);
  std::string out = "\"";
  for (char ch : raw) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) {
    throw Error(ErrorKind::ConfigError, "CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_field(fields[i]);
  }
  out_ << '\n';
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : echo_config(cfg)) j[key] = value;
  return j;
}

nlohmann::json to_json(const ResidualNorms& n) {
  return {{"linf", n.linf}, {"l2", n.l2}, {"worst_t", n.worst_t}, {"worst_x", n.worst_x}};
}

nlohmann::json to_json(const ResidualReport& r) {
  const auto worst = r.worst_point();
  return {{"family", r.family},
          {"method", std::string(to_string(r.method))},
          {"fast", to_json(r.fast)},
          {"slow", to_json(r.slow)},
          {"worst_point", {worst[0], worst[1]}},
          {"sample_count", r.sample_count},
          {"notes", r.notes}};
}

nlohmann::json to_json(const StabilityReport& r) {
  const auto& s = r.spectrum;
  nlohmann::json eig = nlohmann::json::array();
  for (const CScalar& e : s.eigenvalues) eig.push_back({{"re", e.real()}, {"im", e.imag()}});
  return {{"u_star", r.u_star},
          {"v_star", r.v_star},
          {"k", r.k},
          {"jacobian",
           {{r.jacobian(0, 0), r.jacobian(0, 1)}, {r.jacobian(1, 0), r.jacobian(1, 1)}}},
          {"trace", s.trace},
          {"det", s.det},
          {"disc", s.disc},
          {"eigenvalues", eig},
          {"classification", std::string(to_string(s.classification))},
          {"crossings", r.dispersion.crossings}};
}

const std::vector<std::string>& check_columns() {
  static const std::vector<std::string> cols = {"family", "check",   "equation", "method",
                                                "linf",   "l2",      "worst_t",  "worst_x",
                                                "samples", "tolerance", "pass"};
  return cols;
}

std::vector<std::string> check_fields(const CheckRow& row) {
  return {row.family,
          row.check,
          row.equation,
          row.method,
          format_number(row.linf),
          format_number(row.l2),
          format_number(row.worst_t),
          format_number(row.worst_x),
          std::to_string(row.samples),
          format_number(row.tolerance),
          row.pass() ? "true" : "false"};
}

nlohmann::json to_json(const CheckRow& row) {
  return {{"family", row.family},   {"check", row.check},         {"equation", row.equation},
          {"method", row.method},   {"linf", row.linf},           {"l2", row.l2},
          {"worst_t", row.worst_t}, {"worst_x", row.worst_x},     {"samples", row.samples},
          {"tolerance", row.tolerance}, {"pass", row.pass()}};
}

}  // namespace fhnx
