#pragma once

#include "fhnx/config.hpp"
#include "fhnx/stability.hpp"
#include "fhnx/verify.hpp"

#include <json.hpp>

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fhnx {

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(std::string_view raw);

/// Writes a header row on construction and CRLF-free rows afterwards.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t width_;
};

nlohmann::json config_json(const RunConfig& cfg);
nlohmann::json to_json(const ResidualNorms& n);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const StabilityReport& r);

/// One row of the verify table.
struct CheckRow {
  std::string family;
  std::string check;
  std::string equation;
  std::string method;
  double linf = 0.0;
  double l2 = 0.0;
  double worst_t = 0.0;
  double worst_x = 0.0;
  std::size_t samples = 0;
  double tolerance = 0.0;

  bool pass() const { return linf <= tolerance; }
};

const std::vector<std::string>& check_columns();
std::vector<std::string> check_fields(const CheckRow& row);
nlohmann::json to_json(const CheckRow& row);

}  // namespace fhnx
