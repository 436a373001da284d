#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "chernform/detformula.hpp"

namespace chernform {

using Json = nlohmann::json;

/// Shortest round-trip formatting via %.17g; byte-stable across runs.
std::string format_double(double v);

/// Sample/aggregate CSV with the fixed schema
/// x1,y1,x2,y2,quantity,convention,value_re,value_im. Aggregate rows leave the
/// coordinate columns empty. Row order is the insertion order, which callers
/// keep deterministic.
class CsvWriter {
 public:
  CsvWriter();

  void add_sample(const Point4& p, const std::string& quantity, const std::string& convention,
                  Complex value);
  void add_aggregate(const std::string& quantity, const std::string& convention, Complex value);

  const std::string& str() const { return data_; }
  void write(const std::filesystem::path& path) const;

 private:
  std::string data_;
};

Json to_json(const Point4& p);
Json to_json(const PatternReport& r);
Json to_json(const MetricValidation& v);
Json to_json(const Integral& i);
Json to_json(const IdentityReport& r);
Json to_json(const PositivityReport& r);
Json to_json(const BlockFactorization& b);

void write_json(const Json& j, const std::filesystem::path& path);

}  // namespace chernform
