#include "chernform/report.hpp"

#include <cstdio>
#include <fstream>

namespace chernform {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter() { data_ = "x1,y1,x2,y2,quantity,convention,value_re,value_im\n"; }

void CsvWriter::add_sample(const Point4& p, const std::string& quantity,
                           const std::string& convention, Complex value) {
  data_ += format_double(p.x1) + "," + format_double(p.y1) + "," + format_double(p.x2) + "," +
           format_double(p.y2) + "," + quantity + "," + convention + "," +
           format_double(value.real()) + "," + format_double(value.imag()) + "\n";
}

void CsvWriter::add_aggregate(const std::string& quantity, const std::string& convention,
                              Complex value) {
  data_ += ",,,," + quantity + "," + convention + "," + format_double(value.real()) + "," +
           format_double(value.imag()) + "\n";
}

void CsvWriter::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << data_;
}

Json to_json(const Point4& p) { return Json{{"x1", p.x1}, {"y1", p.y1}, {"x2", p.x2}, {"y2", p.y2}}; }

namespace {

Json to_json(const BlockResidual& b) {
  return Json{
      {"max_abs", b.max_abs},
      {"worst_point", to_json(b.worst_point)},
      {"worst_component", {b.worst_i + 1, b.worst_j + 1}},
      {"worst_entry", {slot_name(b.worst_row), slot_name(b.worst_col)}},
      {"checked", b.checked},
      {"pass", b.pass},
  };
}

Json complex_json(Complex v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

}  // namespace

Json to_json(const PatternReport& r) {
  return Json{
      {"mode", r.mode == MetricMode::product ? "product" : "fibration"},
      {"tolerance", r.tolerance},
      {"grid", r.grid.points},
      {"pure_z1", to_json(r.pure_z1)},
      {"pure_z2", to_json(r.pure_z2)},
      {"mixed", to_json(r.mixed)},
      {"pass", r.pass},
  };
}

Json to_json(const MetricValidation& v) {
  return Json{
      {"hermitian_ok", v.hermitian_ok},
      {"max_hermitian_deviation", v.max_hermitian_deviation},
      {"worst_hermitian_point", to_json(v.worst_hermitian_point)},
      {"positive_definite_ok", v.positive_definite_ok},
      {"min_leading_minor", v.min_leading_minor},
      {"failing_minor", v.failing_minor},
      {"worst_minor_point", to_json(v.worst_minor_point)},
  };
}

Json to_json(const Integral& i) {
  return Json{
      {"value", complex_json(i.value)},
      {"error_estimate", i.error_estimate},
      {"failed_points", i.failed_points},
      {"total_points", i.total_points},
  };
}

Json to_json(const IdentityReport& r) {
  Json table = Json::array();
  for (const auto& row : r.table) {
    Json oracle = Json::array();
    for (std::size_t c = 0; c < r.conventions.size(); ++c) {
      oracle.push_back(Json{
          {"convention", convention_name(r.conventions[c])},
          {"integral", complex_json(row.oracle_integral[c])},
          {"integral_change", row.oracle_integral_change[c]},
          {"max_residual", row.max_residual[c]},
      });
    }
    table.push_back(Json{
        {"resolution", row.resolution},
        {"det_integral", complex_json(row.det_integral)},
        {"det_integral_change", row.det_integral_change},
        {"oracle", oracle},
    });
  }
  return Json{
      {"out_of_hypothesis", r.out_of_hypothesis},
      {"pattern", to_json(r.pattern)},
      {"resolutions", r.resolutions},
      {"convergence_table", table},
      {"samples", r.samples.size()},
      {"failed_points", r.failed_points},
      {"total_points", r.total_points},
  };
}

Json to_json(const PositivityReport& r) {
  Json oracle = Json::array();
  for (const auto& [conv, integral] : r.oracle_integrals) {
    oracle.push_back(Json{{"convention", convention_name(conv)}, {"integral", to_json(integral)}});
  }
  return Json{
      {"det_integral", to_json(r.det_integral)},
      {"sign", sign_name(r.sign)},
      {"imag_ok", r.imag_ok},
      {"imag_tolerance", r.imag_tolerance},
      {"zero_tolerance", r.zero_tolerance},
      {"oracle_integrals", oracle},
  };
}

Json to_json(const BlockFactorization& b) {
  const char* shape = b.shape == BlockFactorization::Shape::product     ? "product"
                      : b.shape == BlockFactorization::Shape::fibration ? "fibration"
                                                                        : "general";
  return Json{
      {"full_det", complex_json(b.full_det)},
      {"antidiagonal_product", complex_json(b.antidiagonal_product)},
      {"residual", b.residual},
      {"shape", shape},
      {"pure_z1_max", b.pure_z1_max},
      {"pure_z2_max", b.pure_z2_max},
      {"holds", b.holds},
  };
}

void write_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

}  // namespace chernform
