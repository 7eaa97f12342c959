#include "rsq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rsq {

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump(it.value(), depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& e : j)
        if (e.is_structured()) flat = false;
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        dump(e, depth + 1, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigError, where + ": " + what);
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump(j, 0, out);
  out += '\n';
  return out;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Values& v) {
  Json a = Json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const CheckResult& c) {
  Json j;
  j["check"] = c.check;
  j["identity"] = c.identity;
  j["max_residual"] = c.max_residual;
  j["tolerance"] = c.tolerance;
  j["worst_point"] = c.worst_point;
  j["detail"] = c.detail;
  j["pass"] = c.pass;
  return j;
}

Json to_json(const std::vector<CheckResult>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(to_json(c));
  return a;
}

cplx parse_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  config_error(where, "expected a number or [re, im]");
}

Values parse_values(const Json& j, const std::string& where) {
  if (!j.is_array()) config_error(where, "expected an array");
  Values v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

CMatrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) config_error(where, "expected an array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Values row = parse_values(j[i], where + "[" + std::to_string(i) + "]");
    if (row.size() != cols) config_error(where, "rows have different lengths");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
  }
  return m;
}

cplx parse_complex_text(const std::string& text, const std::string& where) {
  std::istringstream is(text);
  double re = 0.0, im = 0.0;
  if (!(is >> re)) config_error(where, "cannot parse '" + text + "' as a number");
  char comma = 0;
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) config_error(where, "expected 're' or 're,im', got '" + text + "'");
    std::string rest;
    if (is >> rest) config_error(where, "trailing characters in '" + text + "'");
  }
  return {re, im};
}

void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      config_error(where, "unknown key '" + it.key() + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, path + ": malformed JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path);
  out << content;
}

}  // namespace rsq
