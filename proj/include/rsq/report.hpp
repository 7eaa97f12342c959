/**
 * @file report.hpp
 * @brief JSON reading and writing for configs, points and check reports.
 *
 * Reports are written with a fixed key order and every double printed as
 * %.17g, so identical inputs give byte-identical files. Complex numbers are
 * read either as a plain number or as [re, im] and written as [re, im].
 */
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "rsq/check.hpp"
#include "rsq/darboux.hpp"
#include "rsq/linalg.hpp"

namespace rsq {

using Json = nlohmann::ordered_json;

/// %.17g; non-finite values become the strings "nan", "inf", "-inf".
std::string format_double(double v);
/// Pretty printer with two-space indentation and %.17g floats.
std::string dump_json(const Json& j);

Json to_json(cplx z);
Json to_json(const Values& v);
Json to_json(const CMatrix& m);
Json to_json(const CheckResult& c);
Json to_json(const std::vector<CheckResult>& checks);

/// Parsers throw Error(ConfigError) naming `where` on malformed input.
cplx parse_complex(const Json& j, const std::string& where);
Values parse_values(const Json& j, const std::string& where);
/// Array of rows, each an array of complex entries.
CMatrix parse_matrix(const Json& j, const std::string& where);
/// Parses "re" or "re,im".
cplx parse_complex_text(const std::string& text, const std::string& where);

/// Rejects keys of `obj` outside `allowed` (ConfigError).
void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rsq
