#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dlab/types.hpp"

namespace dlab::io {

// File-shape problems (unknown fields, bad literals, wrong dimensions).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// Values serialize as exact "p/q" strings. Input accepts "p/q" strings,
// decimal strings ("0.25", converted exactly) and integer JSON numbers;
// non-integer JSON numbers are rejected since they already lost precision.
Json render_instance(const Instance& instance, const Json& meta = Json());
std::string render_instance_text(const Instance& instance, const Json& meta = Json());

Instance parse_instance(const Json& doc);
Instance parse_instance_text(const std::string& text);
Json instance_meta(const Json& doc);  // empty object when absent

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance,
                   const Json& meta = Json());

// One CSV row of a mechanism run or sweep evaluation. Unavailable fields
// stay empty. Exact rationals render as "p/q"; infinite ratios as "inf".
struct ResultRow {
  std::string instance;
  std::string mechanism;
  std::string params;
  std::string outcome;
  std::string true_welfare;
  std::string opt_welfare;
  std::string ratio;
  std::string ratio_class;  // consistency | robustness | realized
  std::string eta;
  std::string rho;
  std::string bound;
  std::string bound_ok;     // "1", "0" or empty
};

std::string csv_header();
std::string to_csv(const ResultRow& row);

std::string outcome_to_string(int candidate);
std::string outcome_to_string(const Matching& matching);

}  // namespace dlab::io
