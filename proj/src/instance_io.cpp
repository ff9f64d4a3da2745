#include "dlab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "dlab/core.hpp"

namespace dlab::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const char* where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) fail(std::string("unknown field '") + key + "' in " + where);
  }
}

const Json& field(const Json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field '") + key + "' in " + where);
  return *it;
}

int int_field(const Json& obj, const char* key, const char* where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Rat value_from_json(const Json& v) {
  if (v.is_string()) {
    try {
      return rat_from_string(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number()) {
    fail("non-integer numeric literal " + v.dump() +
         "; quote it as a string (\"p/q\" or a decimal) to keep it exact");
  }
  fail("expected a rational value, got " + v.dump());
}

Json value_to_json(const Rat& v) { return rat_to_string(v); }

Matrix matrix_from_json(const Json& v, const char* where) {
  if (!v.is_array() || v.empty()) fail(std::string(where) + " must be a non-empty array");
  Matrix out;
  for (const Json& row : v) {
    if (!row.is_array()) fail(std::string(where) + " rows must be arrays");
    Row r;
    for (const Json& cell : row) r.push_back(value_from_json(cell));
    out.push_back(std::move(r));
  }
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const Row& row : m) {
    Json r = Json::array();
    for (const Rat& v : row) r.push_back(value_to_json(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json prediction_to_json(const Prediction& prediction) {
  Json p;
  if (const auto* oc = std::get_if<OptimalCandidate>(&prediction)) {
    p["type"] = "optimal_candidate";
    p["candidate"] = oc->candidate;
  } else if (const auto* full = std::get_if<ValuationProfile>(&prediction)) {
    p["type"] = "full";
    p["values"] = matrix_to_json(full->values);
  } else if (const auto* top = std::get_if<TopValues>(&prediction)) {
    p["type"] = "top_values";
    Json vals = Json::array();
    for (const Rat& v : top->values) vals.push_back(value_to_json(v));
    p["values"] = std::move(vals);
  } else {
    const auto& truncated = std::get<TruncatedProfile>(prediction);
    p["type"] = "truncated";
    p["k"] = truncated.k;
    p["values"] = matrix_to_json(truncated.values);
  }
  return p;
}

Prediction prediction_from_json(const Json& p) {
  if (!p.is_object()) fail("prediction must be an object");
  const Json& type = field(p, "type", "prediction");
  if (!type.is_string()) fail("prediction type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "optimal_candidate") {
    check_keys(p, {"type", "candidate"}, "prediction");
    return OptimalCandidate{int_field(p, "candidate", "prediction")};
  }
  if (t == "full") {
    check_keys(p, {"type", "values"}, "prediction");
    return ValuationProfile{
        matrix_from_json(field(p, "values", "prediction"), "prediction values")};
  }
  if (t == "top_values") {
    check_keys(p, {"type", "values"}, "prediction");
    const Json& vals = field(p, "values", "prediction");
    if (!vals.is_array()) fail("top_values prediction needs an array of values");
    TopValues top;
    for (const Json& v : vals) top.values.push_back(value_from_json(v));
    return top;
  }
  if (t == "truncated") {
    check_keys(p, {"type", "k", "values"}, "prediction");
    TruncatedProfile truncated;
    truncated.k = int_field(p, "k", "prediction");
    truncated.values = matrix_from_json(field(p, "values", "prediction"), "prediction values");
    return truncated;
  }
  fail("unknown prediction type '" + t + "'");
}

}  // namespace

Json render_instance(const Instance& instance, const Json& meta) {
  Json doc;
  doc["flavor"] = instance.flavor == Flavor::Voting ? "voting" : "matching";
  doc["n"] = instance.n_agents();
  doc["m"] = instance.n_alternatives();
  Json rankings = Json::array();
  for (const Ranking& r : instance.ordinal.rankings) rankings.push_back(r.order);
  doc["rankings"] = std::move(rankings);
  doc["prediction"] = prediction_to_json(instance.prediction);
  if (instance.truth) doc["truth"] = matrix_to_json(instance.truth->values);
  if (meta.is_object() && !meta.empty()) doc["meta"] = meta;
  return doc;
}

std::string render_instance_text(const Instance& instance, const Json& meta) {
  return render_instance(instance, meta).dump(2) + "\n";
}

Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) fail("instance document must be a JSON object");
  check_keys(doc, {"flavor", "n", "m", "rankings", "prediction", "truth", "meta"},
             "instance");
  Instance instance;
  const Json& flavor = field(doc, "flavor", "instance");
  if (!flavor.is_string()) fail("flavor must be a string");
  const std::string f = flavor.get<std::string>();
  if (f == "voting") {
    instance.flavor = Flavor::Voting;
  } else if (f == "matching") {
    instance.flavor = Flavor::Matching;
  } else {
    fail("flavor must be 'voting' or 'matching'");
  }

  const int n = int_field(doc, "n", "instance");
  const int m = int_field(doc, "m", "instance");
  const Json& rankings = field(doc, "rankings", "instance");
  if (!rankings.is_array() || static_cast<int>(rankings.size()) != n) {
    fail("rankings must be an array with one ranking per agent");
  }
  for (const Json& r : rankings) {
    if (!r.is_array() || static_cast<int>(r.size()) != m) {
      fail("each ranking must list all " + std::to_string(m) + " alternatives");
    }
    Ranking ranking;
    for (const Json& x : r) {
      if (!x.is_number_integer()) fail("rankings must contain 0-based integer indices");
      ranking.order.push_back(x.get<int>());
    }
    if (!ranking.is_permutation()) fail("each ranking must be a permutation of 0..m-1");
    instance.ordinal.rankings.push_back(std::move(ranking));
  }

  instance.prediction = prediction_from_json(field(doc, "prediction", "instance"));
  if (auto it = doc.find("truth"); it != doc.end()) {
    instance.truth = ValuationProfile{matrix_from_json(*it, "truth")};
  }
  if (auto it = doc.find("meta"); it != doc.end() && !it->is_object()) {
    fail("meta must be an object");
  }

  try {
    check_instance(instance);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return instance;
}

Instance parse_instance_text(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail("not valid JSON");
  return parse_instance(doc);
}

Json instance_meta(const Json& doc) {
  if (doc.is_object()) {
    if (auto it = doc.find("meta"); it != doc.end() && it->is_object()) return *it;
  }
  return Json::object();
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

void save_instance(const std::filesystem::path& path, const Instance& instance,
                   const Json& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path.string() + "'");
  out << render_instance_text(instance, meta);
}

std::string csv_header() {
  return "instance,mechanism,params,outcome,true_welfare,opt_welfare,ratio,"
         "ratio_class,eta,rho,bound,bound_ok";
}

std::string to_csv(const ResultRow& row) {
  const std::string* fields[] = {&row.instance,     &row.mechanism,   &row.params,
                                 &row.outcome,      &row.true_welfare, &row.opt_welfare,
                                 &row.ratio,        &row.ratio_class,  &row.eta,
                                 &row.rho,          &row.bound,        &row.bound_ok};
  std::string out;
  bool first = true;
  for (const std::string* f : fields) {
    if (!first) out += ',';
    out += *f;
    first = false;
  }
  return out;
}

std::string outcome_to_string(int candidate) { return std::to_string(candidate); }

std::string outcome_to_string(const Matching& matching) {
  std::string out;
  for (int i = 0; i < matching.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(matching.item_of[static_cast<size_t>(i)]);
  }
  return out;
}

}  // namespace dlab::io
