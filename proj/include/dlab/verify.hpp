#pragma once

#include <string>
#include <vector>

#include "dlab/analysis.hpp"

namespace dlab::verify {

struct CheckLine {
  bool ok = false;
  std::string text;
};

struct Report {
  std::string id;
  bool ok = true;
  std::vector<CheckLine> lines;

  void check(bool pass, std::string text) {
    ok = ok && pass;
    lines.push_back({pass, std::move(text)});
  }
};

// Identifiers of every verifiable claim, in a stable order.
std::vector<std::string> catalog();
bool known(const std::string& id);

// Recomputes the named construction from scratch and checks each expected
// quantity and bound, reporting exact values. Throws std::invalid_argument
// for an unknown id.
Report run(const std::string& id);
std::vector<Report> run_all();

}  // namespace dlab::verify
