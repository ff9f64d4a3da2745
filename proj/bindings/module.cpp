#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dlab/analysis.hpp"
#include "dlab/instance_io.hpp"

namespace py = pybind11;

namespace {

using dlab::Instance;
using dlab::Matching;
using dlab::Matrix;
using dlab::OrdinalProfile;
using dlab::Ranking;
using dlab::Rat;
using dlab::Row;
using dlab::TruncatedProfile;
using dlab::ValuationProfile;

// Rationals cross the boundary as exact "p/q" strings.
using StrRow = std::vector<std::string>;
using StrMatrix = std::vector<StrRow>;

Row row_from(const StrRow& row) {
  Row out;
  out.reserve(row.size());
  for (const std::string& v : row) out.push_back(dlab::rat_from_string(v));
  return out;
}

Matrix matrix_from(const StrMatrix& values) {
  Matrix out;
  out.reserve(values.size());
  for (const StrRow& row : values) out.push_back(row_from(row));
  return out;
}

OrdinalProfile ordinal_from(const std::vector<std::vector<int>>& rankings) {
  OrdinalProfile ordinal;
  ordinal.rankings.reserve(rankings.size());
  for (const auto& order : rankings) ordinal.rankings.push_back(Ranking{order});
  return ordinal;
}

py::dict matching_result_dict(const dlab::matching::MatchingResult& result) {
  py::dict out;
  out["item_of"] = result.matching.item_of;
  out["welfare"] = dlab::rat_to_string(result.welfare);
  out["top_matched_agent"] =
      result.top_matched_agent ? py::cast(*result.top_matched_agent) : py::none();
  return out;
}

}  // namespace

PYBIND11_MODULE(distortion_lab, m) {
  m.doc() =
      "Learning-augmented single-winner voting and one-sided matching: "
      "mechanisms, exact worst-case distortion oracles and adversarial "
      "instance generators. Values are exact rationals passed as 'p/q' strings.";

  m.def(
      "validate_profile",
      [](const std::vector<std::vector<int>>& rankings, const StrMatrix& values) {
        OrdinalProfile ordinal = ordinal_from(rankings);
        std::vector<std::string> out;
        for (const dlab::Violation& v :
             dlab::validate(ValuationProfile{matrix_from(values)}, ordinal)) {
          out.push_back(v.describe());
        }
        return out;
      },
      py::arg("rankings"), py::arg("values"),
      "Unit-sum profile violations; empty list means valid.");

  m.def(
      "induced_ranking",
      [](const StrRow& values) { return dlab::induced_ranking(row_from(values)).order; },
      py::arg("values"), "Alternatives sorted by value, ties toward lower index.");

  m.def(
      "social_welfare",
      [](int candidate, const StrMatrix& values) {
        return dlab::rat_to_string(
            dlab::social_welfare(candidate, ValuationProfile{matrix_from(values)}));
      },
      py::arg("candidate"), py::arg("values"));

  m.def(
      "matching_welfare",
      [](const std::vector<int>& item_of, const StrMatrix& values) {
        return dlab::rat_to_string(dlab::social_welfare(
            Matching{item_of}, ValuationProfile{matrix_from(values)}));
      },
      py::arg("item_of"), py::arg("values"));

  m.def(
      "plurality_winner",
      [](const std::vector<std::vector<int>>& rankings) {
        return dlab::voting::plurality_winner(ordinal_from(rankings));
      },
      py::arg("rankings"));

  m.def(
      "mechanism1",
      [](const std::vector<std::vector<int>>& rankings, const StrRow& predicted_top) {
        return dlab::voting::mechanism1(ordinal_from(rankings), row_from(predicted_top));
      },
      py::arg("rankings"), py::arg("predicted_top"),
      "Winner with maximum predicted first-place welfare.");

  m.def(
      "mechanism2",
      [](const std::vector<std::vector<int>>& rankings, const StrRow& predicted_top,
         const std::string& lambda) {
        dlab::voting::Shortlist s = dlab::voting::mechanism2(
            ordinal_from(rankings), row_from(predicted_top), dlab::rat_from_string(lambda));
        py::dict out;
        out["winner"] = s.winner;
        out["a_star"] = s.a_star;
        out["members"] = s.members;
        out["threshold"] = dlab::rat_to_string(s.threshold);
        return out;
      },
      py::arg("rankings"), py::arg("predicted_top"), py::arg("lambda_"),
      "Best-plurality winner among candidates within factor lambda of the "
      "maximum predicted first-place welfare.");

  m.def(
      "max_weight_matching",
      [](const StrMatrix& values) {
        return matching_result_dict(
            dlab::matching::max_weight_matching(dlab::WeightMatrix{matrix_from(values), false}));
      },
      py::arg("values"),
      "Exact maximum-weight perfect matching (lexicographically canonical).");

  m.def(
      "mechanism_full",
      [](const std::vector<std::vector<int>>& rankings, const StrMatrix& predicted) {
        return matching_result_dict(dlab::matching::mechanism_full(
            ordinal_from(rankings), ValuationProfile{matrix_from(predicted)}));
      },
      py::arg("rankings"), py::arg("predicted"));

  m.def(
      "mechanism3",
      [](const std::vector<std::vector<int>>& rankings, int k, const StrMatrix& truncated) {
        return matching_result_dict(dlab::matching::mechanism3(
            ordinal_from(rankings), TruncatedProfile{k, matrix_from(truncated)}));
      },
      py::arg("rankings"), py::arg("k"), py::arg("truncated"),
      "Zero-completes a k-truncated prediction and matches optimally.");

  m.def(
      "worst_ratio_voting",
      [](const std::vector<std::vector<int>>& rankings, int candidate) {
        dlab::analysis::DistortionReport report =
            dlab::analysis::worst_ratio(ordinal_from(rankings), candidate);
        py::dict out;
        out["ratio"] = dlab::ext_to_string(report.ratio);
        out["witness_best"] = std::get<int>(report.witness_best);
        StrMatrix witness;
        for (const Row& row : report.witness_truth.values) {
          StrRow r;
          for (const Rat& v : row) r.push_back(dlab::rat_to_string(v));
          witness.push_back(std::move(r));
        }
        out["witness_truth"] = witness;
        return out;
      },
      py::arg("rankings"), py::arg("candidate"),
      "Exact worst-case ratio over all consistent unit-sum profiles.");

  m.def(
      "worst_ratio_matching",
      [](const std::vector<std::vector<int>>& rankings, const std::vector<int>& item_of) {
        dlab::analysis::DistortionReport report =
            dlab::analysis::worst_ratio(ordinal_from(rankings), Matching{item_of});
        py::dict out;
        out["ratio"] = dlab::ext_to_string(report.ratio);
        out["witness_best"] = std::get<Matching>(report.witness_best).item_of;
        return out;
      },
      py::arg("rankings"), py::arg("item_of"));

  m.def(
      "generate",
      [](const std::string& family, int n, int m, int k, const std::string& lambda) {
        dlab::analysis::GeneratedInstance gen;
        if (family == "optcand_lb") {
          gen = dlab::analysis::gen_optcand_lb(n, m);
        } else if (family == "fullval_lb") {
          gen = dlab::analysis::gen_fullval_lb(n, m);
        } else if (family == "tradeoff_lb") {
          gen = dlab::analysis::gen_tradeoff_lb(m, dlab::rat_from_string(lambda));
        } else if (family == "matching_lb") {
          gen = dlab::analysis::gen_matching_lb(n, k);
        } else if (family == "hybrid_lb") {
          gen = dlab::analysis::gen_hybrid_lb(n, m, k);
        } else {
          throw std::invalid_argument("unknown family '" + family + "'");
        }
        py::dict out;
        out["instance"] = dlab::io::render_instance_text(gen.instance);
        py::dict expected;
        for (const auto& [name, value] : gen.expected) {
          expected[py::str(name)] = dlab::ext_to_string(value);
        }
        out["expected"] = expected;
        py::dict truths;
        for (const auto& [name, truth] : gen.adversarial_truths) {
          Instance with_truth = gen.instance;
          with_truth.truth = truth;
          truths[py::str(name)] = dlab::io::render_instance_text(with_truth);
        }
        out["adversarial_truths"] = truths;
        return out;
      },
      py::arg("family"), py::arg("n") = 0, py::arg("m") = 0, py::arg("k") = 0,
      py::arg("lambda_") = "1",
      "Named adversarial construction as JSON instance text plus expected values.");

  m.attr("__version__") = "0.1.0";
}
