#include "dlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dlab/instance_io.hpp"
#include "dlab/sampling.hpp"
#include "dlab/verify.hpp"

namespace dlab::cli {

namespace {

namespace fs = std::filesystem;
using analysis::MechanismId;
using analysis::MechanismSpec;
using analysis::Outcome;
using io::Json;
using io::ResultRow;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kSemantic = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat parse_rat_arg(const std::string& text, const char* what) {
  try {
    return rat_from_string(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(what) + ": '" + text + "' is not a rational");
  }
}

std::vector<Rat> parse_rat_list(const std::string& text, const char* what) {
  std::vector<Rat> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_rat_arg(item, what));
  }
  return out;
}

std::string outcome_string(const Outcome& outcome) {
  if (const int* candidate = std::get_if<int>(&outcome)) {
    return io::outcome_to_string(*candidate);
  }
  return io::outcome_to_string(std::get<Matching>(outcome));
}

std::string params_string(const MechanismSpec& mechanism) {
  if (mechanism.id == MechanismId::Mech2) return "lambda=" + rat_to_string(mechanism.lambda);
  if (mechanism.id == MechanismId::Mech3 && mechanism.k) {
    return "k=" + std::to_string(*mechanism.k);
  }
  return "";
}

// Shared by `run` and `sweep`: evaluates one mechanism on one instance.
ResultRow evaluate_row(const std::string& id, const Instance& instance,
                       const MechanismSpec& mechanism) {
  ResultRow row;
  row.instance = id;
  row.mechanism = analysis::mechanism_name(mechanism.id);
  row.params = params_string(mechanism);

  if (mechanism.id == MechanismId::Mech1 || mechanism.id == MechanismId::Mech2) {
    std::vector<Rat> tops = analysis::predicted_top_values(instance);
    for (int voter : voting::out_of_range_top_values(tops, instance.n_alternatives())) {
      std::cerr << "warning: predicted top value of voter " << voter
                << " lies outside [1/m, 1]\n";
    }
  }

  const Outcome outcome = analysis::run_mechanism(instance, mechanism);
  row.outcome = outcome_string(outcome);
  if (!instance.truth) return row;

  const ValuationProfile& truth = *instance.truth;
  const Rat achieved = analysis::outcome_welfare(outcome, truth);
  const Rat opt = analysis::optimum_welfare(instance, truth);
  const ExtRat ratio = achieved == 0 ? ExtRat::infinity() : ExtRat(opt / achieved);
  row.true_welfare = rat_to_string(achieved);
  row.opt_welfare = rat_to_string(opt);
  row.ratio = ext_to_string(ratio);
  const bool accurate = prediction_accurate(truth, instance.ordinal, instance.prediction);
  row.ratio_class = accurate ? "consistency" : "realized";

  ExtRat bound;
  bool have_bound = false;
  if (mechanism.id == MechanismId::Mech1 || mechanism.id == MechanismId::Mech2) {
    const Rat lambda = mechanism.id == MechanismId::Mech1 ? Rat(1) : mechanism.lambda;
    std::vector<Rat> tops = analysis::predicted_top_values(instance);
    voting::Shortlist shortlist = voting::mechanism2(instance.ordinal, tops, lambda);
    voting::PredictionError err = voting::eta_voting(instance.ordinal, shortlist, truth, tops);
    row.eta = ext_to_string(err.eta_shortlist);
    row.rho = rat_to_string(err.rho_winner_predicted);
    bound = err.distortion_bound;
    have_bound = true;
  } else if (mechanism.id == MechanismId::Mech3) {
    matching::MatchingPredictionError err = matching::eta_matching(
        instance.ordinal, truth, analysis::truncated_prediction(instance, mechanism));
    row.eta = ext_to_string(err.eta);
    bound = err.distortion_bound;
    have_bound = true;
  } else if (mechanism.id == MechanismId::MatchFull) {
    const int n = instance.n_agents();
    bound = accurate ? ExtRat(Rat(1)) : ExtRat(Rat(n) * n);
    have_bound = true;
  }
  if (have_bound) {
    row.bound = ext_to_string(bound);
    row.bound_ok = ratio <= bound ? "1" : "0";
  }
  return row;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string family;
  std::string out;
  int n = 0;
  int m = 0;
  int k = 0;
  std::string lambda = "1";
  std::string flavor = "voting";
  std::uint64_t seed = 0;
  int count = 1;
};

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
  fs::path out = base;
  out.replace_filename(base.stem().string() + suffix + base.extension().string());
  return out;
}

void write_instance_file(const fs::path& path, const Instance& instance, Json meta,
                         std::vector<std::string>& written) {
  io::save_instance(path, instance, meta);
  written.push_back(path.string());
}

Json expected_to_meta(const analysis::GeneratedInstance& gen) {
  Json expected = Json::object();
  for (const auto& [name, value] : gen.expected) expected[name] = ext_to_string(value);
  return expected;
}

int cmd_gen(const GenOptions& opt) {
  std::vector<std::string> written;
  const fs::path out(opt.out);

  if (opt.family == "random") {
    if (opt.n < 1) throw UsageError("gen random: need --n >= 1");
    sampling::Rng rng(opt.seed);
    const Flavor flavor = opt.flavor == "matching" ? Flavor::Matching : Flavor::Voting;
    const int m = flavor == Flavor::Matching ? opt.n : (opt.m > 0 ? opt.m : opt.n);
    const int k = opt.k > 0 ? opt.k : (m + 1) / 2;
    for (int i = 0; i < opt.count; ++i) {
      Instance instance = sampling::random_instance(flavor, opt.n, m, k, rng);
      Json meta;
      meta["family"] = "random";
      meta["seed"] = opt.seed;
      meta["index"] = i;
      const fs::path path =
          opt.count == 1 ? out : with_suffix(out, "_" + std::to_string(i));
      write_instance_file(path, instance, meta, written);
    }
  } else {
    analysis::GeneratedInstance gen;
    if (opt.family == "optcand_lb") {
      gen = analysis::gen_optcand_lb(opt.n, opt.m);
    } else if (opt.family == "fullval_lb") {
      gen = analysis::gen_fullval_lb(opt.n, opt.m);
    } else if (opt.family == "tradeoff_lb") {
      gen = analysis::gen_tradeoff_lb(opt.m, parse_rat_arg(opt.lambda, "--lambda"));
    } else if (opt.family == "matching_lb") {
      gen = analysis::gen_matching_lb(opt.n, opt.k);
    } else if (opt.family == "hybrid_lb") {
      gen = analysis::gen_hybrid_lb(opt.n, opt.m, opt.k);
    } else {
      throw UsageError("unknown family '" + opt.family + "'");
    }

    Json meta;
    meta["family"] = gen.family;
    meta["expected"] = expected_to_meta(gen);
    write_instance_file(out, gen.instance, meta, written);

    for (const auto& [name, truth] : gen.adversarial_truths) {
      Instance with_truth = gen.instance;
      with_truth.truth = truth;
      Json truth_meta = meta;
      truth_meta["truth_name"] = name;
      write_instance_file(with_suffix(out, "__truth_" + name), with_truth, truth_meta,
                          written);
    }
    if (gen.adversary) {
      // The adaptive truth responding to this library's own mechanism run.
      const int k = std::get<TruncatedProfile>(gen.instance.prediction).k;
      Matching mu = std::get<Matching>(
          analysis::run_mechanism(gen.instance, {MechanismId::Mech3, Rat(1), k}));
      Instance with_truth = gen.instance;
      with_truth.truth = gen.adversary->complete(mu);
      Json truth_meta = meta;
      truth_meta["truth_name"] = "vs_mech3";
      truth_meta["mech3_matching"] = io::outcome_to_string(mu);
      write_instance_file(with_suffix(out, "__truth_vs_mech3"), with_truth, truth_meta,
                          written);
    }
  }

  for (const std::string& path : written) std::cout << path << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// run

struct RunOptions {
  std::string instance_path;
  std::string mechanism;
  std::string lambda = "1";
  int k = 0;
};

MechanismSpec mechanism_spec(const std::string& name, const std::string& lambda, int k) {
  std::optional<MechanismId> id = analysis::mechanism_from_name(name);
  if (!id) throw UsageError("unknown mechanism '" + name + "'");
  MechanismSpec spec;
  spec.id = *id;
  spec.lambda = parse_rat_arg(lambda, "--lambda");
  if (k > 0) spec.k = k;
  return spec;
}

int cmd_run(const RunOptions& opt) {
  Instance instance = io::load_instance(opt.instance_path);
  MechanismSpec spec = mechanism_spec(opt.mechanism, opt.lambda, opt.k);
  ResultRow row = evaluate_row(fs::path(opt.instance_path).stem().string(), instance, spec);
  std::cout << io::csv_header() << "\n" << io::to_csv(row) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& id) {
  std::vector<verify::Report> reports;
  if (id == "all") {
    reports = verify::run_all();
  } else {
    if (!verify::known(id)) {
      std::cerr << "unknown verification id '" << id << "'; available:";
      for (const std::string& known_id : verify::catalog()) std::cerr << " " << known_id;
      std::cerr << " all\n";
      return kUsage;
    }
    reports.push_back(verify::run(id));
  }
  bool all_ok = true;
  for (const verify::Report& report : reports) {
    for (const verify::CheckLine& line : report.lines) {
      std::cout << (line.ok ? "ok " : "FAIL ") << report.id << ": " << line.text << "\n";
    }
    all_ok = all_ok && report.ok;
  }
  std::cout << (all_ok ? "verified" : "verification FAILED") << "\n";
  return all_ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string axis;
  std::string values;
  std::string out;
  std::string lambda = "1";
  int k = 0;
  std::vector<std::string> instances;
};

int cmd_sweep(const SweepOptions& opt) {
  std::vector<Rat> values = parse_rat_list(opt.values, "--values");
  if (values.empty()) throw UsageError("sweep: empty value range");
  if (opt.instances.empty()) throw UsageError("sweep: no instance files given");

  std::vector<ResultRow> rows;
  for (const std::string& path : opt.instances) {
    Instance instance = io::load_instance(path);
    const std::string id = fs::path(path).stem().string();
    if (opt.axis == "lambda") {
      for (const Rat& lambda : values) {
        MechanismSpec spec{MechanismId::Mech2, lambda, {}};
        rows.push_back(evaluate_row(id, instance, spec));
      }
    } else if (opt.axis == "k") {
      if (!instance.truth) throw UsageError("sweep over k needs instances with a truth");
      for (const Rat& value : values) {
        if (denominator(value) != 1) throw UsageError("sweep over k needs integer values");
        const int k = static_cast<int>(numerator(value));
        Instance derived = instance;
        derived.prediction = truncate_profile(*instance.truth, instance.ordinal, k);
        MechanismSpec spec{MechanismId::Mech3, Rat(1), k};
        rows.push_back(evaluate_row(id, derived, spec));
      }
    } else if (opt.axis == "corruption") {
      MechanismSpec spec;
      if (instance.flavor == Flavor::Voting) {
        spec = {MechanismId::Mech2, parse_rat_arg(opt.lambda, "--lambda"), {}};
      } else {
        spec = {MechanismId::Mech3, Rat(1),
                opt.k > 0 ? std::optional<int>(opt.k) : std::nullopt};
      }
      std::vector<analysis::SweepRow> sweep = analysis::error_sweep(instance, spec, values);
      for (const analysis::SweepRow& s : sweep) {
        ResultRow row;
        row.instance = id;
        row.mechanism = analysis::mechanism_name(spec.id);
        row.params = "level=" + rat_to_string(s.level);
        row.outcome = outcome_string(s.output);
        row.true_welfare = instance.truth
                               ? rat_to_string(analysis::outcome_welfare(s.output, *instance.truth))
                               : "";
        row.opt_welfare =
            instance.truth ? rat_to_string(analysis::optimum_welfare(instance, *instance.truth))
                           : "";
        row.ratio = ext_to_string(s.realized);
        row.ratio_class = s.level == 0 ? "consistency" : "realized";
        row.eta = ext_to_string(s.eta);
        row.rho = instance.flavor == Flavor::Voting ? ext_to_string(s.rho) : "";
        row.bound = ext_to_string(s.bound);
        row.bound_ok = s.bound_ok ? "1" : "0";
        rows.push_back(std::move(row));
      }
    } else {
      throw UsageError("sweep: axis must be lambda, k or corruption");
    }
  }

  std::ofstream out(opt.out, std::ios::binary);
  if (!out) throw UsageError("sweep: cannot write '" + opt.out + "'");
  out << io::csv_header() << "\n";
  for (const ResultRow& row : rows) out << io::to_csv(row) << "\n";
  std::cout << rows.size() << " rows -> " << opt.out << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"learning-augmented voting and matching mechanisms, exact distortion "
               "oracles, adversarial instance generators and error sweeps"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "generate instance files");
  gen->add_option("family", gen_opt.family,
                  "optcand_lb | fullval_lb | tradeoff_lb | matching_lb | hybrid_lb | random")
      ->required();
  gen->add_option("--out", gen_opt.out, "output instance path (.json)")->required();
  gen->add_option("--n", gen_opt.n, "number of agents");
  gen->add_option("--m", gen_opt.m, "number of alternatives");
  gen->add_option("--k", gen_opt.k, "truncation length / accurate positions");
  gen->add_option("--lambda", gen_opt.lambda, "approximation parameter (rational)");
  gen->add_option("--flavor", gen_opt.flavor, "random family: voting | matching");
  gen->add_option("--seed", gen_opt.seed, "random family: RNG seed");
  gen->add_option("--count", gen_opt.count, "random family: number of instances");

  RunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "run one mechanism on an instance file");
  run_cmd->add_option("instance", run_opt.instance_path, "instance file")->required();
  run_cmd->add_option("--mechanism", run_opt.mechanism,
                      "plurality | mech1 | mech2 | match_full | mech3")
      ->required();
  run_cmd->add_option("--lambda", run_opt.lambda, "mech2 parameter (rational)");
  run_cmd->add_option("--k", run_opt.k, "mech3 truncation length");

  std::string verify_id;
  CLI::App* verify_cmd = app.add_subcommand("verify", "recheck a documented claim");
  verify_cmd->add_option("id", verify_id, "claim id, or 'all'")->required();

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter grid to CSV");
  sweep->add_option("--axis", sweep_opt.axis, "lambda | k | corruption")->required();
  sweep->add_option("--values", sweep_opt.values, "comma-separated rational grid")->required();
  sweep->add_option("--out", sweep_opt.out, "output CSV path")->required();
  sweep->add_option("--lambda", sweep_opt.lambda, "mech2 parameter for corruption sweeps");
  sweep->add_option("--k", sweep_opt.k, "mech3 truncation for corruption sweeps");
  sweep->add_option("instances", sweep_opt.instances, "instance files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_opt);
    if (*run_cmd) return cmd_run(run_opt);
    if (*verify_cmd) return cmd_verify(verify_id);
    if (*sweep) return cmd_sweep(sweep_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const io::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // Parameter constraints surface as usage errors for the generators and
    // as semantic mismatches for mechanism runs.
    std::cerr << "error: " << e.what() << "\n";
    return *gen ? kUsage : kSemantic;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("distortion_lab");
  for (const std::string& a : args) storage.push_back(a);
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const std::string& s : storage) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace dlab::cli
