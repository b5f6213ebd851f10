// wrisk: watchlist risk assessment over biometric match-score populations.
//
// Subcommands:
//   landscape  Level-I risk landscape (menagerie, error rates, cost surface)
//   assess     Level-II per-traveler divergence risk
//   rates      per-category FNR/FPR table as CSV
//   synth      deterministic synthetic population generator
//
// Exit codes: 0 success, 1 partial (some travelers skipped), 2 input error,
// 3 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wrisk/cost.hpp"
#include "wrisk/entropy.hpp"
#include "wrisk/errors.hpp"
#include "wrisk/menagerie.hpp"
#include "wrisk/rates.hpp"
#include "wrisk/report.hpp"
#include "wrisk/scores.hpp"
#include "wrisk/synth.hpp"
#include "wrisk/version.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

struct CommonOptions {
  std::string scores_path;
  std::string out_path;
  double score_max = wrisk::kDefaultScoreMax;
  double tail_fraction = 0.025;
  std::string aggregator = "mean";
  std::string timestamp;
};

wrisk::Aggregator parse_aggregator(const std::string& name) {
  if (name == "mean") return wrisk::Aggregator::Mean;
  if (name == "extreme") return wrisk::Aggregator::Extreme;
  throw wrisk::ConfigError("unknown aggregator '" + name +
                           "' (expected mean or extreme)");
}

wrisk::ReportContext make_context(const CommonOptions& common,
                                  const std::string& input_path) {
  wrisk::ReportContext ctx;
  ctx.timestamp =
      common.timestamp.empty() ? wrisk::iso8601_utc_now() : common.timestamp;
  if (!input_path.empty()) {
    ctx.input_path = input_path;
    ctx.input_digest = wrisk::digest_file(input_path);
  }
  return ctx;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wrisk::IoError("cannot write file: " + path.string());
  out << content;
}

/// Report goes to --out when given (side tables next to it), else stdout.
void emit_report(const std::string& out_path, const std::string& report_json,
                 const std::vector<std::pair<std::string, std::string>>&
                     side_tables = {}) {
  if (out_path.empty()) {
    std::cout << report_json;
    return;
  }
  fs::path out(out_path);
  write_file(out, report_json);
  fs::path stem = out.parent_path() / out.stem();
  for (const auto& [suffix, content] : side_tables)
    write_file(fs::path(stem.string() + "_" + suffix + ".csv"), content);
}

wrisk::Population load_population(const CommonOptions& common) {
  wrisk::Population pop =
      wrisk::ingest_scores_file(common.scores_path, common.score_max);
  if (pop.subjects.empty()) {
    throw wrisk::InsufficientDataError("no records ingested from '" +
                                       common.scores_path + "'");
  }
  return pop;
}

struct LandscapeOptions {
  CommonOptions common;
  std::vector<double> thresholds = {10.0, 50.0, 100.0};
  double c_fn = 10.0;
  double c_fp = 1.0;
  double p_g = 0.1;
  std::vector<double> p_cat;  // sheep,goat,wolf_lamb,worm override
};

int run_landscape(const LandscapeOptions& opt) {
  auto ctx = make_context(opt.common, opt.common.scores_path);
  auto pop = load_population(opt.common);

  wrisk::MenagerieConfig menagerie_cfg;
  menagerie_cfg.tail_fraction = opt.common.tail_fraction;
  menagerie_cfg.aggregator = parse_aggregator(opt.common.aggregator);
  auto assign = wrisk::categorize(pop, menagerie_cfg);

  auto grid = wrisk::ThresholdGrid::make(opt.thresholds);
  auto rates = wrisk::sweep(pop, assign, grid);

  wrisk::CostParams params;
  params.c_fn = opt.c_fn;
  params.c_fp = opt.c_fp;
  params.p_g = opt.p_g;
  if (opt.p_cat.empty()) {
    params = wrisk::CostParams::with_empirical_priors(params, assign);
  } else {
    if (opt.p_cat.size() != 4) {
      throw wrisk::ConfigError(
          "--pcat expects 4 values: sheep,goat,wolf_lamb,worm");
    }
    params.p_cat = {{wrisk::Category::Sheep, opt.p_cat[0]},
                    {wrisk::Category::Goat, opt.p_cat[1]},
                    {wrisk::Category::WolfLamb, opt.p_cat[2]},
                    {wrisk::Category::Worm, opt.p_cat[3]}};
  }
  params.validate();

  auto landscape = wrisk::category_costs(rates, params);
  auto report = wrisk::make_landscape_report(ctx, menagerie_cfg, assign, rates,
                                             landscape, params);
  emit_report(opt.common.out_path, report,
              {{"menagerie", wrisk::menagerie_to_csv(assign)},
               {"rates", wrisk::rates_to_csv(rates)},
               {"landscape", wrisk::landscape_to_csv(landscape)}});
  return kExitOk;
}

struct AssessOptions {
  CommonOptions common;
  std::vector<std::string> traveler_ids;
  bool all = false;
  std::vector<double> loss = {0.1, 0.6, 0.3};  // sheep,goat,wolf_lamb
  std::size_t bins = 20;
  double epsilon = 0.5;
  std::string kl_orientation = "ref-first";
  std::size_t min_scores = 5;
  std::vector<double> from_divergences;  // d_goat,d_wl,d_sheep
};

wrisk::LossVector parse_loss(const std::vector<double>& values) {
  if (values.size() != 3)
    throw wrisk::ConfigError("--loss expects 3 values: sheep,goat,wolf_lamb");
  wrisk::LossVector loss{values[0], values[1], values[2]};
  loss.validate();
  return loss;
}

int run_assess(const AssessOptions& opt) {
  const wrisk::LossVector loss = parse_loss(opt.loss);

  if (!opt.from_divergences.empty()) {
    if (opt.from_divergences.size() != 3) {
      throw wrisk::ConfigError(
          "--from-divergences expects 3 values: d_goat,d_wl,d_sheep");
    }
    auto ctx = make_context(opt.common, "");
    auto report = wrisk::make_divergence_report(
        ctx, opt.from_divergences[0], opt.from_divergences[1],
        opt.from_divergences[2], loss);
    emit_report(opt.common.out_path, report);
    return kExitOk;
  }

  if (opt.common.scores_path.empty())
    throw wrisk::ConfigError("either --scores or --from-divergences is required");
  if (!opt.all && opt.traveler_ids.empty())
    throw wrisk::ConfigError("no travelers requested: pass ids or --all");

  auto ctx = make_context(opt.common, opt.common.scores_path);
  auto pop = load_population(opt.common);

  wrisk::MenagerieConfig menagerie_cfg;
  menagerie_cfg.tail_fraction = opt.common.tail_fraction;
  menagerie_cfg.aggregator = parse_aggregator(opt.common.aggregator);
  auto assign = wrisk::categorize(pop, menagerie_cfg);

  wrisk::AssessConfig assess_cfg;
  assess_cfg.binning = {opt.bins, opt.common.score_max, opt.epsilon};
  assess_cfg.loss = loss;
  assess_cfg.orientation = opt.kl_orientation == "traveler-first"
                               ? wrisk::KlOrientation::TravelerFirst
                               : wrisk::KlOrientation::RefFirst;
  if (opt.kl_orientation != "ref-first" &&
      opt.kl_orientation != "traveler-first") {
    throw wrisk::ConfigError("unknown --kl-orientation '" +
                             opt.kl_orientation + "'");
  }
  assess_cfg.min_scores = opt.min_scores;

  auto refs = wrisk::build_references(pop, assign, assess_cfg.binning);

  std::vector<std::string> requested;
  if (opt.all) {
    for (const auto& [id, scores] : pop.subjects) requested.push_back(id);
  } else {
    std::set<std::string> seen;
    for (const auto& id : opt.traveler_ids)
      if (seen.insert(id).second) requested.push_back(id);
  }

  std::vector<wrisk::TravelerRisk> travelers;
  std::vector<wrisk::SkippedTraveler> skipped;
  std::size_t assessed = 0;
  for (const auto& id : requested) {
    const auto* subject = pop.find(id);
    for (wrisk::ScoreClass cls :
         {wrisk::ScoreClass::Genuine, wrisk::ScoreClass::Impostor}) {
      std::string cls_name(wrisk::score_class_name(cls));
      if (subject == nullptr) {
        skipped.push_back({id, cls_name, "subject not present in input"});
        continue;
      }
      try {
        auto result =
            wrisk::assess_traveler(id, cls, subject->of(cls), refs, assess_cfg);
        if (!result.complete()) {
          std::string missing;
          for (wrisk::Category c : result.missing_references) {
            if (!missing.empty()) missing += ", ";
            missing += category_name(c);
          }
          skipped.push_back({id, cls_name, "reference unavailable for: " + missing});
          continue;
        }
        travelers.push_back(std::move(result));
        ++assessed;
      } catch (const wrisk::InsufficientDataError& e) {
        skipped.push_back({id, cls_name, e.what()});
      }
    }
  }

  auto report = wrisk::make_assess_report(ctx, menagerie_cfg, assess_cfg,
                                          requested, opt.all, refs, travelers,
                                          skipped);
  emit_report(opt.common.out_path, report,
              {{"travelers", wrisk::travelers_to_csv(travelers)}});
  if (assessed == 0) {
    std::cerr << "wrisk: no traveler could be assessed\n";
    return kExitInput;
  }
  return skipped.empty() ? kExitOk : kExitPartial;
}

struct RatesOptions {
  CommonOptions common;
  std::vector<double> thresholds = {10.0, 50.0, 100.0};
};

int run_rates(const RatesOptions& opt) {
  auto pop = load_population(opt.common);
  wrisk::MenagerieConfig menagerie_cfg;
  menagerie_cfg.tail_fraction = opt.common.tail_fraction;
  menagerie_cfg.aggregator = parse_aggregator(opt.common.aggregator);
  auto assign = wrisk::categorize(pop, menagerie_cfg);
  auto rates =
      wrisk::sweep(pop, assign, wrisk::ThresholdGrid::make(opt.thresholds));
  std::string csv = wrisk::rates_to_csv(rates);
  if (opt.common.out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(opt.common.out_path, csv);
  }
  return kExitOk;
}

struct SynthOptions {
  std::string spec_path;
  std::string out_path = "scores.csv";
  std::string ground_truth_path;
  std::optional<std::uint64_t> seed;
};

int run_synth(const SynthOptions& opt) {
  std::ifstream in(opt.spec_path);
  if (!in) throw wrisk::IoError("cannot open spec file: " + opt.spec_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  auto spec = wrisk::parse_synth_spec(text);
  if (opt.seed) spec.seed = *opt.seed;

  auto result = wrisk::generate(spec);
  write_file(opt.out_path, wrisk::records_to_csv(result.records));
  fs::path truth_path = opt.ground_truth_path.empty()
                            ? fs::path(opt.out_path).parent_path() /
                                  "ground_truth.csv"
                            : fs::path(opt.ground_truth_path);
  write_file(truth_path, wrisk::ground_truth_to_csv(result.ground_truth));
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool scores_required) {
  auto* scores = cmd->add_option("--scores", common.scores_path,
                                 "Scores CSV (probe_id,gallery_id,score)");
  if (scores_required) scores->required();
  cmd->add_option("--out", common.out_path,
                  "Output path (stdout when omitted)");
  cmd->add_option("--score-max", common.score_max,
                  "Upper bound of the matcher score scale")
      ->capture_default_str();
  cmd->add_option("--tail-fraction", common.tail_fraction,
                  "Tail fraction per menagerie side")
      ->capture_default_str();
  cmd->add_option("--aggregator", common.aggregator,
                  "Subject aggregate statistic: mean or extreme")
      ->capture_default_str();
  cmd->add_option("--timestamp", common.timestamp,
                  "Pin the report timestamp (for byte-identical reruns)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Watchlist risk assessment over biometric match scores"};
  app.set_version_flag("--version", std::string(wrisk::kToolVersion));
  app.set_config("--config", "", "Read defaults from a config file");
  app.require_subcommand(1);

  LandscapeOptions landscape_opt;
  auto* landscape = app.add_subcommand(
      "landscape", "Level-I risk landscape (cost detector)");
  add_common(landscape, landscape_opt.common, true);
  landscape->add_option("--thresholds", landscape_opt.thresholds,
                        "Decision thresholds (strictly increasing)")
      ->delimiter(',')
      ->capture_default_str();
  landscape->add_option("--cfn", landscape_opt.c_fn, "Cost per false negative")
      ->capture_default_str();
  landscape->add_option("--cfp", landscape_opt.c_fp, "Cost per false positive")
      ->capture_default_str();
  landscape->add_option("--pg", landscape_opt.p_g,
                        "Prior probability of a genuine trial")
      ->capture_default_str();
  landscape->add_option("--pcat", landscape_opt.p_cat,
                        "Category priors sheep,goat,wolf_lamb,worm "
                        "(default: empirical fractions)")
      ->delimiter(',');

  AssessOptions assess_opt;
  auto* assess = app.add_subcommand(
      "assess", "Level-II per-traveler divergence risk");
  add_common(assess, assess_opt.common, false);
  assess->add_option("travelers", assess_opt.traveler_ids,
                     "Traveler ids to assess");
  assess->add_flag("--all", assess_opt.all, "Assess every subject");
  assess->add_option("--loss", assess_opt.loss,
                     "Loss values sheep,goat,wolf_lamb")
      ->delimiter(',')
      ->capture_default_str();
  assess->add_option("--bins", assess_opt.bins, "Histogram bin count")
      ->capture_default_str();
  assess->add_option("--epsilon", assess_opt.epsilon,
                     "Additive smoothing mass per bin")
      ->capture_default_str();
  assess->add_option("--kl-orientation", assess_opt.kl_orientation,
                     "Divergence orientation: ref-first or traveler-first")
      ->capture_default_str();
  assess->add_option("--min-scores", assess_opt.min_scores,
                     "Minimum scores per class to assess a traveler")
      ->capture_default_str();
  assess->add_option("--from-divergences", assess_opt.from_divergences,
                     "Skip score data; compute risk from d_goat,d_wl,d_sheep")
      ->delimiter(',');

  RatesOptions rates_opt;
  auto* rates =
      app.add_subcommand("rates", "Per-category FNR/FPR table as CSV");
  add_common(rates, rates_opt.common, true);
  rates->add_option("--thresholds", rates_opt.thresholds,
                    "Decision thresholds (strictly increasing)")
      ->delimiter(',')
      ->capture_default_str();

  SynthOptions synth_opt;
  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic population with planted structure");
  synth->add_option("--spec", synth_opt.spec_path, "Synth spec JSON file")
      ->required();
  synth->add_option("--out", synth_opt.out_path, "Scores CSV output path")
      ->capture_default_str();
  synth->add_option("--ground-truth", synth_opt.ground_truth_path,
                    "Ground truth CSV path (default: ground_truth.csv "
                    "next to --out)");
  std::uint64_t seed_value = 0;
  auto* seed_flag =
      synth->add_option("--seed", seed_value, "Override the spec's seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (seed_flag->count() > 0) synth_opt.seed = seed_value;
    if (landscape->parsed()) return run_landscape(landscape_opt);
    if (assess->parsed()) return run_assess(assess_opt);
    if (rates->parsed()) return run_rates(rates_opt);
    if (synth->parsed()) return run_synth(synth_opt);
  } catch (const wrisk::ConfigError& e) {
    std::cerr << "wrisk: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wrisk::Error& e) {
    std::cerr << "wrisk: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "wrisk: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
