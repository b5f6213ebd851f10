#include "wrisk/report.hpp"

#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wrisk/errors.hpp"
#include "wrisk/version.hpp"

namespace wrisk {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json opt_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

ordered_json meta_json(const ReportContext& ctx) {
  ordered_json meta;
  meta["schema_version"] = kReportSchemaVersion;
  meta["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  meta["generated_at"] = ctx.timestamp;
  if (!ctx.input_path.empty()) {
    meta["input"] = {{"path", ctx.input_path}, {"digest", ctx.input_digest}};
  }
  return meta;
}

ordered_json menagerie_config_json(const MenagerieConfig& cfg) {
  return {{"tail_fraction", cfg.tail_fraction},
          {"aggregator", aggregator_name(cfg.aggregator)}};
}

ordered_json menagerie_summary_json(const MenagerieAssignment& assign) {
  ordered_json summary;
  summary["k"] = assign.k;
  ordered_json counts;
  for (const auto& [c, count] : assign.counts())
    counts[std::string(category_name(c))] = count;
  summary["counts"] = counts;
  ordered_json assignment = ordered_json::object();
  for (const auto& [id, c] : assign.category)
    assignment[id] = category_name(c);
  summary["assignment"] = assignment;
  return summary;
}

ordered_json rates_json(const CategoryErrorRates& rates) {
  ordered_json rows = ordered_json::array();
  auto emit = [&rows, &rates](std::string_view name,
                              const std::vector<RateCell>& cells) {
    for (std::size_t i = 0; i < rates.grid.size(); ++i) {
      const RateCell& cell = cells[i];
      ordered_json row;
      row["category"] = name;
      row["threshold"] = rates.grid.thresholds[i];
      row["fnr"] = opt_number(cell.fnr());
      row["fpr"] = opt_number(cell.fpr());
      row["fn_count"] = cell.fn_count;
      row["n_genuine"] = cell.n_genuine;
      row["fp_count"] = cell.fp_count;
      row["n_impostor"] = cell.n_impostor;
      rows.push_back(row);
    }
  };
  for (Category c : kAllCategories)
    emit(category_name(c), rates.per_category.at(c));
  emit("all", rates.pooled);
  return rows;
}

ordered_json landscape_json(const std::vector<LandscapeEntry>& entries) {
  ordered_json rows = ordered_json::array();
  for (const auto& entry : entries) {
    ordered_json row;
    row["category"] = category_name(entry.category);
    row["threshold"] = entry.threshold;
    row["cost_g_units_cfn"] = opt_number(entry.cost_g_units);
    row["cost_i_units_cfp"] = opt_number(entry.cost_i_units);
    row["cost_g"] = opt_number(entry.cost_g);
    row["cost_i"] = opt_number(entry.cost_i);
    row["risk"] = opt_number(entry.risk);
    row["fnr_attributed"] = entry.fnr_attributed;
    row["fpr_attributed"] = entry.fpr_attributed;
    rows.push_back(row);
  }
  return rows;
}

ordered_json loss_json(const LossVector& loss) {
  return {{"sheep", loss.sheep},
          {"goat", loss.goat},
          {"wolf_lamb", loss.wolf_lamb}};
}

ordered_json traveler_json(const TravelerRisk& tr) {
  ordered_json row;
  row["traveler_id"] = tr.traveler_id;
  row["class"] = score_class_name(tr.score_class);
  row["d_goat"] = tr.d_goat;
  row["d_wl"] = tr.d_wl;
  row["d_sheep"] = tr.d_sheep;
  row["r"] = tr.r;
  row["nearest_category"] = category_name(tr.nearest);
  row["band"] = band_name(tr.band);
  return row;
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + buf;
}

std::string digest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for digest: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64_hex(buffer.str());
}

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string make_landscape_report(const ReportContext& ctx,
                                  const MenagerieConfig& menagerie_cfg,
                                  const MenagerieAssignment& assign,
                                  const CategoryErrorRates& rates,
                                  const std::vector<LandscapeEntry>& landscape,
                                  const CostParams& params) {
  ordered_json report = meta_json(ctx);

  ordered_json config;
  config["menagerie"] = menagerie_config_json(menagerie_cfg);
  config["thresholds"] = rates.grid.thresholds;
  ordered_json cost;
  cost["c_fn"] = params.c_fn;
  cost["c_fp"] = params.c_fp;
  cost["p_g"] = params.p_g;
  ordered_json p_cat = ordered_json::object();
  for (const auto& [c, p] : params.p_cat)
    p_cat[std::string(category_name(c))] = p;
  cost["p_cat"] = p_cat;
  config["cost"] = cost;
  report["config"] = config;

  ordered_json level1;
  level1["menagerie"] = menagerie_summary_json(assign);
  level1["risk_coefficient"] = risk_coefficient(params);
  level1["rates"] = rates_json(rates);
  level1["landscape"] = landscape_json(landscape);
  report["level1"] = level1;
  return report.dump(2) + "\n";
}

std::string make_assess_report(const ReportContext& ctx,
                               const MenagerieConfig& menagerie_cfg,
                               const AssessConfig& assess_cfg,
                               const std::vector<std::string>& requested_ids,
                               bool all_requested,
                               const CategoryReference& refs,
                               const std::vector<TravelerRisk>& travelers,
                               const std::vector<SkippedTraveler>& skipped) {
  ordered_json report = meta_json(ctx);

  ordered_json config;
  config["menagerie"] = menagerie_config_json(menagerie_cfg);
  config["binning"] = {{"n_bins", assess_cfg.binning.n_bins},
                       {"score_max", assess_cfg.binning.score_max},
                       {"epsilon", assess_cfg.binning.epsilon}};
  config["loss"] = loss_json(assess_cfg.loss);
  config["kl_orientation"] = kl_orientation_name(assess_cfg.orientation);
  config["min_scores"] = assess_cfg.min_scores;
  if (all_requested) {
    config["travelers"] = "all";
  } else {
    config["travelers"] = requested_ids;
  }
  report["config"] = config;

  ordered_json level2;
  ordered_json available;
  for (ScoreClass cls : {ScoreClass::Genuine, ScoreClass::Impostor}) {
    ordered_json names = ordered_json::array();
    for (const auto& [c, hist] : refs.for_class(cls))
      names.push_back(category_name(c));
    available[std::string(score_class_name(cls))] = names;
  }
  level2["references_available"] = available;

  ordered_json rows = ordered_json::array();
  for (const auto& tr : travelers) {
    if (tr.complete()) rows.push_back(traveler_json(tr));
  }
  level2["travelers"] = rows;

  ordered_json skipped_rows = ordered_json::array();
  for (const auto& s : skipped) {
    skipped_rows.push_back({{"traveler_id", s.traveler_id},
                            {"class", s.score_class},
                            {"reason", s.reason}});
  }
  level2["skipped"] = skipped_rows;
  report["level2"] = level2;
  return report.dump(2) + "\n";
}

std::string make_divergence_report(const ReportContext& ctx, double d_goat,
                                   double d_wl, double d_sheep,
                                   const LossVector& loss) {
  ordered_json report = meta_json(ctx);
  report["config"] = {{"loss", loss_json(loss)}};

  ordered_json entry;
  entry["d_goat"] = d_goat;
  entry["d_wl"] = d_wl;
  entry["d_sheep"] = d_sheep;
  entry["r"] = traveler_bayes_risk(d_goat, d_wl, d_sheep, loss);
  Category nearest = nearest_category(d_goat, d_wl, d_sheep);
  entry["nearest_category"] = category_name(nearest);
  entry["band"] = band_name(band_for(nearest));

  ordered_json level2;
  level2["travelers"] = ordered_json::array({entry});
  report["level2"] = level2;
  return report.dump(2) + "\n";
}

std::string menagerie_to_json(const MenagerieAssignment& assign) {
  ordered_json obj = ordered_json::object();
  for (const auto& [id, c] : assign.category) obj[id] = category_name(c);
  return obj.dump(2) + "\n";
}

}  // namespace wrisk
