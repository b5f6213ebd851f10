#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wrisk/cost.hpp"
#include "wrisk/entropy.hpp"
#include "wrisk/menagerie.hpp"
#include "wrisk/rates.hpp"
#include "wrisk/scores.hpp"

namespace wrisk {

/// Report metadata. The timestamp can be pinned by the caller so that equal
/// inputs and config produce byte-identical reports.
struct ReportContext {
  std::string timestamp;     // ISO-8601 UTC
  std::string input_path;    // empty when no file input was involved
  std::string input_digest;  // "fnv1a64:<hex>" of the raw input bytes
};

/// FNV-1a 64-bit digest of a byte string, rendered as "fnv1a64:<16 hex>".
std::string fnv1a64_hex(std::string_view bytes);
std::string digest_file(const std::filesystem::path& path);  // throws IoError

std::string iso8601_utc_now();

struct SkippedTraveler {
  std::string traveler_id;
  std::string score_class;  // "genuine", "impostor"
  std::string reason;
};

/// Level-I report: menagerie summary, per-category rates and the cost
/// landscape, with the effective configuration echoed for reproducibility.
/// Returns the serialized JSON document (2-space indent, trailing newline).
std::string make_landscape_report(const ReportContext& ctx,
                                  const MenagerieConfig& menagerie_cfg,
                                  const MenagerieAssignment& assign,
                                  const CategoryErrorRates& rates,
                                  const std::vector<LandscapeEntry>& landscape,
                                  const CostParams& params);

/// Level-II report: per-traveler divergences, Bayes risk and band, per score
/// class, plus the skipped list. `requested_ids` / `all_requested` echo the
/// traveler request so the config echo fully determines the report.
std::string make_assess_report(const ReportContext& ctx,
                               const MenagerieConfig& menagerie_cfg,
                               const AssessConfig& assess_cfg,
                               const std::vector<std::string>& requested_ids,
                               bool all_requested,
                               const CategoryReference& refs,
                               const std::vector<TravelerRisk>& travelers,
                               const std::vector<SkippedTraveler>& skipped);

/// Level-II report for divergences supplied directly (no score data).
std::string make_divergence_report(const ReportContext& ctx, double d_goat,
                                   double d_wl, double d_sheep,
                                   const LossVector& loss);

/// JSON object keyed by subject id, value = category name.
std::string menagerie_to_json(const MenagerieAssignment& assign);

}  // namespace wrisk
