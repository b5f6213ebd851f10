#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wrisk/menagerie.hpp"
#include "wrisk/scores.hpp"

namespace wrisk {

struct ThresholdGrid {
  std::vector<double> thresholds;  // strictly increasing, within [0, score_max]

  static ThresholdGrid make(std::vector<double> values);  // validates
  std::size_t size() const { return thresholds.size(); }
};

enum class Decision { Match, NonMatch };

/// Decision convention: match iff score >= threshold.
inline Decision decide(double score, double threshold) {
  return score >= threshold ? Decision::Match : Decision::NonMatch;
}

/// Exact error counts at one threshold. Rates are undefined (nullopt) when a
/// score class has no trials; an undefined rate is never coerced to 0.
struct RateCell {
  std::uint64_t fn_count = 0;   // genuine scores < T
  std::uint64_t n_genuine = 0;  // genuine trials
  std::uint64_t fp_count = 0;   // impostor scores >= T
  std::uint64_t n_impostor = 0; // impostor trials

  std::optional<double> fnr() const;
  std::optional<double> fpr() const;

  bool operator==(const RateCell&) const = default;
};

/// FNR/FPR per category over a threshold grid, rates computed over scores
/// (not subjects). `pooled` aggregates every categorized subject ("all").
struct CategoryErrorRates {
  ThresholdGrid grid;
  std::map<Category, std::vector<RateCell>> per_category;  // all four present
  std::vector<RateCell> pooled;
};

/// Counts misses/false alarms for every category at every grid threshold.
/// Requires the assignment to cover exactly the population's eligible
/// subjects (ConfigError otherwise).
CategoryErrorRates sweep(const Population& pop,
                         const MenagerieAssignment& assign,
                         const ThresholdGrid& grid);

/// Long-form CSV `category,threshold,fnr,fpr,n_genuine,n_impostor`; undefined
/// rates are written as NA. Includes the pooled "all" rows.
std::string rates_to_csv(const CategoryErrorRates& rates);

}  // namespace wrisk
