#pragma once

// Shared builders and independent oracles for the test suites. Oracles are
// deliberately naive re-implementations (plain loops and folds) so they stay
// independent of the library code paths they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wrisk/menagerie.hpp"
#include "wrisk/scores.hpp"

namespace testutil {

inline std::string padded_id(std::string_view prefix, std::size_t i,
                             int width = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", std::string(prefix).c_str(), width,
                i);
  return buf;
}

/// Random records: every subject gets both genuine and impostor scores drawn
/// uniformly from [0, score_max].
inline std::vector<wrisk::MatchRecord> random_records(
    std::mt19937_64& rng, std::size_t n_subjects, std::size_t min_per_class,
    std::size_t max_per_class, double score_max = 100.0) {
  std::uniform_int_distribution<std::size_t> count_dist(min_per_class,
                                                        max_per_class);
  std::uniform_real_distribution<double> score_dist(0.0, score_max);
  std::vector<wrisk::MatchRecord> records;
  for (std::size_t i = 0; i < n_subjects; ++i) {
    std::string id = padded_id("t", i + 1);
    std::string other = padded_id("t", (i + 1) % n_subjects + 1);
    std::size_t n_gen = count_dist(rng);
    std::size_t n_imp = count_dist(rng);
    for (std::size_t j = 0; j < n_gen; ++j)
      records.push_back({id, id, score_dist(rng)});
    for (std::size_t j = 0; j < n_imp; ++j)
      records.push_back({id, other, score_dist(rng)});
  }
  return records;
}

struct GroupOracle {
  std::vector<double> genuine;
  std::vector<double> impostor;
};

/// Brute-force group-by over raw rows, multiset semantics.
inline std::map<std::string, GroupOracle> group_by_oracle(
    const std::vector<wrisk::MatchRecord>& records) {
  std::map<std::string, GroupOracle> groups;
  for (const auto& rec : records) {
    auto& g = groups[rec.probe_id];
    if (rec.probe_id == rec.gallery_id)
      g.genuine.push_back(rec.score);
    else
      g.impostor.push_back(rec.score);
  }
  for (auto& [id, g] : groups) {
    std::sort(g.genuine.begin(), g.genuine.end());
    std::sort(g.impostor.begin(), g.impostor.end());
  }
  return groups;
}

struct OracleRateCounts {
  std::uint64_t fn = 0, ng = 0, fp = 0, ni = 0;
};

/// Double-loop counting oracle at a single threshold.
inline OracleRateCounts naive_counts(const std::vector<double>& genuine,
                                     const std::vector<double>& impostor,
                                     double threshold) {
  OracleRateCounts c;
  c.ng = genuine.size();
  c.ni = impostor.size();
  for (double s : genuine)
    if (s < threshold) ++c.fn;
  for (double s : impostor)
    if (s >= threshold) ++c.fp;
  return c;
}

/// Two-term-at-a-time summation oracle for relative entropy over raw bin
/// probabilities.
inline double kl_sum_oracle(const std::vector<double>& p,
                            const std::vector<double>& q) {
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] > 0.0) sum += p[j] * std::log2(p[j] / q[j]);
  return sum;
}

/// Exhaustive sort oracle for menagerie selection: rank every eligible
/// subject by hand-folded aggregates, slice the tails, intersect.
inline wrisk::MenagerieAssignment menagerie_sort_oracle(
    const wrisk::Population& pop, const wrisk::MenagerieConfig& cfg) {
  struct Entry {
    std::string id;
    double genuine_agg;
    double impostor_agg;
  };
  std::vector<Entry> entries;
  for (const auto& [id, scores] : pop.subjects) {
    if (scores.genuine.empty() || scores.impostor.empty()) continue;
    double gsum = 0.0, isum = 0.0, gmin = scores.genuine.front(),
           imax = scores.impostor.front();
    for (double s : scores.genuine) {
      gsum += s;
      gmin = std::min(gmin, s);
    }
    for (double s : scores.impostor) {
      isum += s;
      imax = std::max(imax, s);
    }
    Entry e;
    e.id = id;
    if (cfg.aggregator == wrisk::Aggregator::Mean) {
      e.genuine_agg = gsum / static_cast<double>(scores.genuine.size());
      e.impostor_agg = isum / static_cast<double>(scores.impostor.size());
    } else {
      e.genuine_agg = gmin;
      e.impostor_agg = imax;
    }
    entries.push_back(e);
  }

  std::size_t k = wrisk::tail_count(cfg.tail_fraction, entries.size());
  auto by_genuine = entries;
  std::stable_sort(by_genuine.begin(), by_genuine.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.genuine_agg != b.genuine_agg
                                ? a.genuine_agg < b.genuine_agg
                                : a.id < b.id;
                   });
  auto by_impostor = entries;
  std::stable_sort(by_impostor.begin(), by_impostor.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.impostor_agg != b.impostor_agg
                                ? a.impostor_agg > b.impostor_agg
                                : a.id < b.id;
                   });

  std::set<std::string> goat_side, wolf_side;
  for (std::size_t i = 0; i < k; ++i) {
    goat_side.insert(by_genuine[i].id);
    wolf_side.insert(by_impostor[i].id);
  }

  wrisk::MenagerieAssignment assign;
  assign.k = k;
  for (const auto& e : entries) {
    bool g = goat_side.contains(e.id);
    bool w = wolf_side.contains(e.id);
    assign.category[e.id] = g && w   ? wrisk::Category::Worm
                            : g      ? wrisk::Category::Goat
                            : w      ? wrisk::Category::WolfLamb
                                     : wrisk::Category::Sheep;
  }
  return assign;
}

}  // namespace testutil
