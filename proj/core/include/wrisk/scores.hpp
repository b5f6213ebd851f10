#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace wrisk {

inline constexpr double kDefaultScoreMax = 100.0;

/// One raw matcher comparison. A record is genuine iff the probe and gallery
/// identifiers are the same subject.
struct MatchRecord {
  std::string probe_id;
  std::string gallery_id;
  double score = 0.0;

  bool genuine() const { return probe_id == gallery_id; }

  bool operator==(const MatchRecord&) const = default;
};

/// Which of the two score classes a list or assessment refers to.
enum class ScoreClass { Genuine, Impostor };

std::string_view score_class_name(ScoreClass cls);

/// Per-subject score lists. Kept sorted ascending so that populations built
/// from permuted record streams compare equal.
struct SubjectScores {
  std::vector<double> genuine;
  std::vector<double> impostor;

  bool eligible() const { return !genuine.empty() && !impostor.empty(); }
  const std::vector<double>& of(ScoreClass cls) const {
    return cls == ScoreClass::Genuine ? genuine : impostor;
  }

  bool operator==(const SubjectScores&) const = default;
};

/// Immutable-by-convention score populations, keyed by probe subject id.
/// Subjects lacking either score class are retained but flagged ineligible;
/// they are excluded from categorization yet still usable for per-traveler
/// histogram analysis.
struct Population {
  double score_max = kDefaultScoreMax;
  std::map<std::string, SubjectScores> subjects;

  const SubjectScores* find(const std::string& id) const;
  std::size_t eligible_count() const;
  std::vector<std::string> eligible_ids() const;

  bool operator==(const Population&) const = default;
};

/// Parses the scores CSV (`probe_id,gallery_id,score`, `#` comments) and
/// partitions records by probe id; genuine/impostor split is by id equality.
/// A completely empty stream yields an empty population.
///
/// Throws ParseError (malformed row, with line number) and RangeError
/// (score outside [0, score_max]).
Population ingest_scores(std::istream& in, double score_max = kDefaultScoreMax);

Population ingest_scores_file(const std::filesystem::path& path,
                              double score_max = kDefaultScoreMax);

/// Builds a population from in-memory records; same validation as the
/// stream form.
Population from_records(const std::vector<MatchRecord>& records,
                        double score_max = kDefaultScoreMax);

/// Statistic used to reduce a subject's score list to one scalar. The source
/// material ranks subjects by "lowest genuine" / "highest impostor" scores
/// without fixing the statistic, so both readings are provided.
enum class Aggregator {
  Mean,     // arithmetic mean of each list
  Extreme,  // min of genuine list, max of impostor list
};

std::string_view aggregator_name(Aggregator agg);

struct SubjectAggregate {
  double genuine_agg = 0.0;
  double impostor_agg = 0.0;
};

struct AggregatesResult {
  std::map<std::string, SubjectAggregate> by_subject;  // eligible subjects only
  std::vector<std::string> skipped;                    // ineligible subject ids
};

AggregatesResult subject_aggregates(const Population& pop, Aggregator agg);

}  // namespace wrisk
