#include "wrisk/scores.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "text.hpp"
#include "wrisk/errors.hpp"

namespace wrisk {

namespace {

constexpr std::string_view kCsvHeader = "probe_id,gallery_id,score";

void validate_score_max(double score_max) {
  if (!(score_max > 0.0) || !std::isfinite(score_max)) {
    throw ConfigError("score_max must be a positive finite number");
  }
}

void insert_record(Population& pop, const MatchRecord& rec, std::size_t line) {
  if (rec.probe_id.empty() || rec.gallery_id.empty()) {
    throw ParseError("probe_id and gallery_id must be non-empty", line);
  }
  if (!std::isfinite(rec.score) || rec.score < 0.0) {
    throw ParseError("score must be finite and non-negative", line);
  }
  if (rec.score > pop.score_max) {
    std::ostringstream msg;
    msg << "score " << rec.score << " outside [0, " << pop.score_max << "]";
    if (line > 0) msg << " (line " << line << ")";
    throw RangeError(msg.str());
  }
  auto& subject = pop.subjects[rec.probe_id];
  (rec.genuine() ? subject.genuine : subject.impostor).push_back(rec.score);
}

// Sorted lists make populations independent of record order.
void finalize(Population& pop) {
  for (auto& [id, scores] : pop.subjects) {
    std::sort(scores.genuine.begin(), scores.genuine.end());
    std::sort(scores.impostor.begin(), scores.impostor.end());
  }
}

}  // namespace

std::string_view score_class_name(ScoreClass cls) {
  return cls == ScoreClass::Genuine ? "genuine" : "impostor";
}

const SubjectScores* Population::find(const std::string& id) const {
  auto it = subjects.find(id);
  return it == subjects.end() ? nullptr : &it->second;
}

std::size_t Population::eligible_count() const {
  std::size_t n = 0;
  for (const auto& [id, scores] : subjects)
    if (scores.eligible()) ++n;
  return n;
}

std::vector<std::string> Population::eligible_ids() const {
  std::vector<std::string> ids;
  ids.reserve(subjects.size());
  for (const auto& [id, scores] : subjects)
    if (scores.eligible()) ids.push_back(id);
  return ids;
}

Population ingest_scores(std::istream& in, double score_max) {
  validate_score_max(score_max);
  Population pop;
  pop.score_max = score_max;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (line_no == 1 && sv.size() >= 3 && sv.substr(0, 3) == "\xEF\xBB\xBF") {
      sv.remove_prefix(3);  // UTF-8 BOM
    }
    if (sv.empty() || sv.front() == '#') continue;
    if (!header_seen) {
      if (sv != kCsvHeader) {
        throw ParseError("expected header '" + std::string(kCsvHeader) + "'",
                         line_no);
      }
      header_seen = true;
      continue;
    }
    auto fields = detail::split(sv, ',');
    if (fields.size() != 3) {
      throw ParseError("expected 3 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    auto score = detail::parse_double(fields[2]);
    if (!score) {
      throw ParseError("non-numeric score '" + std::string(fields[2]) + "'",
                       line_no);
    }
    MatchRecord rec{std::string(detail::trim(fields[0])),
                    std::string(detail::trim(fields[1])), *score};
    insert_record(pop, rec, line_no);
  }
  finalize(pop);
  return pop;
}

Population ingest_scores_file(const std::filesystem::path& path,
                              double score_max) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scores file: " + path.string());
  return ingest_scores(in, score_max);
}

Population from_records(const std::vector<MatchRecord>& records,
                        double score_max) {
  validate_score_max(score_max);
  Population pop;
  pop.score_max = score_max;
  for (const auto& rec : records) insert_record(pop, rec, 0);
  finalize(pop);
  return pop;
}

std::string_view aggregator_name(Aggregator agg) {
  return agg == Aggregator::Mean ? "mean" : "extreme";
}

AggregatesResult subject_aggregates(const Population& pop, Aggregator agg) {
  AggregatesResult result;
  for (const auto& [id, scores] : pop.subjects) {
    if (!scores.eligible()) {
      result.skipped.push_back(id);
      continue;
    }
    SubjectAggregate a;
    if (agg == Aggregator::Mean) {
      a.genuine_agg =
          std::accumulate(scores.genuine.begin(), scores.genuine.end(), 0.0) /
          static_cast<double>(scores.genuine.size());
      a.impostor_agg = std::accumulate(scores.impostor.begin(),
                                       scores.impostor.end(), 0.0) /
                       static_cast<double>(scores.impostor.size());
    } else {
      // Lists are sorted ascending.
      a.genuine_agg = scores.genuine.front();
      a.impostor_agg = scores.impostor.back();
    }
    result.by_subject.emplace(id, a);
  }
  return result;
}

}  // namespace wrisk
