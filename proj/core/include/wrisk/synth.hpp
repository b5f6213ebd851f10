#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wrisk/menagerie.hpp"
#include "wrisk/scores.hpp"

namespace wrisk {

/// Truncated unimodal score distribution: Gaussian(center, spread) clamped
/// to [0, score_max].
struct ScoreProfile {
  double center = 50.0;
  double spread = 3.0;
};

struct ClassProfile {
  ScoreProfile genuine;
  ScoreProfile impostor;
};

/// Deterministic synthetic population with planted menagerie structure.
/// Planted counts per class are tail_count(fraction, n_subjects); the
/// remainder are sheep. Default profiles separate the classes by well over
/// six spread units, so rank-based categorization recovers the planted sets.
struct SynthSpec {
  std::size_t n_subjects = 568;
  std::size_t n_genuine_per_subject = 6;
  std::size_t n_impostor_per_subject = 12;
  std::uint64_t seed = 1;
  double score_max = kDefaultScoreMax;
  std::map<Category, double> fractions;     // Goat/WolfLamb/Worm; Sheep = rest
  std::map<Category, ClassProfile> profiles;

  static SynthSpec with_default_profiles();
  std::size_t planted_count(Category c) const;
  void validate() const;  // throws ConfigError on infeasible fractions
};

/// Parses / serializes the JSON spec format documented in the README.
/// Throws ParseError on malformed JSON, ConfigError on invalid values.
SynthSpec parse_synth_spec(const std::string& json_text);
std::string synth_spec_to_json(const SynthSpec& spec);

struct SynthResult {
  std::vector<MatchRecord> records;   // raw records, ingestable as-is
  MenagerieAssignment ground_truth;   // planted classes; k = goat-side size
};

/// Generates raw match records subject by subject. Per-subject substreams
/// are derived as splitmix64(seed + golden_ratio * (index + 1)) feeding an
/// mt19937_64, so regeneration is bit-exact for a fixed seed and independent
/// of generation order. Gaussian deviates use the Marsaglia polar method on
/// an explicit 53-bit uniform mapping rather than std::normal_distribution,
/// keeping the stream stable across standard library versions.
SynthResult generate(const SynthSpec& spec);

/// CSV `subject_id,planted_class`, sorted by subject id.
std::string ground_truth_to_csv(const MenagerieAssignment& truth);

/// Standard scores CSV (`probe_id,gallery_id,score`) for generated records.
std::string records_to_csv(const std::vector<MatchRecord>& records);

}  // namespace wrisk
