#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wrisk/menagerie.hpp"
#include "wrisk/scores.hpp"

namespace wrisk {

struct HistogramConfig {
  std::size_t n_bins = 20;
  double score_max = kDefaultScoreMax;
  double epsilon = 0.5;  // additive smoothing mass per bin

  void validate() const;  // throws ConfigError
};

/// Smoothed discrete probability distribution over equal-width score bins:
/// p_j = (count_j + epsilon) / (N + n_bins * epsilon). Smoothing keeps every
/// bin strictly positive so the distribution is safe as the right-hand side
/// of a KL divergence.
struct ScoreHistogram {
  std::vector<double> bin_edges;  // n_bins + 1 edges spanning [0, score_max]
  std::vector<double> p;          // one probability per bin, sums to 1
  double epsilon = 0.0;

  std::size_t n_bins() const { return p.size(); }

  bool operator==(const ScoreHistogram&) const = default;
};

/// Bins scores into equal-width bins over [0, score_max] with additive
/// smoothing. Scores equal to score_max fall in the last bin.
/// Throws InsufficientDataError on an empty list, RangeError on scores
/// outside [0, score_max].
ScoreHistogram build_histogram(std::span<const double> scores,
                               const HistogramConfig& cfg);

/// Relative entropy D(P||Q) = sum_j p_j * log2(p_j / q_j), in bits.
/// Non-negative; zero iff P and Q are bin-wise equal. Requires identical bin
/// edges and a fully smoothed Q (IncompatibilityError otherwise).
double kl_divergence(const ScoreHistogram& P, const ScoreHistogram& Q);

/// Loss assigned to the KL decision per category. Defaults follow the
/// low/medium/high security reading: sheep 0.1, goats 0.6, wolves/lambs 0.3.
struct LossVector {
  double sheep = 0.1;
  double goat = 0.6;
  double wolf_lamb = 0.3;

  void validate() const;  // all >= 0, at least one positive
};

/// Per-category reference distributions, built separately for genuine and
/// impostor scores by pooling all member scores of each category. A category
/// with no members has no reference; it is absent from the map rather than
/// silently empty.
struct CategoryReference {
  HistogramConfig binning;
  std::map<Category, ScoreHistogram> genuine;
  std::map<Category, ScoreHistogram> impostor;

  const std::map<Category, ScoreHistogram>& for_class(ScoreClass cls) const {
    return cls == ScoreClass::Genuine ? genuine : impostor;
  }
};

CategoryReference build_references(const Population& pop,
                                   const MenagerieAssignment& assign,
                                   const HistogramConfig& cfg);

/// Bayes risk R(kl|x) = lambda_goat*d_goat + lambda_wl*d_wl +
/// lambda_sheep*d_sheep. Throws RangeError on negative divergences.
double traveler_bayes_risk(double d_goat, double d_wl, double d_sheep,
                           const LossVector& loss);

enum class RiskBand { Low, Medium, High };

std::string_view band_name(RiskBand band);

/// First argument of the divergence: the category reference (the printed
/// D(w_j|x) orientation) or the traveler, for sensitivity analysis.
enum class KlOrientation { RefFirst, TravelerFirst };

std::string_view kl_orientation_name(KlOrientation o);

/// Category whose reference is nearest by divergence; ties resolve in the
/// order Goat, WolfLamb, Sheep.
Category nearest_category(double d_goat, double d_wl, double d_sheep);

/// Band implied by the nearest category: Goat -> High, WolfLamb -> Medium,
/// Sheep -> Low. The numeric risk r is reported alongside, but the magnitude
/// of r alone is not used to assign the band.
RiskBand band_for(Category nearest);

/// Level-II result for one traveler and one score class. When any of the
/// three required references is unavailable the assessment is incomplete:
/// missing_references lists the gaps and the numeric fields are not
/// meaningful.
struct TravelerRisk {
  std::string traveler_id;
  ScoreClass score_class = ScoreClass::Genuine;
  double d_goat = 0.0;
  double d_wl = 0.0;
  double d_sheep = 0.0;
  double r = 0.0;
  Category nearest = Category::Sheep;
  RiskBand band = RiskBand::Low;
  std::vector<Category> missing_references;

  bool complete() const { return missing_references.empty(); }
};

struct AssessConfig {
  HistogramConfig binning;
  LossVector loss;
  KlOrientation orientation = KlOrientation::RefFirst;
  std::size_t min_scores = 5;  // fewer points would be dominated by smoothing
};

/// Histograms the traveler's scores and measures the divergence to the
/// goat, wolf/lamb and sheep references of the same score class.
/// Throws InsufficientDataError when fewer than min_scores scores are given.
TravelerRisk assess_traveler(const std::string& traveler_id, ScoreClass cls,
                             std::span<const double> scores,
                             const CategoryReference& refs,
                             const AssessConfig& cfg);

/// CSV export
/// `traveler_id,class,d_goat,d_wl,d_sheep,r,nearest_category,band`
/// for complete assessments.
std::string travelers_to_csv(const std::vector<TravelerRisk>& results);

}  // namespace wrisk
