#include "wrisk/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "text.hpp"
#include "wrisk/errors.hpp"

namespace wrisk {

void HistogramConfig::validate() const {
  if (n_bins < 2) throw ConfigError("n_bins must be at least 2");
  if (!(score_max > 0.0) || !std::isfinite(score_max))
    throw ConfigError("score_max must be a positive finite number");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ConfigError("epsilon must be a positive finite number");
}

ScoreHistogram build_histogram(std::span<const double> scores,
                               const HistogramConfig& cfg) {
  cfg.validate();
  if (scores.empty())
    throw InsufficientDataError("cannot histogram an empty score list");

  const double width = cfg.score_max / static_cast<double>(cfg.n_bins);
  std::vector<std::uint64_t> counts(cfg.n_bins, 0);
  for (double s : scores) {
    if (!std::isfinite(s) || s < 0.0 || s > cfg.score_max) {
      throw RangeError("score " + detail::format_double(s) +
                       " outside [0, " + detail::format_double(cfg.score_max) +
                       "]");
    }
    auto j = static_cast<std::size_t>(s / width);
    if (j >= cfg.n_bins) j = cfg.n_bins - 1;  // s == score_max
    ++counts[j];
  }

  ScoreHistogram hist;
  hist.epsilon = cfg.epsilon;
  hist.bin_edges.resize(cfg.n_bins + 1);
  for (std::size_t j = 0; j < cfg.n_bins; ++j)
    hist.bin_edges[j] = width * static_cast<double>(j);
  hist.bin_edges[cfg.n_bins] = cfg.score_max;

  const double total = static_cast<double>(scores.size()) +
                       static_cast<double>(cfg.n_bins) * cfg.epsilon;
  hist.p.resize(cfg.n_bins);
  for (std::size_t j = 0; j < cfg.n_bins; ++j)
    hist.p[j] = (static_cast<double>(counts[j]) + cfg.epsilon) / total;
  return hist;
}

double kl_divergence(const ScoreHistogram& P, const ScoreHistogram& Q) {
  if (P.bin_edges != Q.bin_edges) {
    throw IncompatibilityError(
        "histograms must share an identical bin grid");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < P.p.size(); ++j) {
    const double p = P.p[j];
    const double q = Q.p[j];
    if (!(q > 0.0))
      throw IncompatibilityError("right-hand histogram is not smoothed");
    if (p < 0.0)
      throw IncompatibilityError("left-hand histogram has negative mass");
    if (p > 0.0) sum += p * std::log2(p / q);
  }
  // Rounding can leave a tiny negative residue for near-identical inputs.
  if (sum < 0.0 && sum > -1e-12) sum = 0.0;
  return sum;
}

void LossVector::validate() const {
  if (sheep < 0.0 || goat < 0.0 || wolf_lamb < 0.0)
    throw ConfigError("loss values must be non-negative");
  if (sheep == 0.0 && goat == 0.0 && wolf_lamb == 0.0)
    throw ConfigError("at least one loss value must be positive");
}

CategoryReference build_references(const Population& pop,
                                   const MenagerieAssignment& assign,
                                   const HistogramConfig& cfg) {
  cfg.validate();
  CategoryReference refs;
  refs.binning = cfg;
  for (Category c : kAllCategories) {
    std::vector<double> genuine, impostor;
    for (const auto& [id, cat] : assign.category) {
      if (cat != c) continue;
      const auto* scores = pop.find(id);
      if (scores == nullptr) continue;
      genuine.insert(genuine.end(), scores->genuine.begin(),
                     scores->genuine.end());
      impostor.insert(impostor.end(), scores->impostor.begin(),
                      scores->impostor.end());
    }
    // Pooling member scores equals the count-weighted average of member
    // distributions; empty categories stay unavailable.
    if (!genuine.empty()) refs.genuine.emplace(c, build_histogram(genuine, cfg));
    if (!impostor.empty())
      refs.impostor.emplace(c, build_histogram(impostor, cfg));
  }
  return refs;
}

double traveler_bayes_risk(double d_goat, double d_wl, double d_sheep,
                           const LossVector& loss) {
  loss.validate();
  if (d_goat < 0.0 || d_wl < 0.0 || d_sheep < 0.0)
    throw RangeError("divergences must be non-negative");
  return loss.goat * d_goat + loss.wolf_lamb * d_wl + loss.sheep * d_sheep;
}

std::string_view band_name(RiskBand band) {
  switch (band) {
    case RiskBand::Low:
      return "Low";
    case RiskBand::Medium:
      return "Medium";
    case RiskBand::High:
      return "High";
  }
  return "Low";
}

std::string_view kl_orientation_name(KlOrientation o) {
  return o == KlOrientation::RefFirst ? "ref-first" : "traveler-first";
}

Category nearest_category(double d_goat, double d_wl, double d_sheep) {
  Category best = Category::Goat;
  double best_d = d_goat;
  if (d_wl < best_d) {
    best = Category::WolfLamb;
    best_d = d_wl;
  }
  if (d_sheep < best_d) best = Category::Sheep;
  return best;
}

RiskBand band_for(Category nearest) {
  switch (nearest) {
    case Category::Goat:
      return RiskBand::High;
    case Category::WolfLamb:
      return RiskBand::Medium;
    default:
      return RiskBand::Low;
  }
}

TravelerRisk assess_traveler(const std::string& traveler_id, ScoreClass cls,
                             std::span<const double> scores,
                             const CategoryReference& refs,
                             const AssessConfig& cfg) {
  cfg.loss.validate();
  if (scores.size() < cfg.min_scores) {
    throw InsufficientDataError(
        "traveler '" + traveler_id + "' has " + std::to_string(scores.size()) +
        " " + std::string(score_class_name(cls)) + " scores, need at least " +
        std::to_string(cfg.min_scores));
  }

  TravelerRisk result;
  result.traveler_id = traveler_id;
  result.score_class = cls;

  const auto& class_refs = refs.for_class(cls);
  for (Category c : {Category::Goat, Category::WolfLamb, Category::Sheep}) {
    if (!class_refs.contains(c)) result.missing_references.push_back(c);
  }
  if (!result.complete()) return result;

  const ScoreHistogram traveler = build_histogram(scores, cfg.binning);
  auto divergence = [&](Category c) {
    const ScoreHistogram& ref = class_refs.at(c);
    return cfg.orientation == KlOrientation::RefFirst
               ? kl_divergence(ref, traveler)
               : kl_divergence(traveler, ref);
  };
  result.d_goat = divergence(Category::Goat);
  result.d_wl = divergence(Category::WolfLamb);
  result.d_sheep = divergence(Category::Sheep);
  result.r =
      traveler_bayes_risk(result.d_goat, result.d_wl, result.d_sheep, cfg.loss);
  result.nearest = nearest_category(result.d_goat, result.d_wl, result.d_sheep);
  result.band = band_for(result.nearest);
  return result;
}

std::string travelers_to_csv(const std::vector<TravelerRisk>& results) {
  std::string out =
      "traveler_id,class,d_goat,d_wl,d_sheep,r,nearest_category,band\n";
  for (const auto& tr : results) {
    if (!tr.complete()) continue;
    out += tr.traveler_id;
    out += ',';
    out += score_class_name(tr.score_class);
    out += ',';
    out += detail::format_double(tr.d_goat);
    out += ',';
    out += detail::format_double(tr.d_wl);
    out += ',';
    out += detail::format_double(tr.d_sheep);
    out += ',';
    out += detail::format_double(tr.r);
    out += ',';
    out += category_name(tr.nearest);
    out += ',';
    out += band_name(tr.band);
    out += '\n';
  }
  return out;
}

}  // namespace wrisk
