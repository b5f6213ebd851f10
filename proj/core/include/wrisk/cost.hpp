#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wrisk/menagerie.hpp"
#include "wrisk/rates.hpp"

namespace wrisk {

/// Parameters of the multiparametric cost detector. Defaults mirror the
/// watchlist setting where missing a wanted person costs ten times a false
/// alarm and one traveler in ten is genuine, which makes the risk
/// coefficient exactly 90.
struct CostParams {
  double c_fn = 10.0;  // cost units per false negative
  double c_fp = 1.0;   // cost units per false positive
  double p_g = 0.1;    // prior probability of a genuine trial
  /// Prior P(D_i) of membership in each category; values in [0,1], sum <= 1.
  std::map<Category, double> p_cat;

  double p_i() const { return 1.0 - p_g; }
  void validate() const;  // throws ConfigError

  /// Copy of `base` with p_cat replaced by the assignment's empirical
  /// category fractions (the default when no priors are supplied).
  static CostParams with_empirical_priors(CostParams base,
                                          const MenagerieAssignment& assign);
};

/// Expected overall error rate E(T) = FAR * P_I + FRR * P_G.
double expected_error(double far, double frr, const CostParams& params);

/// Expected cost of a match decision:
/// C_FN * FNR * P_G + C_FP * FPR * (1 - P_G).
double expected_cost(double fnr, double fpr, const CostParams& params);

/// Multiplier applied to FPR in risk_at_threshold:
/// [C_FN * (1 - P_G)] / [C_FP * P_G].
/// Throws ConfigError when c_fp == 0 or p_g == 0.
double risk_coefficient(const CostParams& params);

/// Risk(T) = FNR(T) + risk_coefficient * FPR(T).
///
/// The coefficient pairs C_FN with (1 - P_G), which is the printed form of
/// the defining equation; its own worked 90x instance is consistent with it,
/// so no "corrected" pairing is offered.
double risk_at_threshold(double fnr_t, double fpr_t, const CostParams& params);

/// Joint prior P(G, D_i) = P(G) * P(D_i) or P(I, D_i) = P(I) * P(D_i).
/// Throws ConfigError when the category has no prior.
double joint_prior(ScoreClass kind, Category category,
                   const CostParams& params);

/// One cell of the Level-I risk landscape. Unit costs are expressed in
/// multiples of c_fn / c_fp; absolute costs carry the configured factors.
/// FNR cost is attributed only to Goat and Worm, FPR cost only to WolfLamb
/// and Worm; non-attributed cells are zero by construction and flagged so.
/// An undefined underlying rate propagates as nullopt, never as 0.
struct LandscapeEntry {
  Category category = Category::Sheep;
  double threshold = 0.0;
  std::optional<double> cost_g_units;  // FNR_i * P(G,D_i)
  std::optional<double> cost_i_units;  // FPR_i * P(I,D_i)
  std::optional<double> cost_g;        // c_fn * cost_g_units
  std::optional<double> cost_i;        // c_fp * cost_i_units
  std::optional<double> risk;          // risk_at_threshold(fnr_i, fpr_i)
  bool fnr_attributed = false;
  bool fpr_attributed = false;
};

/// Evaluates the cost landscape over every (category, threshold) pair of the
/// sweep result.
std::vector<LandscapeEntry> category_costs(const CategoryErrorRates& rates,
                                           const CostParams& params);

/// CSV export `category,threshold,cost_g_units_cfn,cost_i_units_cfp,risk`;
/// undefined entries are written as NA.
std::string landscape_to_csv(const std::vector<LandscapeEntry>& entries);

}  // namespace wrisk
