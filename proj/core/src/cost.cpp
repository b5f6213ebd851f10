#include "wrisk/cost.hpp"

#include <cmath>

#include "text.hpp"
#include "wrisk/errors.hpp"

namespace wrisk {

namespace {

void check_rate(double rate, const char* name) {
  if (!std::isfinite(rate) || rate < 0.0 || rate > 1.0) {
    throw RangeError(std::string(name) + " must lie in [0, 1]");
  }
}

bool fnr_attributed(Category c) {
  return c == Category::Goat || c == Category::Worm;
}

bool fpr_attributed(Category c) {
  return c == Category::WolfLamb || c == Category::Worm;
}

}  // namespace

void CostParams::validate() const {
  if (!std::isfinite(c_fn) || c_fn < 0.0 || !std::isfinite(c_fp) || c_fp < 0.0)
    throw ConfigError("costs must be finite and non-negative");
  if (!(p_g > 0.0) || !(p_g < 1.0))
    throw ConfigError("p_g must lie in (0, 1)");
  double sum = 0.0;
  for (const auto& [c, p] : p_cat) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw ConfigError("category priors must lie together in [0, 1]");
    sum += p;
  }
  if (sum > 1.0 + 1e-9)
    throw ConfigError("category priors must sum to at most 1");
}

CostParams CostParams::with_empirical_priors(
    CostParams base, const MenagerieAssignment& assign) {
  base.p_cat = assign.empirical_fractions();
  return base;
}

double expected_error(double far, double frr, const CostParams& params) {
  check_rate(far, "far");
  check_rate(frr, "frr");
  return far * params.p_i() + frr * params.p_g;
}

double expected_cost(double fnr, double fpr, const CostParams& params) {
  check_rate(fnr, "fnr");
  check_rate(fpr, "fpr");
  return params.c_fn * fnr * params.p_g + params.c_fp * fpr * (1.0 - params.p_g);
}

double risk_coefficient(const CostParams& params) {
  if (params.c_fp == 0.0 || params.p_g == 0.0)
    throw ConfigError("risk coefficient requires c_fp > 0 and p_g > 0");
  return (params.c_fn * (1.0 - params.p_g)) / (params.c_fp * params.p_g);
}

double risk_at_threshold(double fnr_t, double fpr_t, const CostParams& params) {
  check_rate(fnr_t, "fnr");
  check_rate(fpr_t, "fpr");
  return fnr_t + risk_coefficient(params) * fpr_t;
}

double joint_prior(ScoreClass kind, Category category,
                   const CostParams& params) {
  auto it = params.p_cat.find(category);
  if (it == params.p_cat.end()) {
    throw ConfigError("no prior configured for category '" +
                      std::string(category_name(category)) + "'");
  }
  double class_prior = kind == ScoreClass::Genuine ? params.p_g : params.p_i();
  return class_prior * it->second;
}

std::vector<LandscapeEntry> category_costs(const CategoryErrorRates& rates,
                                           const CostParams& params) {
  params.validate();
  std::vector<LandscapeEntry> entries;
  entries.reserve(4 * rates.grid.size());
  for (Category c : kAllCategories) {
    const auto& cells = rates.per_category.at(c);
    const double p_gd = joint_prior(ScoreClass::Genuine, c, params);
    const double p_id = joint_prior(ScoreClass::Impostor, c, params);
    for (std::size_t i = 0; i < rates.grid.size(); ++i) {
      LandscapeEntry entry;
      entry.category = c;
      entry.threshold = rates.grid.thresholds[i];
      entry.fnr_attributed = fnr_attributed(c);
      entry.fpr_attributed = fpr_attributed(c);
      const auto fnr = cells[i].fnr();
      const auto fpr = cells[i].fpr();
      if (entry.fnr_attributed) {
        if (fnr) {
          entry.cost_g_units = *fnr * p_gd;
          entry.cost_g = params.c_fn * *entry.cost_g_units;
        }
      } else {
        entry.cost_g_units = 0.0;
        entry.cost_g = 0.0;
      }
      if (entry.fpr_attributed) {
        if (fpr) {
          entry.cost_i_units = *fpr * p_id;
          entry.cost_i = params.c_fp * *entry.cost_i_units;
        }
      } else {
        entry.cost_i_units = 0.0;
        entry.cost_i = 0.0;
      }
      if (fnr && fpr) entry.risk = risk_at_threshold(*fnr, *fpr, params);
      entries.push_back(entry);
    }
  }
  return entries;
}

std::string landscape_to_csv(const std::vector<LandscapeEntry>& entries) {
  std::string out =
      "category,threshold,cost_g_units_cfn,cost_i_units_cfp,risk\n";
  auto append = [&out](const std::optional<double>& v) {
    out += v ? detail::format_double(*v) : "NA";
  };
  for (const auto& entry : entries) {
    out += category_name(entry.category);
    out += ',';
    out += detail::format_double(entry.threshold);
    out += ',';
    append(entry.cost_g_units);
    out += ',';
    append(entry.cost_i_units);
    out += ',';
    append(entry.risk);
    out += '\n';
  }
  return out;
}

}  // namespace wrisk
