#include "wrisk/rates.hpp"

#include <algorithm>
#include <cmath>

#include "text.hpp"
#include "wrisk/errors.hpp"

namespace wrisk {

ThresholdGrid ThresholdGrid::make(std::vector<double> values) {
  if (values.empty()) throw ConfigError("threshold grid must be non-empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw ConfigError("thresholds must be finite and non-negative");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw ConfigError("thresholds must be strictly increasing");
    }
  }
  return ThresholdGrid{std::move(values)};
}

std::optional<double> RateCell::fnr() const {
  if (n_genuine == 0) return std::nullopt;
  return static_cast<double>(fn_count) / static_cast<double>(n_genuine);
}

std::optional<double> RateCell::fpr() const {
  if (n_impostor == 0) return std::nullopt;
  return static_cast<double>(fp_count) / static_cast<double>(n_impostor);
}

namespace {

// Counts over pre-sorted score lists. A miss is a genuine score below T
// (decide() == NonMatch); a false alarm is an impostor score at or above T.
RateCell count_at(const std::vector<double>& genuine,
                  const std::vector<double>& impostor, double threshold) {
  RateCell cell;
  cell.n_genuine = genuine.size();
  cell.n_impostor = impostor.size();
  auto g_it = std::lower_bound(genuine.begin(), genuine.end(), threshold);
  cell.fn_count = static_cast<std::uint64_t>(g_it - genuine.begin());
  auto i_it = std::lower_bound(impostor.begin(), impostor.end(), threshold);
  cell.fp_count = static_cast<std::uint64_t>(impostor.end() - i_it);
  return cell;
}

}  // namespace

CategoryErrorRates sweep(const Population& pop,
                         const MenagerieAssignment& assign,
                         const ThresholdGrid& grid) {
  if (grid.thresholds.empty())
    throw ConfigError("threshold grid must be non-empty");
  if (grid.thresholds.back() > pop.score_max) {
    throw ConfigError("threshold " +
                      detail::format_double(grid.thresholds.back()) +
                      " exceeds score_max " +
                      detail::format_double(pop.score_max));
  }
  // The assignment must cover exactly the eligible subjects.
  for (const auto& id : pop.eligible_ids()) {
    if (!assign.category.contains(id)) {
      throw ConfigError("assignment does not cover eligible subject '" + id +
                        "'");
    }
  }
  for (const auto& [id, c] : assign.category) {
    const auto* scores = pop.find(id);
    if (scores == nullptr || !scores->eligible()) {
      throw ConfigError("assignment names subject '" + id +
                        "' that is not eligible in the population");
    }
  }

  std::map<Category, std::vector<double>> genuine_scores, impostor_scores;
  for (Category c : kAllCategories) {
    genuine_scores[c];
    impostor_scores[c];
  }
  for (const auto& [id, c] : assign.category) {
    const auto* scores = pop.find(id);
    auto& g = genuine_scores[c];
    auto& i = impostor_scores[c];
    g.insert(g.end(), scores->genuine.begin(), scores->genuine.end());
    i.insert(i.end(), scores->impostor.begin(), scores->impostor.end());
  }
  for (Category c : kAllCategories) {
    std::sort(genuine_scores[c].begin(), genuine_scores[c].end());
    std::sort(impostor_scores[c].begin(), impostor_scores[c].end());
  }

  CategoryErrorRates rates;
  rates.grid = grid;
  for (Category c : kAllCategories) {
    auto& cells = rates.per_category[c];
    cells.reserve(grid.size());
    for (double t : grid.thresholds)
      cells.push_back(count_at(genuine_scores[c], impostor_scores[c], t));
  }
  // Pooled "all" cells are the count sums across categories, which equals
  // the score-count-weighted mean of the per-category rates.
  rates.pooled.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RateCell& all = rates.pooled[i];
    for (Category c : kAllCategories) {
      const RateCell& cell = rates.per_category[c][i];
      all.fn_count += cell.fn_count;
      all.n_genuine += cell.n_genuine;
      all.fp_count += cell.fp_count;
      all.n_impostor += cell.n_impostor;
    }
  }
  return rates;
}

namespace {

void append_rate(std::string& out, const std::optional<double>& rate) {
  out += rate ? detail::format_double(*rate) : "NA";
}

void append_rows(std::string& out, std::string_view name,
                 const ThresholdGrid& grid, const std::vector<RateCell>& cells) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const RateCell& cell = cells[i];
    out += name;
    out += ',';
    out += detail::format_double(grid.thresholds[i]);
    out += ',';
    append_rate(out, cell.fnr());
    out += ',';
    append_rate(out, cell.fpr());
    out += ',';
    out += std::to_string(cell.n_genuine);
    out += ',';
    out += std::to_string(cell.n_impostor);
    out += '\n';
  }
}

}  // namespace

std::string rates_to_csv(const CategoryErrorRates& rates) {
  std::string out = "category,threshold,fnr,fpr,n_genuine,n_impostor\n";
  for (Category c : kAllCategories)
    append_rows(out, category_name(c), rates.grid, rates.per_category.at(c));
  append_rows(out, "all", rates.grid, rates.pooled);
  return out;
}

}  // namespace wrisk
