#include "wrisk/menagerie.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wrisk/errors.hpp"

namespace wrisk {

std::string_view category_name(Category c) {
  switch (c) {
    case Category::Sheep:
      return "sheep";
    case Category::Goat:
      return "goat";
    case Category::WolfLamb:
      return "wolf_lamb";
    case Category::Worm:
      return "worm";
  }
  return "sheep";
}

std::optional<Category> category_from_name(std::string_view name) {
  for (Category c : kAllCategories)
    if (name == category_name(c)) return c;
  return std::nullopt;
}

void MenagerieConfig::validate() const {
  if (!(tail_fraction > 0.0) || !(tail_fraction < 0.5)) {
    throw ConfigError("tail_fraction must lie in (0, 0.5)");
  }
}

std::map<Category, std::size_t> MenagerieAssignment::counts() const {
  std::map<Category, std::size_t> out;
  for (Category c : kAllCategories) out[c] = 0;
  for (const auto& [id, c] : category) ++out[c];
  return out;
}

std::map<Category, double> MenagerieAssignment::empirical_fractions() const {
  std::map<Category, double> out;
  const auto n = static_cast<double>(category.size());
  for (const auto& [c, count] : counts())
    out[c] = n > 0 ? static_cast<double>(count) / n : 0.0;
  return out;
}

std::size_t tail_count(double fraction, std::size_t n) {
  // Nudge below the product first: 0.025 * 40 evaluates to just above 1.0
  // in binary and plain ceil would return 2.
  double product = fraction * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(product - 1e-9));
}

MenagerieAssignment categorize(const Population& pop,
                               const MenagerieConfig& cfg) {
  cfg.validate();
  const auto aggs = subject_aggregates(pop, cfg.aggregator);
  const std::size_t n = aggs.by_subject.size();

  const double min_required = 1.0 / cfg.tail_fraction;
  if (static_cast<double>(n) < min_required - 1e-9) {
    std::ostringstream msg;
    msg << "categorization requires at least "
        << static_cast<std::size_t>(std::ceil(min_required - 1e-9))
        << " eligible subjects (1/tail_fraction); got " << n;
    throw ConfigError(msg.str());
  }

  MenagerieAssignment assign;
  assign.k = tail_count(cfg.tail_fraction, n);

  struct Ranked {
    double value;
    const std::string* id;
  };
  std::vector<Ranked> by_genuine, by_impostor;
  by_genuine.reserve(n);
  by_impostor.reserve(n);
  for (const auto& [id, agg] : aggs.by_subject) {
    by_genuine.push_back({agg.genuine_agg, &id});
    by_impostor.push_back({agg.impostor_agg, &id});
  }
  // Bottom of the genuine ranking; ties by ascending subject id.
  std::sort(by_genuine.begin(), by_genuine.end(),
            [](const Ranked& a, const Ranked& b) {
              if (a.value != b.value) return a.value < b.value;
              return *a.id < *b.id;
            });
  // Top of the impostor ranking; ties by ascending subject id.
  std::sort(by_impostor.begin(), by_impostor.end(),
            [](const Ranked& a, const Ranked& b) {
              if (a.value != b.value) return a.value > b.value;
              return *a.id < *b.id;
            });

  std::vector<const std::string*> goat_side;
  for (std::size_t i = 0; i < assign.k; ++i)
    goat_side.push_back(by_genuine[i].id);
  std::vector<const std::string*> wolf_side;
  for (std::size_t i = 0; i < assign.k; ++i)
    wolf_side.push_back(by_impostor[i].id);

  for (const auto& [id, agg] : aggs.by_subject)
    assign.category[id] = Category::Sheep;
  for (const auto* id : goat_side) assign.category[*id] = Category::Goat;
  for (const auto* id : wolf_side) {
    auto& slot = assign.category[*id];
    slot = (slot == Category::Goat) ? Category::Worm : Category::WolfLamb;
  }
  return assign;
}

std::vector<std::string> category_members(const MenagerieAssignment& assign,
                                          Category c) {
  std::vector<std::string> out;
  for (const auto& [id, cat] : assign.category)
    if (cat == c) out.push_back(id);
  return out;  // map iteration is already sorted by id
}

std::string menagerie_to_csv(const MenagerieAssignment& assign) {
  std::string out = "subject_id,category\n";
  for (const auto& [id, c] : assign.category) {
    out += id;
    out += ',';
    out += category_name(c);
    out += '\n';
  }
  return out;
}

}  // namespace wrisk
