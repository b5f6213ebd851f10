#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wrisk/scores.hpp"

namespace wrisk {

/// Doddington-style recognition categories. Wolves and lambs are merged into
/// one class; worms exhibit both goat and wolf/lamb behavior and are counted
/// inside both tails.
enum class Category { Sheep, Goat, WolfLamb, Worm };

inline constexpr Category kAllCategories[] = {Category::Sheep, Category::Goat,
                                              Category::WolfLamb,
                                              Category::Worm};

std::string_view category_name(Category c);  // "sheep", "goat", "wolf_lamb", "worm"
std::optional<Category> category_from_name(std::string_view name);

struct MenagerieConfig {
  /// Fraction of eligible subjects selected into each tail. 0.025 matches the
  /// two-standard-deviations convention. Must lie in (0, 0.5).
  double tail_fraction = 0.025;
  Aggregator aggregator = Aggregator::Mean;
  // Ties at the k-th rank are always broken by ascending subject id.

  void validate() const;  // throws ConfigError
};

struct MenagerieAssignment {
  std::map<std::string, Category> category;  // every eligible subject
  std::size_t k = 0;                         // tail count = ceil(tail_fraction * N)

  std::map<Category, std::size_t> counts() const;
  /// Empirical fraction of eligible subjects per category; sums to 1.
  std::map<Category, double> empirical_fractions() const;

  bool operator==(const MenagerieAssignment&) const = default;
};

/// Smallest integer >= fraction * n, guarded against floating-point
/// representation pushing an exact integer product just above itself.
std::size_t tail_count(double fraction, std::size_t n);

/// Partitions the eligible subjects: the bottom-k by genuine aggregate are
/// goat-side, the top-k by impostor aggregate are wolf/lamb-side, the
/// intersection is Worm, everyone else Sheep. Deterministic: ties resolve by
/// ascending subject id.
///
/// Throws ConfigError when fewer than 1/tail_fraction subjects are eligible.
MenagerieAssignment categorize(const Population& pop,
                               const MenagerieConfig& cfg = {});

/// Sorted, stable listing of the members of one category.
std::vector<std::string> category_members(const MenagerieAssignment& assign,
                                          Category c);

/// CSV export, `subject_id,category`, one row per subject, sorted by id.
std::string menagerie_to_csv(const MenagerieAssignment& assign);

}  // namespace wrisk
