#include <doctest.h>

#include <random>

#include "test_helpers.hpp"
#include "wrisk/errors.hpp"
#include "wrisk/rates.hpp"

using namespace wrisk;

namespace {

MenagerieAssignment single_sheep(const std::string& id) {
  MenagerieAssignment assign;
  assign.category[id] = Category::Sheep;
  assign.k = 0;
  return assign;
}

}  // namespace

TEST_CASE("decision convention is match at or above the threshold") {
  CHECK(decide(90, 50) == Decision::Match);
  CHECK(decide(50, 50) == Decision::Match);
  CHECK(decide(10, 50) == Decision::NonMatch);
}

TEST_CASE("threshold grids must be strictly increasing") {
  CHECK_THROWS_AS(ThresholdGrid::make({}), ConfigError);
  CHECK_THROWS_AS(ThresholdGrid::make({10, 10}), ConfigError);
  CHECK_THROWS_AS(ThresholdGrid::make({50, 10}), ConfigError);
  CHECK_THROWS_AS(ThresholdGrid::make({-1, 10}), ConfigError);
  CHECK_NOTHROW(ThresholdGrid::make({10, 50, 100}));
}

TEST_CASE("fnr counts genuine scores below the threshold") {
  auto pop = from_records({{"A", "A", 10}, {"A", "A", 20}, {"A", "A", 30},
                           {"A", "B", 5}});
  auto rates = sweep(pop, single_sheep("A"), ThresholdGrid::make({25}));
  const auto& cell = rates.per_category.at(Category::Sheep)[0];
  CHECK(cell.fn_count == 2);
  CHECK(cell.n_genuine == 3);
  CHECK(*cell.fnr() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("a threshold below every score gives fnr 0 and fpr 1") {
  auto pop = from_records({{"A", "A", 60}, {"A", "B", 40}, {"B", "B", 70},
                           {"B", "A", 55}});
  MenagerieAssignment assign;
  assign.category["A"] = Category::Goat;
  assign.category["B"] = Category::WolfLamb;
  assign.k = 1;
  auto rates = sweep(pop, assign, ThresholdGrid::make({5}));
  for (Category c : {Category::Goat, Category::WolfLamb}) {
    const auto& cell = rates.per_category.at(c)[0];
    CHECK(*cell.fnr() == 0.0);
    CHECK(*cell.fpr() == 1.0);
  }
}

TEST_CASE("categories without scores report undefined rates, not zero") {
  auto pop = from_records({{"A", "A", 60}, {"A", "B", 40}});
  auto rates = sweep(pop, single_sheep("A"), ThresholdGrid::make({50}));
  const auto& goat = rates.per_category.at(Category::Goat)[0];
  CHECK(!goat.fnr().has_value());
  CHECK(!goat.fpr().has_value());
  CHECK(goat.n_genuine == 0);

  auto csv = rates_to_csv(rates);
  CHECK(csv.find("goat,50,NA,NA,0,0\n") != std::string::npos);
  CHECK(csv.rfind("category,threshold,fnr,fpr,n_genuine,n_impostor\n", 0) == 0);
}

TEST_CASE("sweep rejects thresholds beyond the score scale") {
  auto pop = from_records({{"A", "A", 60}, {"A", "B", 40}});
  CHECK_THROWS_AS(sweep(pop, single_sheep("A"), ThresholdGrid::make({150})),
                  ConfigError);
  CHECK_NOTHROW(sweep(pop, single_sheep("A"), ThresholdGrid::make({100})));
}

TEST_CASE("sweep must cover the eligible subjects") {
  auto pop = from_records({{"A", "A", 60}, {"A", "B", 40}});
  MenagerieAssignment empty;
  CHECK_THROWS_AS(sweep(pop, empty, ThresholdGrid::make({50})), ConfigError);

  MenagerieAssignment wrong;
  wrong.category["A"] = Category::Sheep;
  wrong.category["Z"] = Category::Goat;  // not in the population
  CHECK_THROWS_AS(sweep(pop, wrong, ThresholdGrid::make({50})), ConfigError);
}

TEST_CASE("sweep equals the double-loop oracle on random populations") {
  std::mt19937_64 rng(314);
  for (int round = 0; round < 12; ++round) {
    auto records = testutil::random_records(rng, 50, 1, 20);
    auto pop = from_records(records);
    auto assign = categorize(pop, {});

    std::uniform_int_distribution<int> grid_size(1, 101);
    std::vector<double> thresholds;
    double t = 0.0;
    int n = grid_size(rng);
    std::uniform_real_distribution<double> step(0.01, 100.0 / n);
    for (int i = 0; i < n; ++i) thresholds.push_back(t += step(rng));
    auto grid = ThresholdGrid::make(thresholds);
    auto rates = sweep(pop, assign, grid);

    // Gather per-category score lists independently.
    std::map<Category, std::vector<double>> genuine, impostor;
    for (const auto& [id, c] : assign.category) {
      const auto* scores = pop.find(id);
      for (double s : scores->genuine) genuine[c].push_back(s);
      for (double s : scores->impostor) impostor[c].push_back(s);
    }

    for (Category c : kAllCategories) {
      const auto& cells = rates.per_category.at(c);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        auto expected = testutil::naive_counts(genuine[c], impostor[c],
                                               grid.thresholds[i]);
        CHECK(cells[i].fn_count == expected.fn);
        CHECK(cells[i].n_genuine == expected.ng);
        CHECK(cells[i].fp_count == expected.fp);
        CHECK(cells[i].n_impostor == expected.ni);
      }
      // Monotone in T: fnr non-decreasing, fpr non-increasing.
      for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(cells[i].fn_count >= cells[i - 1].fn_count);
        CHECK(cells[i].fp_count <= cells[i - 1].fp_count);
      }
    }
  }
}

TEST_CASE("pooled rates are the count-weighted mean of category rates") {
  std::mt19937_64 rng(99);
  auto records = testutil::random_records(rng, 60, 2, 10);
  auto pop = from_records(records);
  auto assign = categorize(pop, {});
  auto rates = sweep(pop, assign, ThresholdGrid::make({10, 30, 50, 70, 90}));

  for (std::size_t i = 0; i < rates.grid.size(); ++i) {
    std::uint64_t fn = 0, ng = 0, fp = 0, ni = 0;
    double weighted_fnr = 0.0;
    for (Category c : kAllCategories) {
      const auto& cell = rates.per_category.at(c)[i];
      fn += cell.fn_count;
      ng += cell.n_genuine;
      fp += cell.fp_count;
      ni += cell.n_impostor;
      if (cell.fnr())
        weighted_fnr += *cell.fnr() * static_cast<double>(cell.n_genuine);
    }
    const auto& pooled = rates.pooled[i];
    CHECK(pooled.fn_count == fn);
    CHECK(pooled.n_genuine == ng);
    CHECK(pooled.fp_count == fp);
    CHECK(pooled.n_impostor == ni);
    CHECK(*pooled.fnr() ==
          doctest::Approx(weighted_fnr / static_cast<double>(ng)).epsilon(1e-12));
  }
}

TEST_CASE("a grid sweep equals pointwise single-threshold sweeps") {
  std::mt19937_64 rng(42);
  auto records = testutil::random_records(rng, 45, 1, 6);
  auto pop = from_records(records);
  auto assign = categorize(pop, {});
  auto grid = ThresholdGrid::make({15, 35, 55, 75});
  auto swept = sweep(pop, assign, grid);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto single = sweep(pop, assign, ThresholdGrid::make({grid.thresholds[i]}));
    for (Category c : kAllCategories) {
      CHECK(swept.per_category.at(c)[i] == single.per_category.at(c)[0]);
    }
    CHECK(swept.pooled[i] == single.pooled[0]);
  }
}

TEST_CASE("rates times trial counts are integers") {
  std::mt19937_64 rng(7);
  auto records = testutil::random_records(rng, 44, 1, 9);
  auto pop = from_records(records);
  auto assign = categorize(pop, {});
  auto rates = sweep(pop, assign, ThresholdGrid::make({20, 40, 60, 80}));
  for (Category c : kAllCategories) {
    for (const auto& cell : rates.per_category.at(c)) {
      if (cell.fnr()) {
        double product = *cell.fnr() * static_cast<double>(cell.n_genuine);
        CHECK(product == doctest::Approx(std::round(product)).epsilon(1e-9));
      }
    }
  }
}
