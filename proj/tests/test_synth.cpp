#include <doctest.h>

#include <set>
#include <sstream>

#include "test_helpers.hpp"
#include "wrisk/errors.hpp"
#include "wrisk/menagerie.hpp"
#include "wrisk/synth.hpp"

using namespace wrisk;

TEST_CASE("an all-sheep spec plants every subject as sheep") {
  SynthSpec spec = SynthSpec::with_default_profiles();
  spec.fractions.clear();
  spec.n_subjects = 50;
  auto result = generate(spec);
  CHECK(result.ground_truth.category.size() == 50);
  for (const auto& [id, c] : result.ground_truth.category)
    CHECK(c == Category::Sheep);
  CHECK(result.ground_truth.k == 0);
}

TEST_CASE("generation is bit-identical for a fixed seed") {
  auto spec = SynthSpec::with_default_profiles();
  spec.n_subjects = 120;
  spec.seed = 77;
  auto a = generate(spec);
  auto b = generate(spec);
  CHECK(a.records == b.records);
  CHECK(a.ground_truth == b.ground_truth);
  CHECK(from_records(a.records) == from_records(b.records));

  spec.seed = 78;
  CHECK(generate(spec).records != a.records);
}

TEST_CASE("planted counts use the guarded ceiling") {
  auto spec = SynthSpec::with_default_profiles();
  CHECK(spec.planted_count(Category::Goat) == 15);  // ceil(0.025 * 568)
  CHECK(spec.planted_count(Category::WolfLamb) == 15);
  CHECK(spec.planted_count(Category::Worm) == 0);
  CHECK(spec.planted_count(Category::Sheep) == 568 - 30);

  spec.fractions[Category::Goat] = 13.0 / 568.0;
  CHECK(spec.planted_count(Category::Goat) == 13);
}

TEST_CASE("well-separated profiles are recovered exactly by categorization") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto spec = SynthSpec::with_default_profiles();
    spec.seed = seed;
    spec.fractions = {{Category::Goat, 13.0 / 568.0},
                      {Category::WolfLamb, 13.0 / 568.0},
                      {Category::Worm, 2.0 / 568.0}};
    auto result = generate(spec);
    auto pop = from_records(result.records, spec.score_max);
    auto assign = categorize(pop, {});
    CHECK(assign == result.ground_truth);
  }
}

TEST_CASE("recovery degrades monotonically as separation shrinks") {
  // Recovery = planted goats landing on the goat side (Goat or Worm; the
  // impostor tail can tag a planted goat as Worm by chance).
  auto recovered_fraction = [](double goat_center) {
    auto spec = SynthSpec::with_default_profiles();
    spec.n_subjects = 200;
    spec.seed = 5;
    spec.fractions = {{Category::Goat, 0.025}};
    spec.profiles[Category::Goat].genuine.center = goat_center;
    auto result = generate(spec);
    auto pop = from_records(result.records, spec.score_max);
    auto assign = categorize(pop, {});
    std::size_t hits = 0, planted = 0;
    for (const auto& [id, c] : result.ground_truth.category) {
      if (c != Category::Goat) continue;
      ++planted;
      Category got = assign.category.at(id);
      if (got == Category::Goat || got == Category::Worm) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(planted);
  };

  // Sheep genuine center is 85, spread 3: separations of 15, 1, 0.2 sigma.
  double wide = recovered_fraction(40.0);
  double mid = recovered_fraction(82.0);
  double narrow = recovered_fraction(84.4);
  CHECK(wide == 1.0);
  CHECK(wide >= mid);
  CHECK(mid >= narrow);
  CHECK(narrow < 1.0);
}

TEST_CASE("impostor gallery ids cycle over other subjects") {
  auto spec = SynthSpec::with_default_profiles();
  spec.n_subjects = 5;
  spec.fractions.clear();
  spec.n_impostor_per_subject = 9;
  auto result = generate(spec);
  for (const auto& rec : result.records) {
    if (!rec.genuine()) CHECK(rec.probe_id != rec.gallery_id);
  }
  auto pop = from_records(result.records);
  CHECK(pop.subjects.size() == 5);
  for (const auto& [id, scores] : pop.subjects) {
    CHECK(scores.genuine.size() == spec.n_genuine_per_subject);
    CHECK(scores.impostor.size() == 9);
  }
}

TEST_CASE("scores honor the configured range") {
  auto spec = SynthSpec::with_default_profiles();
  spec.n_subjects = 60;
  spec.profiles[Category::Sheep].genuine = {99.0, 10.0};  // clamps at 100
  auto result = generate(spec);
  for (const auto& rec : result.records) {
    CHECK(rec.score >= 0.0);
    CHECK(rec.score <= spec.score_max);
  }
}

TEST_CASE("infeasible specs are rejected") {
  auto spec = SynthSpec::with_default_profiles();
  spec.fractions = {{Category::Goat, 0.7}, {Category::WolfLamb, 0.7}};
  CHECK_THROWS_AS(generate(spec), ConfigError);

  spec = SynthSpec::with_default_profiles();
  spec.n_subjects = 1;
  CHECK_THROWS_AS(generate(spec), ConfigError);

  spec = SynthSpec::with_default_profiles();
  spec.profiles[Category::Goat].genuine.spread = 0.0;
  CHECK_THROWS_AS(generate(spec), ConfigError);

  spec = SynthSpec::with_default_profiles();
  spec.profiles[Category::Goat].genuine.center = 150.0;
  CHECK_THROWS_AS(generate(spec), ConfigError);
}

TEST_CASE("spec JSON round-trips") {
  auto spec = SynthSpec::with_default_profiles();
  spec.n_subjects = 99;
  spec.seed = 1234;
  spec.fractions[Category::Worm] = 0.01;
  auto parsed = parse_synth_spec(synth_spec_to_json(spec));
  CHECK(parsed.n_subjects == spec.n_subjects);
  CHECK(parsed.seed == spec.seed);
  CHECK(parsed.fractions == spec.fractions);
  CHECK(parsed.profiles.at(Category::Goat).genuine.center ==
        spec.profiles.at(Category::Goat).genuine.center);
}

TEST_CASE("spec JSON rejects malformed input") {
  CHECK_THROWS_AS(parse_synth_spec("not json"), ParseError);
  CHECK_THROWS_AS(parse_synth_spec("[]"), ConfigError);
  CHECK_THROWS_AS(parse_synth_spec(R"({"fractions":{"dragon":0.1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_synth_spec(R"({"n_subjects":0})"), ConfigError);
  CHECK_NOTHROW(parse_synth_spec(R"({"n_subjects":50})"));
}

TEST_CASE("CSV exports for records and ground truth") {
  auto spec = SynthSpec::with_default_profiles();
  spec.n_subjects = 3;
  spec.fractions.clear();
  spec.n_genuine_per_subject = 1;
  spec.n_impostor_per_subject = 1;
  auto result = generate(spec);
  auto scores_csv = records_to_csv(result.records);
  CHECK(scores_csv.rfind("probe_id,gallery_id,score\n", 0) == 0);
  // Round-trip through ingest reproduces the population.
  std::istringstream in(scores_csv);
  CHECK(ingest_scores(in) == from_records(result.records));

  auto truth_csv = ground_truth_to_csv(result.ground_truth);
  CHECK(truth_csv ==
        "subject_id,planted_class\ns1,sheep\ns2,sheep\ns3,sheep\n");
}
