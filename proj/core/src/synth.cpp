#include "wrisk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "text.hpp"
#include "wrisk/errors.hpp"

namespace wrisk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Substream seed for subject `index`; documented in the header. Independent
// of how many draws earlier subjects consumed.
std::uint64_t substream_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL *
                               (static_cast<std::uint64_t>(index) + 1));
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

// Marsaglia polar method over the explicit 53-bit uniform mapping: the
// deviate stream depends only on mt19937_64, not on the standard library's
// normal_distribution implementation.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * unit_double(rng_) - 1.0;
      v = 2.0 * unit_double(rng_) - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

double draw_score(GaussianSampler& g, const ScoreProfile& profile,
                  double score_max) {
  return std::clamp(profile.center + profile.spread * g.next(), 0.0,
                    score_max);
}

std::string subject_id(std::size_t index, std::size_t n_subjects) {
  std::size_t width = 1;
  for (std::size_t n = n_subjects; n >= 10; n /= 10) ++width;
  std::string digits = std::to_string(index + 1);
  return "s" + std::string(width > digits.size() ? width - digits.size() : 0,
                           '0') +
         digits;
}

const std::map<Category, ClassProfile>& default_profiles() {
  static const std::map<Category, ClassProfile> profiles = {
      {Category::Sheep, {{85.0, 3.0}, {20.0, 3.0}}},
      {Category::Goat, {{40.0, 3.0}, {20.0, 3.0}}},
      {Category::WolfLamb, {{85.0, 3.0}, {60.0, 3.0}}},
      {Category::Worm, {{40.0, 3.0}, {60.0, 3.0}}},
  };
  return profiles;
}

void check_profile(const ScoreProfile& p, double score_max,
                   std::string_view what) {
  if (!std::isfinite(p.center) || p.center < 0.0 || p.center > score_max) {
    throw ConfigError(std::string(what) +
                      ": center must lie in [0, score_max]");
  }
  if (!(p.spread > 0.0) || !std::isfinite(p.spread)) {
    throw ConfigError(std::string(what) + ": spread must be positive");
  }
}

}  // namespace

SynthSpec SynthSpec::with_default_profiles() {
  SynthSpec spec;
  spec.profiles = default_profiles();
  spec.fractions = {{Category::Goat, 0.025}, {Category::WolfLamb, 0.025}};
  return spec;
}

std::size_t SynthSpec::planted_count(Category c) const {
  if (c == Category::Sheep) {
    std::size_t planted = planted_count(Category::Goat) +
                          planted_count(Category::WolfLamb) +
                          planted_count(Category::Worm);
    return planted > n_subjects ? 0 : n_subjects - planted;
  }
  auto it = fractions.find(c);
  if (it == fractions.end() || it->second <= 0.0) return 0;
  return tail_count(it->second, n_subjects);
}

void SynthSpec::validate() const {
  if (n_subjects == 0) throw ConfigError("n_subjects must be positive");
  if (n_genuine_per_subject == 0 || n_impostor_per_subject == 0)
    throw ConfigError("per-subject score counts must be positive");
  if (n_subjects < 2)
    throw ConfigError("impostor records need at least 2 subjects");
  if (!(score_max > 0.0) || !std::isfinite(score_max))
    throw ConfigError("score_max must be a positive finite number");

  double fraction_sum = 0.0;
  for (const auto& [c, f] : fractions) {
    if (c == Category::Sheep) continue;  // implied remainder
    if (!std::isfinite(f) || f < 0.0)
      throw ConfigError("planted fractions must be non-negative");
    fraction_sum += f;
  }
  std::size_t planted = planted_count(Category::Goat) +
                        planted_count(Category::WolfLamb) +
                        planted_count(Category::Worm);
  if (fraction_sum > 1.0 + 1e-9 || planted > n_subjects)
    throw ConfigError("infeasible fractions: planted classes exceed the population");

  for (Category c : kAllCategories) {
    if (c != Category::Sheep && planted_count(c) == 0) continue;
    auto it = profiles.find(c);
    if (it == profiles.end()) {
      throw ConfigError("missing profile for planted class '" +
                        std::string(category_name(c)) + "'");
    }
    std::string what = "profile for " + std::string(category_name(c));
    check_profile(it->second.genuine, score_max, what + " (genuine)");
    check_profile(it->second.impostor, score_max, what + " (impostor)");
  }
}

SynthResult generate(const SynthSpec& spec) {
  spec.validate();

  const std::size_t n = spec.n_subjects;
  const std::size_t n_goat = spec.planted_count(Category::Goat);
  const std::size_t n_wl = spec.planted_count(Category::WolfLamb);
  const std::size_t n_worm = spec.planted_count(Category::Worm);

  std::vector<std::string> ids(n);
  std::vector<Category> planted(n, Category::Sheep);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = subject_id(i, n);
    if (i < n_goat)
      planted[i] = Category::Goat;
    else if (i < n_goat + n_wl)
      planted[i] = Category::WolfLamb;
    else if (i < n_goat + n_wl + n_worm)
      planted[i] = Category::Worm;
  }

  SynthResult result;
  result.records.reserve(n * (spec.n_genuine_per_subject +
                              spec.n_impostor_per_subject));
  for (std::size_t i = 0; i < n; ++i) {
    const ClassProfile& profile = spec.profiles.at(planted[i]);
    GaussianSampler sampler(substream_seed(spec.seed, i));
    for (std::size_t j = 0; j < spec.n_genuine_per_subject; ++j) {
      result.records.push_back(
          {ids[i], ids[i],
           draw_score(sampler, profile.genuine, spec.score_max)});
    }
    for (std::size_t j = 0; j < spec.n_impostor_per_subject; ++j) {
      // Cycle through the other subjects as gallery entries.
      std::size_t offset = j % (n - 1) + 1;
      result.records.push_back(
          {ids[i], ids[(i + offset) % n],
           draw_score(sampler, profile.impostor, spec.score_max)});
    }
    result.ground_truth.category[ids[i]] = planted[i];
  }
  result.ground_truth.k = n_goat + n_worm;
  return result;
}

namespace {

using nlohmann::json;

ScoreProfile profile_from_json(const json& j, std::string_view what) {
  if (!j.is_object() || !j.contains("center") || !j.contains("spread")) {
    throw ConfigError(std::string(what) +
                      " must be an object with 'center' and 'spread'");
  }
  return ScoreProfile{j.at("center").get<double>(),
                      j.at("spread").get<double>()};
}

}  // namespace

SynthSpec parse_synth_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid synth spec JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("synth spec must be a JSON object");

  SynthSpec spec;
  spec.profiles = default_profiles();
  try {
    if (j.contains("n_subjects"))
      spec.n_subjects = j.at("n_subjects").get<std::size_t>();
    if (j.contains("n_genuine_per_subject"))
      spec.n_genuine_per_subject =
          j.at("n_genuine_per_subject").get<std::size_t>();
    if (j.contains("n_impostor_per_subject"))
      spec.n_impostor_per_subject =
          j.at("n_impostor_per_subject").get<std::size_t>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("score_max"))
      spec.score_max = j.at("score_max").get<double>();
    if (j.contains("fractions")) {
      for (const auto& [name, value] : j.at("fractions").items()) {
        auto c = category_from_name(name);
        if (!c) throw ConfigError("unknown class in fractions: '" + name + "'");
        spec.fractions[*c] = value.get<double>();
      }
    }
    if (j.contains("profiles")) {
      for (const auto& [name, value] : j.at("profiles").items()) {
        auto c = category_from_name(name);
        if (!c) throw ConfigError("unknown class in profiles: '" + name + "'");
        ClassProfile p;
        p.genuine = profile_from_json(value.at("genuine"),
                                      "profiles." + name + ".genuine");
        p.impostor = profile_from_json(value.at("impostor"),
                                       "profiles." + name + ".impostor");
        spec.profiles[*c] = p;
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid synth spec value: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string synth_spec_to_json(const SynthSpec& spec) {
  nlohmann::ordered_json j;
  j["n_subjects"] = spec.n_subjects;
  j["n_genuine_per_subject"] = spec.n_genuine_per_subject;
  j["n_impostor_per_subject"] = spec.n_impostor_per_subject;
  j["seed"] = spec.seed;
  j["score_max"] = spec.score_max;
  nlohmann::ordered_json fractions = nlohmann::ordered_json::object();
  for (const auto& [c, f] : spec.fractions)
    fractions[std::string(category_name(c))] = f;
  j["fractions"] = fractions;
  nlohmann::ordered_json profiles = nlohmann::ordered_json::object();
  for (const auto& [c, p] : spec.profiles) {
    profiles[std::string(category_name(c))] = {
        {"genuine", {{"center", p.genuine.center}, {"spread", p.genuine.spread}}},
        {"impostor",
         {{"center", p.impostor.center}, {"spread", p.impostor.spread}}}};
  }
  j["profiles"] = profiles;
  return j.dump(2) + "\n";
}

std::string ground_truth_to_csv(const MenagerieAssignment& truth) {
  std::string out = "subject_id,planted_class\n";
  for (const auto& [id, c] : truth.category) {
    out += id;
    out += ',';
    out += category_name(c);
    out += '\n';
  }
  return out;
}

std::string records_to_csv(const std::vector<MatchRecord>& records) {
  std::string out = "probe_id,gallery_id,score\n";
  for (const auto& rec : records) {
    out += rec.probe_id;
    out += ',';
    out += rec.gallery_id;
    out += ',';
    out += detail::format_double(rec.score);
    out += '\n';
  }
  return out;
}

}  // namespace wrisk
