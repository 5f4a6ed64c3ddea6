#pragma once
// Appraisal -> emotion intensity network, the emotion/mood cycle and decay.

#include <array>
#include <cmath>
#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emotive/appraisal.hpp"
#include "emotive/core.hpp"

namespace emotive {

// Five personality traits plus the current mood.
enum class Factor { openness, conscientiousness, extraversion, agreeableness, neuroticism, mood };
inline constexpr std::size_t kFactorCount = 6;

using FactorValues = std::array<double, kFactorCount>;   // m_x
using FactorWeights = std::array<double, kFactorCount>;  // f_lkx for one link

std::string_view to_string(Factor f);  // "O", "C", "E", "A", "N", "M"
Factor parse_factor(std::string_view text);
FactorValues factor_values(const PersonalityProfile& p, const MoodState& mood);

struct Link {
  std::string emotion;
  AppraisalVariable variable = AppraisalVariable::desirability;

  auto operator<=>(const Link&) const = default;
  bool operator==(const Link&) const = default;
};

/// The 20 appraisal -> emotion associations used at inference.
const std::vector<Link>& association_table();

/// Every (emotion, variable) pair, emotions in catalog order.
std::vector<Link> dense_topology(const EmotionCatalog& emotions);

class WeightModel {
 public:
  WeightModel() = default;
  // Zero factors on every link. Throws DomainError on duplicate links.
  explicit WeightModel(std::vector<Link> topology);

  // Hand-set weights over association_table(); see data/weights.json.
  static WeightModel shipped_default();

  const std::vector<Link>& links() const { return links_; }
  std::size_t size() const { return links_.size(); }
  std::optional<std::size_t> index_of(std::string_view emotion, AppraisalVariable v) const;
  bool has_link(std::string_view emotion, AppraisalVariable v) const {
    return index_of(emotion, v).has_value();
  }

  // Throw DomainError for links outside the topology.
  const FactorWeights& factors(std::string_view emotion, AppraisalVariable v) const;
  void set(std::string_view emotion, AppraisalVariable v, const FactorWeights& f);

  const FactorWeights& factors_at(std::size_t i) const { return factors_[i]; }
  FactorWeights& factors_at(std::size_t i) { return factors_[i]; }

  std::string to_text() const;
  static WeightModel from_text(const std::string& text, const std::string& source = "<weights>");
  void save(const std::filesystem::path& path) const;
  static WeightModel load(const std::filesystem::path& path);

  friend bool operator==(const WeightModel& a, const WeightModel& b) {
    return a.links_ == b.links_ && a.factors_ == b.factors_;
  }

 private:
  std::vector<Link> links_;
  std::vector<FactorWeights> factors_;
  std::map<std::pair<std::string, AppraisalVariable>, std::size_t, std::less<>> index_;
};

/// clamp(sum_x f_x * m_x, -1, 1)
double association_weight(const FactorWeights& f, const FactorValues& m);
double association_weight(const WeightModel& model, std::string_view emotion, AppraisalVariable v,
                          const PersonalityProfile& p, const MoodState& mood);

inline double contribution(double value, double weight) { return value * weight; }

// Which intensity expression an emotion uses. Names outside the ten shipped
// emotions fall back to the linear sum over their links.
enum class IntensityForm {
  linear,              // sum of linked contributions
  praise_power,        // +-|c_prai|^(1 - c_unex)
  desirable_praise,    // c_desi + praise_power
  appeal_power,        // +-|c_appl|^(c_fami)
};

IntensityForm intensity_form(std::string_view emotion);

// sign(base) * |base|^clamp(exponent, 0, 1); 0 when base is 0.
double signed_power(double base, double exponent);

/// Signed raw intensity per catalog emotion. A missing link contributes 0.
IntensityMap raw_intensities(const AppraisalVector& appraisals, const WeightModel& model,
                             const EmotionCatalog& emotions, const PersonalityProfile& p,
                             const MoodState& mood);

inline double apply_threshold(double raw, const EmotionSpec& spec) {
  return raw - spec.threshold > 0.0 ? raw - spec.threshold : 0.0;
}

struct MoodCoefficients {
  double openness = 0.1;
  double conscientiousness = 0.1;
  double extraversion = 0.4;
  double agreeableness = 0.2;
  double neuroticism = 0.6;  // subtracted
  double offset = 0.2;       // subtracted

  friend bool operator==(const MoodCoefficients&, const MoodCoefficients&) = default;
};

MoodState mood_initial(const PersonalityProfile& p, const MoodCoefficients& c = {});

// +alpha|M| when the emotion's valence degree has the sign of M, else -alpha|M|.
double mood_compensation_delta(const EmotionSpec& spec, const MoodState& mood, double alpha);

/// Adds the compensation to every listed emotion and clips at 0.
IntensityMap apply_mood_compensation(const IntensityMap& intensities, const MoodState& mood,
                                     const EmotionCatalog& emotions, double alpha = 0.1);

/// +sum of positive-valence intensities if impact > 0, else -sum of negative ones.
double aggregate_intensity(const IntensityMap& intensities, double impact,
                           const EmotionCatalog& emotions);

inline double mood_factor(double aggregate) { return 2.0 / (1.0 + std::exp(-aggregate)) - 1.0; }

MoodState update_mood(const MoodState& mood, double factor, double beta = 0.1);

// 1 - e^t / e^T, or 0 once t >= T.
double decay_factor(double t, double decay_time);
inline double decay_step(double intensity, double t, double decay_time) {
  return intensity * decay_factor(t, decay_time);
}

double normalize_intensity(double raw, const LogisticParams& p = LogisticParams::unit());

}  // namespace emotive
