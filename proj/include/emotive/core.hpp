#pragma once
// Domain types shared by every stage of the emotion pipeline.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emotive {

// Entity id used for the agent itself.
inline constexpr std::string_view kSelf = "SELF";

enum class Valence { positive, negative };

std::string_view to_string(Valence v);
Valence parse_valence(std::string_view text);

struct ActionSpec {
  std::string name;
  Valence valence = Valence::positive;
  double degree = 0.0;  // [-1, 1]; 0 is valence-neutral

  friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

// Throws DomainError when |degree| > 1 or the sign disagrees with valence.
void validate(const ActionSpec& action);

struct EventRecord {
  std::string source;
  ActionSpec action;
  std::string target;
  std::int64_t timestamp = 0;  // seconds
  std::map<std::string, double> other_info;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// Familiarity is a relationship distance: 1 = stranger, 0 = fully familiar.
struct EntityProfile {
  std::string name;
  double familiarity = 1.0;
  double perception = 0.0;

  static EntityProfile stranger(std::string name) { return {std::move(name), 1.0, 0.0}; }

  friend bool operator==(const EntityProfile&, const EntityProfile&) = default;
};

struct EmotionSpec {
  std::string name;
  double angle_deg = 0.0;
  double threshold = 0.0;
  double decay_time_s = 10.0;

  double valence_degree() const;
  Valence valence() const { return valence_degree() >= 0.0 ? Valence::positive : Valence::negative; }
};

/// Projection of a circumplex angle onto the pleasure axis.
/// Precondition: angle in [0, 360).
double valence_degree(double angle_deg);

/// The ten shipped emotions with their averaged circumplex angles.
const std::vector<EmotionSpec>& default_emotions();

// Ordered, name-keyed emotion set. Order is the column order of traces.
class EmotionCatalog {
 public:
  EmotionCatalog() : EmotionCatalog(default_emotions()) {}
  explicit EmotionCatalog(std::vector<EmotionSpec> specs);

  const std::vector<EmotionSpec>& specs() const { return specs_; }
  const EmotionSpec& at(std::string_view name) const;
  const EmotionSpec* find(std::string_view name) const;
  std::size_t size() const { return specs_.size(); }

  static EmotionCatalog load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string to_text() const;
  static EmotionCatalog from_text(const std::string& text, const std::string& source = "<emotions>");

 private:
  std::vector<EmotionSpec> specs_;
};

struct PersonalityProfile {
  double openness = 0.5;
  double conscientiousness = 0.5;
  double extraversion = 0.5;
  double agreeableness = 0.5;
  double neuroticism = 0.5;
};

void validate(const PersonalityProfile& p);

class MoodState {
 public:
  MoodState() = default;
  explicit MoodState(double value) { set(value); }

  double value() const { return value_; }
  void set(double v);

  friend bool operator==(const MoodState&, const MoodState&) = default;

 private:
  double value_ = 0.0;
};

enum class AppraisalVariable {
  goal_conduciveness,
  desirability,
  praiseworthiness,
  appealingness,
  deservingness,
  familiarity,
  unexpectedness,
};

inline constexpr std::size_t kAppraisalVariableCount = 7;

const std::array<AppraisalVariable, kAppraisalVariableCount>& all_appraisal_variables();
std::string_view to_string(AppraisalVariable v);
AppraisalVariable parse_appraisal_variable(std::string_view text);

struct GoalScore {
  std::string goal;
  std::string target;
  int height = 0;
  double value = 0.0;  // [-1, 1]

  friend bool operator==(const GoalScore&, const GoalScore&) = default;
};

// Seven appraisal variables for one event, already normalized.
struct AppraisalVector {
  std::vector<GoalScore> goal_conduciveness;
  double desirability = 0.0;
  double praiseworthiness = 0.0;
  double appealingness = 0.0;
  double deservingness = 0.0;
  double familiarity = 1.0;
  double unexpectedness = 0.0;

  // Scalar summary of the per-goal values; 0 when no goal is relevant.
  double mean_goal_conduciveness() const;
  double value(AppraisalVariable v) const;

  friend bool operator==(const AppraisalVector&, const AppraisalVector&) = default;
};

using IntensityMap = std::map<std::string, double>;

struct AffectState {
  IntensityMap intensities;  // every value in [0, 1]
  MoodState mood;
  std::map<std::string, std::int64_t> last_stimulus_tick;
};

}  // namespace emotive
