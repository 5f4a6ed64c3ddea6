#pragma once
// Converging the active emotions to one regulated state.

#include <span>
#include <string>
#include <vector>

#include "emotive/core.hpp"
#include "emotive/memory.hpp"

namespace emotive {

enum class Strategy { highest, blended, ethical };

std::string_view to_string(Strategy s);  // "highest", "blended", "ethical"
Strategy parse_strategy(std::string_view text);  // case-insensitive

inline constexpr std::string_view kBlendedLabel = "blended";

struct ActiveEmotion {
  EmotionSpec spec;
  double intensity = 0.0;
};

/// Emotions with intensity > 0, in catalog order.
std::vector<ActiveEmotion> active_emotions(const IntensityMap& intensities,
                                           const EmotionCatalog& emotions);

// Tie-break for every argmax: larger |valence degree|, then smaller name.
bool tie_break_before(const EmotionSpec& a, const EmotionSpec& b);

struct EthicsDiagnostic {
  std::string emotion;
  double intensity = 0.0;
  double coefficient_of_standard = 0.0;
  double quantified_emotion = 0.0;
  double coefficient_of_ethics = 0.0;
};

struct RegulationOutcome {
  Strategy strategy = Strategy::highest;
  std::string emotion;   // empty when nothing is active; kBlendedLabel for BLENDED
  std::string dominant;  // BLENDED only: the strongest contributor
  double intensity = 0.0;
  std::vector<EthicsDiagnostic> diagnostics;  // ETHICAL only
  bool degenerate = false;  // ETHICAL with every CoS equal to 0

  bool has_emotion() const { return !emotion.empty(); }
};

RegulationOutcome select_highest(std::span<const ActiveEmotion> active);

/// 0.1 * log2(sum 2^(10 i)). Throws DomainError for an empty set.
double blended_intensity(std::span<const double> intensities);
/// Blended intensity clamped to [0, 1], labelled with kBlendedLabel.
RegulationOutcome select_blended(std::span<const ActiveEmotion> active);

/// Mean signed approval of the standards (emotion, *, target); 0 if none.
double coefficient_of_standard(std::string_view emotion, std::string_view target,
                               const StandardSet& standards);
inline double quantified_emotion(const EmotionSpec& spec, double intensity) {
  return spec.valence_degree() * intensity;
}
inline double coefficient_of_ethics(double cos, double qe) { return cos * (qe < 0.0 ? -qe : qe); }

RegulationOutcome select_ethical(std::span<const ActiveEmotion> active, std::string_view target,
                                 const StandardSet& standards);

RegulationOutcome regulate(Strategy strategy, std::span<const ActiveEmotion> active,
                           std::string_view target, const StandardSet& standards);

}  // namespace emotive
