#pragma once
// Least-squares fitting of the factored link weights by SGD.
//
// Training uses the linear prediction e_l = sum_k w_lk v_k with unclamped
// weights; the non-linear intensity forms are an inference-time concern.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emotive/affect.hpp"

namespace emotive {

struct TrainingSample {
  std::array<double, kAppraisalVariableCount> appraisals{};  // indexed by AppraisalVariable
  FactorValues factors{};
  std::vector<double> targets;  // aligned with TrainingSet::emotions
};

struct TrainingSet {
  std::vector<std::string> emotions;
  std::vector<TrainingSample> samples;

  // Throws DomainError on out-of-range values or ragged targets.
  void validate() const;

  std::string to_csv() const;
  static TrainingSet from_csv(const std::string& text, const std::string& source = "<dataset>");
  void save(const std::filesystem::path& path) const;
  static TrainingSet load(const std::filesystem::path& path);
};

/// Unclamped sum_k (sum_x f_lkx m_x) v_k over the emotion's links.
double linear_prediction(const WeightModel& model, std::string_view emotion,
                         const TrainingSample& sample);

/// (e - e_hat)^2 for one emotion.
double squared_error(const WeightModel& model, std::string_view emotion,
                     const TrainingSample& sample, double target);

/// (e - e_hat) m_x v_k for every factor of one link; equals -1/2 dL/df.
FactorWeights update_direction(const WeightModel& model, std::size_t link,
                               const TrainingSample& sample, double target);

/// Mean over samples of the summed squared error across dataset emotions.
double dataset_loss(const WeightModel& model, const TrainingSet& set);
/// Root of the mean squared error over every (sample, emotion) cell.
double dataset_rmse(const WeightModel& model, const TrainingSet& set);

struct SgdParams {
  double eta0 = 0.05;
  double lr_decay = 1e-4;  // eta = eta0 / (1 + lr_decay * step)
  int epochs = 50;
  std::uint64_t seed = 42;
};

struct TrainingResult {
  WeightModel model;
  double final_loss = 0.0;
  std::size_t steps = 0;
  std::vector<double> epoch_loss;
};

/// Throws TrainingDiverged when the loss stops being finite.
TrainingResult sgd_train(const TrainingSet& set, const WeightModel& initial,
                         const SgdParams& params = {});

/// Deterministic split; the last `fraction` of a seeded permutation is held out.
std::pair<TrainingSet, TrainingSet> split_holdout(const TrainingSet& set, double fraction,
                                                  std::uint64_t seed);

/// Factors drawn uniformly from [-scale, scale].
WeightModel random_model(std::vector<Link> topology, double scale, std::uint64_t seed);

/// Samples labelled by `planted`'s linear prediction. Inputs are uniform over
/// their ranges; samples with any |target| > 1 are redrawn.
TrainingSet synthesize_planted(const WeightModel& planted, const EmotionCatalog& emotions,
                               std::size_t count, std::uint64_t seed);

}  // namespace emotive
