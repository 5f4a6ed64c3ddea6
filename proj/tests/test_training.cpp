#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>

#include "emotive/errors.hpp"
#include "emotive/training.hpp"
#include "generators.hpp"

using namespace emotive;
using Catch::Approx;

namespace {

TrainingSample random_sample(gen::Gen& g, std::size_t n_emotions) {
  TrainingSample s;
  for (auto& v : s.appraisals) v = g.degree();
  s.appraisals[static_cast<std::size_t>(AppraisalVariable::familiarity)] = g.unit();
  s.appraisals[static_cast<std::size_t>(AppraisalVariable::unexpectedness)] = g.unit();
  for (auto& f : s.factors) f = g.unit();
  s.factors[5] = g.degree();
  for (std::size_t i = 0; i < n_emotions; ++i) s.targets.push_back(g.degree());
  return s;
}

double loss_of(const WeightModel& m, const TrainingSample& s, const std::string& e, double t) {
  return squared_error(m, e, s, t);
}

}  // namespace

TEST_CASE("update direction equals minus half the finite-difference gradient") {
  gen::Gen g(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto model = random_model(association_table(), 0.5, static_cast<std::uint64_t>(trial));
    const auto s = random_sample(g, 1);
    const std::size_t link = static_cast<std::size_t>(g.integer(0, static_cast<int>(model.size()) - 1));
    const auto& emotion = model.links()[link].emotion;
    const auto dir = update_direction(model, link, s, s.targets[0]);
    for (std::size_t x = 0; x < kFactorCount; ++x) {
      const double h = 1e-6;
      auto up = model, down = model;
      up.factors_at(link)[x] += h;
      down.factors_at(link)[x] -= h;
      const double grad = (loss_of(up, s, emotion, s.targets[0]) - loss_of(down, s, emotion, s.targets[0])) / (2 * h);
      REQUIRE(dir[x] == Approx(-0.5 * grad).margin(1e-6));
    }
  }
}

TEST_CASE("linear prediction is the unclamped double sum") {
  gen::Gen g(42);
  const auto model = random_model(association_table(), 3.0, 5);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_sample(g, 0);
    double expect = 0;
    for (std::size_t k = 0; k < model.size(); ++k) {
      if (model.links()[k].emotion != "anger") continue;
      double w = 0;
      for (std::size_t x = 0; x < kFactorCount; ++x) w += model.factors_at(k)[x] * s.factors[x];
      expect += w * s.appraisals[static_cast<std::size_t>(model.links()[k].variable)];
    }
    REQUIRE(linear_prediction(model, "anger", s) == Approx(expect).margin(1e-12));
  }
}

TEST_CASE("planted weights are recovered") {
  const EmotionCatalog cat;
  const auto topology = dense_topology(cat);
  const auto planted = random_model(topology, 0.1, 11);
  const auto data = synthesize_planted(planted, cat, 5000, 12);
  auto [train, held] = split_holdout(data, 0.2, 13);
  CHECK(held.samples.size() == 1000);
  const auto start = std::chrono::steady_clock::now();
  const auto r = sgd_train(train, WeightModel(topology));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(dataset_rmse(r.model, held) < 0.05);
  CHECK(secs < 60.0);
  CHECK(r.epoch_loss.size() == 50);
  CHECK(r.epoch_loss.back() < r.epoch_loss.front());
}

TEST_CASE("training is deterministic for a fixed seed") {
  const EmotionCatalog cat;
  const auto planted = random_model(association_table(), 0.1, 3);
  const auto data = synthesize_planted(planted, cat, 300, 4);
  SgdParams p;
  p.epochs = 5;
  const auto a = sgd_train(data, WeightModel(association_table()), p);
  const auto b = sgd_train(data, WeightModel(association_table()), p);
  CHECK(a.model.to_text() == b.model.to_text());
  p.seed = 43;
  const auto c = sgd_train(data, WeightModel(association_table()), p);
  CHECK(c.model.to_text() != a.model.to_text());
}

TEST_CASE("zero targets from a zero model stay at zero") {
  gen::Gen g(44);
  TrainingSet set;
  set.emotions = {"joy", "anger"};
  for (int i = 0; i < 50; ++i) {
    auto s = random_sample(g, 2);
    s.targets = {0.0, 0.0};
    set.samples.push_back(s);
  }
  const auto r = sgd_train(set, WeightModel(association_table()));
  CHECK(r.model == WeightModel(association_table()));
  CHECK(r.final_loss == 0.0);
}

TEST_CASE("dataset CSV round trip and validation") {
  const EmotionCatalog cat;
  const auto data = synthesize_planted(random_model(association_table(), 0.1, 1), cat, 20, 2);
  const auto text = data.to_csv();
  CHECK(text.rfind("# emotive-dataset v1\n", 0) == 0);
  const auto back = TrainingSet::from_csv(text);
  CHECK(back.to_csv() == text);
  CHECK(back.samples.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(back.samples[i].appraisals == data.samples[i].appraisals);
    CHECK(back.samples[i].factors == data.samples[i].factors);
    CHECK(back.samples[i].targets == data.samples[i].targets);
  }
  CHECK_THROWS_AS(TrainingSet::from_csv("v_desirability\n0.1\n"), ParseError);
  CHECK_THROWS_AS(TrainingSet::from_csv("# emotive-dataset v2\n"), VersionMismatch);
  TrainingSet bad = data;
  bad.samples[3].targets[0] = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = data;
  bad.samples[3].targets.pop_back();
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("divergent learning rate is reported") {
  const EmotionCatalog cat;
  const auto data = synthesize_planted(random_model(dense_topology(cat), 0.1, 1), cat, 200, 2);
  SgdParams p;
  p.eta0 = 1e6;
  p.lr_decay = 0;
  CHECK_THROWS_AS(sgd_train(data, WeightModel(dense_topology(cat)), p), TrainingDiverged);
}
