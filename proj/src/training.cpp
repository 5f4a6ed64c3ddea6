#include "emotive/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "emotive/errors.hpp"
#include "io_util.hpp"

namespace emotive {

namespace {

constexpr std::string_view kDatasetHeader = "# emotive-dataset v1";

bool in_range(AppraisalVariable v, double x) {
  const bool unit = v == AppraisalVariable::familiarity || v == AppraisalVariable::unexpectedness;
  return unit ? (x >= 0.0 && x <= 1.0) : (x >= -1.0 && x <= 1.0);
}

bool factor_in_range(std::size_t x, double value) {
  return x == static_cast<std::size_t>(Factor::mood) ? (value >= -1.0 && value <= 1.0)
                                                     : (value >= 0.0 && value <= 1.0);
}

std::string check_sample(const TrainingSample& s, std::size_t n_emotions) {
  for (auto v : all_appraisal_variables())
    if (!in_range(v, s.appraisals[static_cast<std::size_t>(v)]))
      return "appraisal '" + std::string(to_string(v)) + "' out of range";
  for (std::size_t x = 0; x < kFactorCount; ++x)
    if (!factor_in_range(x, s.factors[x]))
      return "factor '" + std::string(to_string(static_cast<Factor>(x))) + "' out of range";
  if (s.targets.size() != n_emotions) return "wrong number of targets";
  for (double e : s.targets)
    if (!(e >= -1.0 && e <= 1.0)) return "target outside [-1, 1]";
  return {};
}

// Link indices grouped by dataset emotion.
std::vector<std::vector<std::size_t>> links_by_emotion(const WeightModel& model,
                                                       const TrainingSet& set) {
  std::vector<std::vector<std::size_t>> out(set.emotions.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    auto it = std::find(set.emotions.begin(), set.emotions.end(), model.links()[i].emotion);
    if (it != set.emotions.end()) out[static_cast<std::size_t>(it - set.emotions.begin())].push_back(i);
  }
  return out;
}

double predict(const WeightModel& model, const std::vector<std::size_t>& links,
               const TrainingSample& s) {
  double e = 0.0;
  for (auto i : links) {
    const auto& f = model.factors_at(i);
    double w = 0.0;
    for (std::size_t x = 0; x < kFactorCount; ++x) w += f[x] * s.factors[x];
    e += w * s.appraisals[static_cast<std::size_t>(model.links()[i].variable)];
  }
  return e;
}

double loss_with(const WeightModel& model, const std::vector<std::vector<std::size_t>>& groups,
                 const TrainingSet& set) {
  if (set.samples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : set.samples)
    for (std::size_t l = 0; l < groups.size(); ++l) {
      const double r = s.targets[l] - predict(model, groups[l], s);
      total += r * r;
    }
  return total / static_cast<double>(set.samples.size());
}

}  // namespace

void TrainingSet::validate() const {
  if (emotions.empty()) throw DomainError("dataset has no emotion columns");
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (auto err = check_sample(samples[i], emotions.size()); !err.empty())
      throw DomainError("sample #" + std::to_string(i) + ": " + err);
}

std::string TrainingSet::to_csv() const {
  std::string out(kDatasetHeader);
  out += "\n";
  std::vector<std::string> cols;
  for (auto v : all_appraisal_variables()) cols.push_back("v_" + std::string(to_string(v)));
  for (std::size_t x = 0; x < kFactorCount; ++x)
    cols.push_back("m_" + std::string(to_string(static_cast<Factor>(x))));
  for (const auto& e : emotions) cols.push_back("e_" + e);
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& s : samples) {
    std::string row;
    for (double v : s.appraisals) row += detail::format_double(v) + ",";
    for (double m : s.factors) row += detail::format_double(m) + ",";
    for (double e : s.targets) row += detail::format_double(e) + ",";
    row.back() = '\n';
    out += row;
  }
  return out;
}

TrainingSet TrainingSet::from_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty dataset");
  ++lineno;
  if (const auto first = detail::trim(line); first != kDatasetHeader) {
    if (first.rfind("# emotive-dataset", 0) == 0)
      throw VersionMismatch(source + ": unsupported dataset version '" + std::string(first) + "'");
    throw ParseError(source, 1, "first line must be '" + std::string(kDatasetHeader) + "'");
  }

  TrainingSet set;
  // Column -> slot: 0..6 appraisal, 7..12 factor, 13.. target.
  std::vector<std::size_t> slot;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = detail::split_csv(t);
    if (!header) {
      std::array<bool, kAppraisalVariableCount + kFactorCount> seen{};
      for (const auto& name : fields) {
        try {
          if (name.starts_with("v_")) {
            auto v = static_cast<std::size_t>(parse_appraisal_variable(name.substr(2)));
            slot.push_back(v);
            seen[v] = true;
          } else if (name.starts_with("m_")) {
            auto x = static_cast<std::size_t>(parse_factor(name.substr(2)));
            slot.push_back(kAppraisalVariableCount + x);
            seen[kAppraisalVariableCount + x] = true;
          } else if (name.starts_with("e_") && name.size() > 2) {
            slot.push_back(kAppraisalVariableCount + kFactorCount + set.emotions.size());
            set.emotions.push_back(name.substr(2));
          } else {
            throw DomainError("unknown column '" + name + "'");
          }
        } catch (const DomainError& e) {
          throw ParseError(source, lineno, e.what());
        }
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw ParseError(source, lineno, "header must name every v_<variable> and m_<factor> column");
      if (set.emotions.empty()) throw ParseError(source, lineno, "header has no e_<emotion> column");
      header = true;
      continue;
    }
    if (fields.size() != slot.size())
      throw ParseError(source, lineno, "expected " + std::to_string(slot.size()) + " fields, got " +
                                           std::to_string(fields.size()));
    TrainingSample s;
    s.targets.resize(set.emotions.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const double v = detail::parse_number(fields[c], source, lineno, "column " + std::to_string(c + 1));
      const auto k = slot[c];
      if (k < kAppraisalVariableCount)
        s.appraisals[k] = v;
      else if (k < kAppraisalVariableCount + kFactorCount)
        s.factors[k - kAppraisalVariableCount] = v;
      else
        s.targets[k - kAppraisalVariableCount - kFactorCount] = v;
    }
    if (auto err = check_sample(s, set.emotions.size()); !err.empty())
      throw ParseError(source, lineno, err);
    set.samples.push_back(std::move(s));
  }
  if (!header) throw ParseError(source, 0, "missing column header");
  return set;
}

void TrainingSet::save(const std::filesystem::path& path) const { detail::write_file(path, to_csv()); }

TrainingSet TrainingSet::load(const std::filesystem::path& path) {
  return from_csv(detail::read_file(path), path.string());
}

double linear_prediction(const WeightModel& model, std::string_view emotion,
                         const TrainingSample& sample) {
  std::vector<std::size_t> links;
  for (std::size_t i = 0; i < model.size(); ++i)
    if (model.links()[i].emotion == emotion) links.push_back(i);
  return predict(model, links, sample);
}

double squared_error(const WeightModel& model, std::string_view emotion,
                     const TrainingSample& sample, double target) {
  const double r = target - linear_prediction(model, emotion, sample);
  return r * r;
}

FactorWeights update_direction(const WeightModel& model, std::size_t link,
                               const TrainingSample& sample, double target) {
  const auto& l = model.links().at(link);
  const double r = target - linear_prediction(model, l.emotion, sample);
  const double v = sample.appraisals[static_cast<std::size_t>(l.variable)];
  FactorWeights d{};
  for (std::size_t x = 0; x < kFactorCount; ++x) d[x] = r * sample.factors[x] * v;
  return d;
}

double dataset_loss(const WeightModel& model, const TrainingSet& set) {
  return loss_with(model, links_by_emotion(model, set), set);
}

double dataset_rmse(const WeightModel& model, const TrainingSet& set) {
  if (set.samples.empty() || set.emotions.empty()) return 0.0;
  return std::sqrt(dataset_loss(model, set) / static_cast<double>(set.emotions.size()));
}

TrainingResult sgd_train(const TrainingSet& set, const WeightModel& initial,
                         const SgdParams& params) {
  if (set.samples.empty()) throw DomainError("training set is empty");
  if (!(params.eta0 > 0.0)) throw DomainError("eta0 must be > 0");
  if (params.lr_decay < 0.0) throw DomainError("learning-rate decay must be >= 0");
  if (params.epochs < 1) throw DomainError("epochs must be >= 1");
  set.validate();

  TrainingResult result{initial, 0.0, 0, {}};
  auto& model = result.model;
  const auto groups = links_by_emotion(model, set);

  std::vector<std::size_t> order(set.samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(params.seed);
  std::vector<double> residual(set.emotions.size());

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (auto idx : order) {
      const auto& s = set.samples[idx];
      const double eta = params.eta0 / (1.0 + params.lr_decay * static_cast<double>(result.steps));
      for (std::size_t l = 0; l < groups.size(); ++l) residual[l] = s.targets[l] - predict(model, groups[l], s);
      for (std::size_t l = 0; l < groups.size(); ++l) {
        for (auto i : groups[l]) {
          const double g = eta * residual[l] * s.appraisals[static_cast<std::size_t>(model.links()[i].variable)];
          auto& f = model.factors_at(i);
          for (std::size_t x = 0; x < kFactorCount; ++x) f[x] += g * s.factors[x];
        }
      }
      ++result.steps;
    }
    const double loss = loss_with(model, groups, set);
    if (!std::isfinite(loss))
      throw TrainingDiverged("loss became non-finite in epoch " + std::to_string(epoch + 1) +
                             " (eta0 " + detail::format_double(params.eta0) + ")");
    result.epoch_loss.push_back(loss);
  }
  result.final_loss = result.epoch_loss.back();
  return result;
}

std::pair<TrainingSet, TrainingSet> split_holdout(const TrainingSet& set, double fraction,
                                                  std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw DomainError("hold-out fraction outside [0, 1)");
  std::vector<std::size_t> order(set.samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto held = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(order.size())));
  TrainingSet train{set.emotions, {}}, test{set.emotions, {}};
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < order.size() - held ? train : test).samples.push_back(set.samples[order[i]]);
  return {std::move(train), std::move(test)};
}

WeightModel random_model(std::vector<Link> topology, double scale, std::uint64_t seed) {
  WeightModel m(std::move(topology));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto& f : m.factors_at(i)) f = u(rng);
  return m;
}

TrainingSet synthesize_planted(const WeightModel& planted, const EmotionCatalog& emotions,
                               std::size_t count, std::uint64_t seed) {
  TrainingSet set;
  for (const auto& s : emotions.specs()) set.emotions.push_back(s.name);
  const auto groups = links_by_emotion(planted, set);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1.0, 1.0);

  std::size_t attempts = 0;
  while (set.samples.size() < count) {
    if (++attempts > 100 * count + 1000)
      throw DomainError("planted model too large: targets keep leaving [-1, 1]");
    TrainingSample s;
    for (auto v : all_appraisal_variables())
      s.appraisals[static_cast<std::size_t>(v)] =
          (v == AppraisalVariable::familiarity || v == AppraisalVariable::unexpectedness) ? unit(rng)
                                                                                          : sym(rng);
    for (std::size_t x = 0; x < kFactorCount; ++x)
      s.factors[x] = x == static_cast<std::size_t>(Factor::mood) ? sym(rng) : unit(rng);
    s.targets.resize(set.emotions.size());
    bool ok = true;
    for (std::size_t l = 0; l < groups.size(); ++l) {
      s.targets[l] = predict(planted, groups[l], s);
      ok = ok && std::abs(s.targets[l]) <= 1.0;
    }
    if (ok) set.samples.push_back(std::move(s));
  }
  return set;
}

}  // namespace emotive
