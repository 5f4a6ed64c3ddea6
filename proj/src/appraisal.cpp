#include "emotive/appraisal.hpp"

#include <cmath>

#include "emotive/errors.hpp"

namespace emotive {

double logistic(double x, const LogisticParams& p) {
  return p.range_gap / (1.0 + std::exp(-p.slope * (x - p.midpoint))) + p.offset;
}

double normalize_appraisal(double value, AppraisalRange range) {
  return logistic(value, range == AppraisalRange::unit ? LogisticParams::unit()
                                                       : LogisticParams::signed_unit());
}

double goal_conduciveness(double dg, double de, int height) {
  if (height < 1) throw DomainError("goal conduciveness: height must be >= 1");
  const double h = static_cast<double>(height);
  const double gap = std::abs(std::abs(dg) - std::abs(de));
  if (dg == 0.0 && de == 0.0) return 1.0;
  if (dg == 0.0) return -std::abs(de) / h;
  if (de == 0.0) return -std::abs(dg) / h;
  if ((dg > 0.0) == (de > 0.0)) return 1.0 - gap / h;
  return gap / h - 1.0;
}

double desirability(const EventRecord& event, const GoalTree& tree) {
  const auto goals = relevant_goals(event, tree);
  if (goals.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& g : goals) sum += goal_conduciveness(g.node->degree, event.action.degree, g.height);
  return sum / static_cast<double>(goals.size());
}

double praiseworthiness(double de, const Approval& standard) {
  const bool yes = standard.preference == Preference::yes;
  const double da = standard.degree;
  if (de < 0.0) return yes ? -(de * da) : de * da;
  if (de > 0.0) return yes ? de * da : -(de * da);
  return yes ? da : -da;
}

double deservingness(const EventRecord& event, const EventHistory& history) {
  const double de = event.action.degree;
  if (event.target == kSelf) return de;
  const auto toward_source = past_impacts(event.target, event.source, history);
  const auto toward_self = past_impacts(event.target, kSelf, history);
  const double past = (toward_source.positive + toward_source.negative) +
                      (toward_self.positive + toward_self.negative);
  return event.action.valence == Valence::positive ? de + past : de - past;
}

AppraisalVector appraise_in_order(const EventRecord& event, const Memory& memory, double d_e,
                                  std::span<const AppraisalVariable> order,
                                  const AppraisalParams& params) {
  EventRecord scored = event;
  scored.action.degree = d_e;
  const auto source = memory.profile(event.source);

  AppraisalVector out;
  for (auto var : order) {
    switch (var) {
      case AppraisalVariable::goal_conduciveness:
        out.goal_conduciveness.clear();
        for (const auto& g : relevant_goals(scored, memory.goals))
          out.goal_conduciveness.push_back(
              {g.node->label, *g.node->target, g.height, goal_conduciveness(g.node->degree, d_e, g.height)});
        break;
      case AppraisalVariable::desirability:
        out.desirability = desirability(scored, memory.goals);
        break;
      case AppraisalVariable::praiseworthiness:
        out.praiseworthiness = praiseworthiness(
            d_e, memory.standards.get_or({event.action.name, event.source, event.target},
                                         params.neutral_standard));
        break;
      case AppraisalVariable::appealingness:
        out.appealingness = appealingness(source);
        break;
      case AppraisalVariable::deservingness:
        out.deservingness = logistic(deservingness(scored, memory.history), params.signed_unit);
        break;
      case AppraisalVariable::familiarity:
        out.familiarity = familiarity_appraisal(source);
        break;
      case AppraisalVariable::unexpectedness:
        out.unexpectedness = logistic(
            unexpectedness(d_e, average_past_degree(event.source, event.target, memory.history)),
            params.unit);
        break;
    }
  }
  return out;
}

AppraisalVector appraise(const EventRecord& event, const Memory& memory, double d_e,
                         const AppraisalParams& params) {
  return appraise_in_order(event, memory, d_e, all_appraisal_variables(), params);
}

}  // namespace emotive
