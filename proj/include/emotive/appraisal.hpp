#pragma once
// Cognitive appraisal: seven variables computed from one immutable memory
// snapshot. Every function here is pure.

#include <span>

#include "emotive/core.hpp"
#include "emotive/memory.hpp"

namespace emotive {

// range_gap / (1 + exp(-slope * (x - midpoint))) + offset
struct LogisticParams {
  double range_gap = 1.0;
  double slope = 10.0;
  double midpoint = 0.5;
  double offset = 0.0;

  static constexpr LogisticParams unit() { return {1.0, 10.0, 0.5, 0.0}; }
  static constexpr LogisticParams signed_unit() { return {2.0, 5.0, 0.0, -1.0}; }

  friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

double logistic(double x, const LogisticParams& p);

enum class AppraisalRange { unit, signed_unit };  // [0,1] and [-1,1]

double normalize_appraisal(double value, AppraisalRange range);

double goal_conduciveness(double goal_degree, double event_degree, int height);

// Mean conduciveness over relevant goals; 0 when none is relevant.
double desirability(const EventRecord& event, const GoalTree& tree);

double praiseworthiness(double event_degree, const Approval& standard);

inline double appealingness(const EntityProfile& p) { return p.perception; }
inline double familiarity_appraisal(const EntityProfile& p) { return p.familiarity; }

/// Raw deservingness of the event's target; may leave [-1, 1].
double deservingness(const EventRecord& event, const EventHistory& history);

/// Raw |d_avg - d_e|, in [0, 2].
inline double unexpectedness(double event_degree, double average_degree) {
  return std::abs(average_degree - event_degree);
}

struct AppraisalParams {
  LogisticParams unit = LogisticParams::unit();
  LogisticParams signed_unit = LogisticParams::signed_unit();
  Approval neutral_standard{Preference::yes, 0.5};

  friend bool operator==(const AppraisalParams&, const AppraisalParams&) = default;
};

/// All seven variables for `event` with action degree `d_e`. Deservingness
/// and unexpectedness are squashed into range; the rest are in range by
/// construction and pass through.
AppraisalVector appraise(const EventRecord& event, const Memory& memory, double d_e,
                         const AppraisalParams& params = {});

// Same, evaluating the variables in the given order.
AppraisalVector appraise_in_order(const EventRecord& event, const Memory& memory, double d_e,
                                  std::span<const AppraisalVariable> order,
                                  const AppraisalParams& params = {});

}  // namespace emotive
