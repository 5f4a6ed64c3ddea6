#pragma once
// Agent memory: goals, standards, attitudes and the event history that
// appraisal consults.

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emotive/core.hpp"

namespace emotive {

// Active-pursuit, interest and replenishment goals. Only the representation
// differs; all kinds are scored the same way.
enum class GoalKind { active, interest, replenishment };

std::string_view to_string(GoalKind k);
GoalKind parse_goal_kind(std::string_view text);

struct GoalNode {
  std::string label;                  // action or emotion name
  std::optional<std::string> target;  // nullopt for category nodes
  double degree = 0.0;                // signed expected utility, [-1, 1]
  GoalKind kind = GoalKind::replenishment;
  std::vector<GoalNode> children;

  friend bool operator==(const GoalNode&, const GoalNode&) = default;
};

enum class GoalCategory { self, other };

// Rooted at (Root, NULL) whose only children are (Self_goal, NULL) and
// (Other_goal, NULL). Children own their subtrees, so the structure cannot
// share nodes or form cycles.
class GoalTree {
 public:
  GoalTree();

  GoalNode& add(GoalCategory category, GoalNode node);

  const GoalNode& root() const { return root_; }
  const GoalNode& category(GoalCategory c) const;
  GoalNode& category(GoalCategory c);

  // Degrees in range and no scorable node without a label.
  void validate() const;
  std::size_t size() const;

  friend bool operator==(const GoalTree&, const GoalTree&) = default;

 private:
  GoalNode root_;
};

struct RelevantGoal {
  const GoalNode* node = nullptr;
  int height = 0;  // edges from the root; root's children are at 1
};

/// Scorable goals whose target is the event's target, in pre-order.
std::vector<RelevantGoal> relevant_goals(const EventRecord& event, const GoalTree& tree);

enum class Preference { yes, no };

std::string_view to_string(Preference p);
Preference parse_preference(std::string_view text);

struct Approval {
  Preference preference = Preference::yes;
  double degree = 0.5;  // (0, 1]

  double signed_degree() const { return preference == Preference::yes ? degree : -degree; }
  friend bool operator==(const Approval&, const Approval&) = default;
};

struct StandardKey {
  std::string subject;  // action or emotion
  std::string source;
  std::string target;

  auto operator<=>(const StandardKey&) const = default;
  bool operator==(const StandardKey&) const = default;
};

struct StandardEntry {
  StandardKey key;
  Approval approval;
};

// At most one approval per (subject, source, target).
class StandardSet {
 public:
  const Approval* find(const StandardKey& key) const;
  // Stored approval, or the neutral one when absent. Never inserts.
  Approval get_or(const StandardKey& key, const Approval& neutral) const;
  // Stored approval; inserts `neutral` first if absent.
  const Approval& lookup(const StandardKey& key, const Approval& neutral);
  void set(const StandardKey& key, const Approval& approval);

  // Entries for one subject whose target matches, in key order.
  std::vector<StandardEntry> matching(std::string_view subject, std::string_view target) const;
  std::vector<StandardEntry> entries() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const StandardSet&, const StandardSet&) = default;

 private:
  std::map<StandardKey, Approval> entries_;
};

struct AttitudeEntry {
  std::string entity;
  double perception = 0.0;
};

// Append-only, timestamp-ordered.
class EventHistory {
 public:
  void append(EventRecord event);
  const std::vector<EventRecord>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  friend bool operator==(const EventHistory&, const EventHistory&) = default;

 private:
  std::vector<EventRecord> events_;
};

struct PastImpacts {
  double positive = 0.0;  // >= 0
  double negative = 0.0;  // <= 0
};

PastImpacts past_impacts(std::string_view source, std::string_view target, const EventHistory& history);

// Mean action degree from source to target; 0 when they never interacted.
double average_past_degree(std::string_view source, std::string_view target,
                           const EventHistory& history);

struct MemoryParams {
  double perception_rate = 0.2;   // EMA weight of the newest action degree
  double familiarity_step = 0.1;  // distance removed per interaction
  double standard_rate = 0.1;     // shift of emotion standards per unit degree
  double approval_floor = 1e-3;   // smallest approval degree after an update
  Approval neutral{Preference::yes, 0.5};
};

struct Memory {
  GoalTree goals;
  StandardSet standards;
  std::map<std::string, EntityProfile> entities;
  EventHistory history;

  // Stored profile, or a stranger profile for unknown names.
  EntityProfile profile(const std::string& name) const;
  std::vector<AttitudeEntry> attitudes() const;

  const Approval& lookup_standard(const std::string& subject, const std::string& source,
                                  const std::string& target, const MemoryParams& params = {});

  // Records the event and adapts attitudes, familiarity and the agent's
  // standards for expressing negative emotions toward the event's source.
  void update_after_event(const EventRecord& event, const EmotionCatalog& emotions,
                          const MemoryParams& params = {});

  // Throws DomainError when any stored value leaves its declared range.
  void validate() const;

  std::string to_text() const;
  static Memory from_text(const std::string& text, const std::string& source = "<memory>");
  void save(const std::filesystem::path& path) const;
  static Memory load(const std::filesystem::path& path);

  friend bool operator==(const Memory&, const Memory&) = default;
};

}  // namespace emotive
