#pragma once
// First-order scoring of an action in its context.

#include <filesystem>
#include <map>
#include <string>
#include <utility>

#include "emotive/core.hpp"

namespace emotive {

inline constexpr std::string_view kDefaultContext = "default";

struct ActionScore {
  Valence valence = Valence::positive;
  double degree = 0.0;
};

// (context, action) -> signed degree. Immutable once loaded.
class ActionScoreTable {
 public:
  ActionScoreTable() = default;

  // Throws DomainError on out-of-range degree or valence/sign disagreement.
  void add(std::string context, std::string action, ActionScore score);
  const ActionScore* find(std::string_view context, std::string_view action) const;
  bool contains(std::string_view context, std::string_view action) const {
    return find(context, action) != nullptr;
  }
  std::size_t size() const { return scores_.size(); }

  // Rows of `context,action,valence,degree` after a header line.
  static ActionScoreTable from_csv(const std::string& text, const std::string& source = "<actions>");
  static ActionScoreTable load(const std::filesystem::path& path);
  std::string to_csv() const;

  // The four survey-scored actions, under the default context.
  static const ActionScoreTable& shipped();

 private:
  std::map<std::pair<std::string, std::string>, ActionScore, std::less<>> scores_;
};

/// The scored ActionSpec for the event's action. Throws UnscoredAction.
ActionSpec elicit_action(std::string_view action, std::string_view context,
                         const ActionScoreTable& table);

/// Signed degree d_e for the event's action in the given context.
double elicit(const EventRecord& event, std::string_view context, const ActionScoreTable& table);

}  // namespace emotive
