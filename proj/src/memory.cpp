#include "emotive/memory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "emotive/errors.hpp"
#include "io_util.hpp"
#include "serialization.hpp"

namespace emotive {

std::string_view to_string(GoalKind k) {
  switch (k) {
    case GoalKind::active: return "A";
    case GoalKind::interest: return "I";
    case GoalKind::replenishment: return "R";
  }
  return "R";
}

GoalKind parse_goal_kind(std::string_view text) {
  if (text == "A") return GoalKind::active;
  if (text == "I") return GoalKind::interest;
  if (text == "R") return GoalKind::replenishment;
  throw DomainError("unknown goal kind '" + std::string(text) + "' (expected A, I or R)");
}

std::string_view to_string(Preference p) { return p == Preference::yes ? "YES" : "NO"; }

Preference parse_preference(std::string_view text) {
  if (text == "YES") return Preference::yes;
  if (text == "NO") return Preference::no;
  throw DomainError("unknown preference '" + std::string(text) + "' (expected YES or NO)");
}

// ---------------------------------------------------------------------------
// Goals

GoalTree::GoalTree() {
  root_.label = "Root";
  root_.children.push_back(GoalNode{"Self_goal", std::nullopt, 0.0, GoalKind::replenishment, {}});
  root_.children.push_back(GoalNode{"Other_goal", std::nullopt, 0.0, GoalKind::replenishment, {}});
}

GoalNode& GoalTree::category(GoalCategory c) {
  return root_.children[c == GoalCategory::self ? 0 : 1];
}

const GoalNode& GoalTree::category(GoalCategory c) const {
  return root_.children[c == GoalCategory::self ? 0 : 1];
}

GoalNode& GoalTree::add(GoalCategory c, GoalNode node) {
  auto& parent = category(c);
  parent.children.push_back(std::move(node));
  return parent.children.back();
}

void GoalTree::validate() const {
  if (root_.children.size() != 2 || root_.children[0].label != "Self_goal" ||
      root_.children[1].label != "Other_goal" || root_.target || root_.children[0].target ||
      root_.children[1].target)
    throw DomainError("goal tree: root must have exactly the Self_goal and Other_goal categories");
  std::function<void(const GoalNode&)> check = [&](const GoalNode& n) {
    if (n.label.empty()) throw DomainError("goal tree: node without label");
    if (!(std::abs(n.degree) <= 1.0))
      throw DomainError("goal tree: node '" + n.label + "' degree outside [-1, 1]");
    for (const auto& c : n.children) check(c);
  };
  for (const auto& cat : root_.children)
    for (const auto& c : cat.children) check(c);
}

std::size_t GoalTree::size() const {
  std::function<std::size_t(const GoalNode&)> count = [&](const GoalNode& n) {
    std::size_t s = 1;
    for (const auto& c : n.children) s += count(c);
    return s;
  };
  return count(root_);
}

std::vector<RelevantGoal> relevant_goals(const EventRecord& event, const GoalTree& tree) {
  std::vector<RelevantGoal> out;
  std::function<void(const GoalNode&, int)> visit = [&](const GoalNode& n, int h) {
    if (n.target && *n.target == event.target) out.push_back({&n, h});
    for (const auto& c : n.children) visit(c, h + 1);
  };
  // Category nodes sit at height 1 and are never scored.
  for (const auto& cat : tree.root().children)
    for (const auto& c : cat.children) visit(c, 2);
  return out;
}

// ---------------------------------------------------------------------------
// Standards

const Approval* StandardSet::find(const StandardKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

Approval StandardSet::get_or(const StandardKey& key, const Approval& neutral) const {
  const auto* a = find(key);
  return a ? *a : neutral;
}

const Approval& StandardSet::lookup(const StandardKey& key, const Approval& neutral) {
  return entries_.try_emplace(key, neutral).first->second;
}

void StandardSet::set(const StandardKey& key, const Approval& approval) {
  if (!(approval.degree > 0.0 && approval.degree <= 1.0))
    throw DomainError("approval degree outside (0, 1] for standard '" + key.subject + "'");
  entries_[key] = approval;
}

std::vector<StandardEntry> StandardSet::matching(std::string_view subject,
                                                 std::string_view target) const {
  std::vector<StandardEntry> out;
  for (const auto& [k, a] : entries_)
    if (k.subject == subject && k.target == target) out.push_back({k, a});
  return out;
}

std::vector<StandardEntry> StandardSet::entries() const {
  std::vector<StandardEntry> out;
  out.reserve(entries_.size());
  for (const auto& [k, a] : entries_) out.push_back({k, a});
  return out;
}

// ---------------------------------------------------------------------------
// History

void EventHistory::append(EventRecord event) {
  if (!events_.empty() && event.timestamp < events_.back().timestamp)
    throw DomainError("event history: timestamp " + std::to_string(event.timestamp) +
                      " precedes " + std::to_string(events_.back().timestamp));
  if (event.source.empty() || event.target.empty())
    throw DomainError("event history: event without source or target");
  events_.push_back(std::move(event));
}

PastImpacts past_impacts(std::string_view source, std::string_view target,
                         const EventHistory& history) {
  PastImpacts pi;
  for (const auto& e : history.events()) {
    if (e.source != source || e.target != target) continue;
    if (e.action.degree > 0.0)
      pi.positive += e.action.degree;
    else
      pi.negative += e.action.degree;
  }
  return pi;
}

double average_past_degree(std::string_view source, std::string_view target,
                           const EventHistory& history) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& e : history.events()) {
    if (e.source != source || e.target != target) continue;
    sum += e.action.degree;
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Memory

EntityProfile Memory::profile(const std::string& name) const {
  auto it = entities.find(name);
  return it == entities.end() ? EntityProfile::stranger(name) : it->second;
}

std::vector<AttitudeEntry> Memory::attitudes() const {
  std::vector<AttitudeEntry> out;
  for (const auto& [name, p] : entities) out.push_back({name, p.perception});
  return out;
}

const Approval& Memory::lookup_standard(const std::string& subject, const std::string& source,
                                        const std::string& target, const MemoryParams& params) {
  return standards.lookup({subject, source, target}, params.neutral);
}

void Memory::update_after_event(const EventRecord& event, const EmotionCatalog& emotions,
                                 const MemoryParams& params) {
  const double d = event.action.degree;

  auto touch = [&](const std::string& name) -> EntityProfile& {
    return entities.try_emplace(name, EntityProfile::stranger(name)).first->second;
  };
  auto shift_perception = [&](const std::string& name) {
    if (name == kSelf) return;
    auto& p = touch(name);
    p.perception = std::clamp((1.0 - params.perception_rate) * p.perception +
                                  params.perception_rate * d,
                              -1.0, 1.0);
  };
  shift_perception(event.source);
  if (event.target != event.source) shift_perception(event.target);

  if (event.source != kSelf) {
    auto& src = touch(event.source);
    src.familiarity = std::max(0.0, src.familiarity - params.familiarity_step);
  }

  lookup_standard(event.action.name, event.source, event.target, params);

  // A hostile source makes negative emotions toward it more acceptable; a
  // friendly one less so. The signed belief flips preference at zero.
  if (event.source != kSelf) {
    for (const auto& spec : emotions.specs()) {
      if (spec.valence() != Valence::negative) continue;
      const StandardKey key{spec.name, std::string(kSelf), event.source};
      const Approval current = standards.lookup(key, params.neutral);
      const double belief = current.signed_degree() + params.standard_rate * (-d);
      Approval next = current;
      if (belief > 0.0)
        next.preference = Preference::yes;
      else if (belief < 0.0)
        next.preference = Preference::no;
      next.degree = std::clamp(std::abs(belief), params.approval_floor, 1.0);
      standards.set(key, next);
    }
  }

  history.append(event);
}

void Memory::validate() const {
  goals.validate();
  for (const auto& [k, a] : standards.entries())
    if (!(a.degree > 0.0 && a.degree <= 1.0))
      throw DomainError("standard '" + k.subject + "': approval degree outside (0, 1]");
  for (const auto& [name, p] : entities) {
    if (!(p.familiarity >= 0.0 && p.familiarity <= 1.0))
      throw DomainError("entity '" + name + "': familiarity outside [0, 1]");
    if (!(p.perception >= -1.0 && p.perception <= 1.0))
      throw DomainError("entity '" + name + "': perception outside [-1, 1]");
  }
}

std::string Memory::to_text() const {
  auto doc = detail::Json::object();
  doc["format"] = "emotive-memory";
  doc["version"] = 1;
  detail::memory_to_json(*this, doc);
  return doc.dump(2) + "\n";
}

Memory Memory::from_text(const std::string& text, const std::string& source) {
  const auto doc = detail::parse_json(text, source);
  detail::expect_header(doc, "emotive-memory", 1, source);
  return detail::memory_from_json(doc, source);
}

void Memory::save(const std::filesystem::path& path) const { detail::write_file(path, to_text()); }

Memory Memory::load(const std::filesystem::path& path) {
  return from_text(detail::read_file(path), path.string());
}

}  // namespace emotive
