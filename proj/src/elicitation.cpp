#include "emotive/elicitation.hpp"

#include <sstream>

#include "emotive/errors.hpp"
#include "io_util.hpp"

namespace emotive {

void ActionScoreTable::add(std::string context, std::string action, ActionScore score) {
  if (context.empty() || action.empty()) throw DomainError("empty context or action name");
  validate(ActionSpec{action, score.valence, score.degree});
  if (!scores_.emplace(std::pair{std::move(context), std::move(action)}, score).second)
    throw DomainError("duplicate action score");
}

const ActionScore* ActionScoreTable::find(std::string_view context, std::string_view action) const {
  auto it = scores_.find(std::pair{std::string(context), std::string(action)});
  return it == scores_.end() ? nullptr : &it->second;
}

ActionScoreTable ActionScoreTable::from_csv(const std::string& text, const std::string& source) {
  ActionScoreTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = detail::split_csv(t);
    if (!header) {
      if (fields != std::vector<std::string>{"context", "action", "valence", "degree"})
        throw ParseError(source, lineno, "expected header 'context,action,valence,degree'");
      header = true;
      continue;
    }
    if (fields.size() != 4)
      throw ParseError(source, lineno, "expected 4 fields, got " + std::to_string(fields.size()));
    try {
      const auto valence = parse_valence(fields[2]);
      const double degree = detail::parse_number(fields[3], source, lineno, "degree");
      table.add(fields[0], fields[1], {valence, degree});
    } catch (const DomainError& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  if (!header) throw ParseError(source, 0, "missing header");
  return table;
}

ActionScoreTable ActionScoreTable::load(const std::filesystem::path& path) {
  return from_csv(detail::read_file(path), path.string());
}

std::string ActionScoreTable::to_csv() const {
  std::string out = "context,action,valence,degree\n";
  for (const auto& [key, s] : scores_)
    out += key.first + "," + key.second + "," + std::string(to_string(s.valence)) + "," +
           detail::format_double(s.degree) + "\n";
  return out;
}

const ActionScoreTable& ActionScoreTable::shipped() {
  static const ActionScoreTable table = [] {
    ActionScoreTable t;
    const std::string ctx(kDefaultContext);
    t.add(ctx, "Greet", {Valence::positive, 0.31});
    t.add(ctx, "StartConversation", {Valence::positive, 0.28});
    t.add(ctx, "Ignore", {Valence::negative, -0.17});
    t.add(ctx, "Kick", {Valence::negative, -0.74});
    return t;
  }();
  return table;
}

ActionSpec elicit_action(std::string_view action, std::string_view context,
                         const ActionScoreTable& table) {
  const auto* s = table.find(context, action);
  if (!s) throw UnscoredAction(std::string(context), std::string(action));
  return ActionSpec{std::string(action), s->valence, s->degree};
}

double elicit(const EventRecord& event, std::string_view context, const ActionScoreTable& table) {
  return elicit_action(event.action.name, context, table).degree;
}

}  // namespace emotive
