#include "serialization.hpp"

#include "emotive/errors.hpp"

namespace emotive::detail {

namespace {

template <typename F>
auto guarded(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where, 0, e.what());
  } catch (const DomainError& e) {
    throw ParseError(where, 0, e.what());
  }
}

}  // namespace

Json event_to_json(const EventRecord& e) {
  Json j;
  j["source"] = e.source;
  j["action"] = e.action.name;
  j["valence"] = std::string(to_string(e.action.valence));
  j["degree"] = e.action.degree;
  j["target"] = e.target;
  j["timestamp"] = e.timestamp;
  auto& info = j["other_info"] = Json::object();
  for (const auto& [k, v] : e.other_info) info[k] = v;
  return j;
}

EventRecord event_from_json(const Json& j, const std::string& where) {
  return guarded(where, [&] {
    EventRecord e;
    e.source = j.at("source").get<std::string>();
    e.action.name = j.at("action").get<std::string>();
    e.action.valence = parse_valence(j.at("valence").get<std::string>());
    e.action.degree = j.at("degree").get<double>();
    e.target = j.at("target").get<std::string>();
    e.timestamp = j.at("timestamp").get<std::int64_t>();
    if (auto it = j.find("other_info"); it != j.end())
      for (const auto& [k, v] : it->items()) e.other_info[k] = v.get<double>();
    validate(e.action);
    if (e.source.empty() || e.target.empty()) throw DomainError("empty source or target");
    return e;
  });
}

Json goal_to_json(const GoalNode& n) {
  Json j;
  j["label"] = n.label;
  j["target"] = n.target ? Json(*n.target) : Json(nullptr);
  j["degree"] = n.degree;
  j["kind"] = std::string(to_string(n.kind));
  auto& children = j["children"] = Json::array();
  for (const auto& c : n.children) children.push_back(goal_to_json(c));
  return j;
}

GoalNode goal_from_json(const Json& j, const std::string& where) {
  return guarded(where, [&] {
    GoalNode n;
    n.label = j.at("label").get<std::string>();
    if (auto t = j.find("target"); t != j.end() && !t->is_null()) n.target = t->get<std::string>();
    n.degree = j.value("degree", 0.0);
    n.kind = parse_goal_kind(j.value("kind", std::string("R")));
    if (auto c = j.find("children"); c != j.end())
      for (std::size_t i = 0; i < c->size(); ++i)
        n.children.push_back(goal_from_json((*c)[i], where + "/" + std::to_string(i)));
    return n;
  });
}

void memory_to_json(const Memory& m, Json& into) {
  auto& goals = into["goals"] = Json::object();
  auto dump_cat = [&](GoalCategory c) {
    auto arr = Json::array();
    for (const auto& n : m.goals.category(c).children) arr.push_back(goal_to_json(n));
    return arr;
  };
  goals["self"] = dump_cat(GoalCategory::self);
  goals["other"] = dump_cat(GoalCategory::other);

  auto& standards = into["standards"] = Json::array();
  for (const auto& s : m.standards.entries())
    standards.push_back({{"subject", s.key.subject},
                         {"source", s.key.source},
                         {"target", s.key.target},
                         {"preference", std::string(to_string(s.approval.preference))},
                         {"approval", s.approval.degree}});

  auto& attitudes = into["attitudes"] = Json::array();
  for (const auto& [name, p] : m.entities)
    attitudes.push_back(
        {{"entity", name}, {"perception", p.perception}, {"familiarity", p.familiarity}});

  auto& history = into["history"] = Json::array();
  for (const auto& e : m.history.events()) history.push_back(event_to_json(e));
}

Memory memory_from_json(const Json& j, const std::string& source) {
  Memory m;
  if (auto g = j.find("goals"); g != j.end()) {
    for (auto [key, cat] : {std::pair{"self", GoalCategory::self}, std::pair{"other", GoalCategory::other}}) {
      if (auto arr = g->find(key); arr != g->end())
        for (std::size_t i = 0; i < arr->size(); ++i)
          m.goals.add(cat, goal_from_json((*arr)[i], source + ": goals/" + key + "/" + std::to_string(i)));
    }
  }
  if (auto s = j.find("standards"); s != j.end()) {
    for (std::size_t i = 0; i < s->size(); ++i) {
      const auto where = source + ": standards/" + std::to_string(i);
      guarded(where, [&] {
        const auto& e = (*s)[i];
        StandardKey key{e.at("subject").get<std::string>(), e.at("source").get<std::string>(),
                        e.at("target").get<std::string>()};
        if (m.standards.find(key)) throw DomainError("duplicate standard");
        m.standards.set(key, Approval{parse_preference(e.at("preference").get<std::string>()),
                                      e.at("approval").get<double>()});
        return 0;
      });
    }
  }
  if (auto a = j.find("attitudes"); a != j.end()) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      const auto where = source + ": attitudes/" + std::to_string(i);
      guarded(where, [&] {
        const auto& e = (*a)[i];
        EntityProfile p;
        p.name = e.at("entity").get<std::string>();
        p.perception = e.value("perception", 0.0);
        p.familiarity = e.value("familiarity", 1.0);
        if (!(p.perception >= -1.0 && p.perception <= 1.0))
          throw DomainError("perception outside [-1, 1]");
        if (!(p.familiarity >= 0.0 && p.familiarity <= 1.0))
          throw DomainError("familiarity outside [0, 1]");
        if (!m.entities.emplace(p.name, p).second) throw DomainError("duplicate entity");
        return 0;
      });
    }
  }
  if (auto h = j.find("history"); h != j.end()) {
    for (std::size_t i = 0; i < h->size(); ++i) {
      const auto where = source + ": history/" + std::to_string(i);
      auto e = event_from_json((*h)[i], where);
      guarded(where, [&] {
        m.history.append(std::move(e));
        return 0;
      });
    }
  }
  try {
    m.goals.validate();
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
  return m;
}

}  // namespace emotive::detail
