#pragma once
// JSON mappings for memory records, shared by the memory snapshot, the
// engine state file and scenario files.

#include <string>

#include "emotive/memory.hpp"
#include "io_util.hpp"

namespace emotive::detail {

Json event_to_json(const EventRecord& e);
EventRecord event_from_json(const Json& j, const std::string& where);

Json goal_to_json(const GoalNode& n);
GoalNode goal_from_json(const Json& j, const std::string& where);

// Writes the "goals", "standards", "attitudes" and "history" members.
void memory_to_json(const Memory& m, Json& into);
// Reads the same members; any of them may be absent.
Memory memory_from_json(const Json& j, const std::string& source);

}  // namespace emotive::detail
