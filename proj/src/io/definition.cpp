#include "evote/io/definition.hpp"

#include <charconv>
#include <map>
#include <set>

#include "evote/io/diagnostic.hpp"
#include "text.hpp"

namespace evote::io {

using tally::CandidateId;

std::string_view name(Method method) {
  switch (method) {
    case Method::Score: return "score";
    case Method::Irv: return "irv";
    case Method::Borda: return "borda";
    case Method::Stv: return "stv";
  }
  return "?";
}

std::optional<Method> parseMethod(std::string_view text) {
  for (Method m : {Method::Score, Method::Irv, Method::Borda, Method::Stv}) {
    if (text == name(m)) return m;
  }
  return std::nullopt;
}

tally::CandidateSeq ElectionDefinition::roster() const {
  tally::CandidateSeq out;
  for (const auto &c : candidates) out.push_back(c.id);
  return out;
}

tally::CandidateSet ElectionDefinition::rosterSet() const {
  tally::CandidateSet out;
  for (const auto &c : candidates) out.insert(c.id);
  return out;
}

tally::ScoreRange ElectionDefinition::range() const { return {minScore.value_or(0), maxScore.value_or(0)}; }

bool ElectionDefinition::hasCandidate(CandidateId id) const {
  return id.value >= 1 && id.value <= candidates.size();
}

namespace {

// Keeps every score total far from int64 overflow.
constexpr std::int64_t kScoreLimit = 1'000'000'000;

enum class Subject { None, Method, Seats, MinScore, MaxScore, MaxTied, Candidate };

struct Problem {
  ErrorKind kind;
  std::string message;
  Subject subject{Subject::None};
  std::size_t candidateIndex{0};
};

bool usesParameter(Method method, Subject parameter) {
  switch (parameter) {
    case Subject::Seats: return method == Method::Stv;
    case Subject::MinScore:
    case Subject::MaxScore: return method == Method::Score;
    case Subject::MaxTied: return method == Method::Borda;
    default: return true;
  }
}

std::string_view parameterKey(Subject s) {
  switch (s) {
    case Subject::Seats: return "seats";
    case Subject::MinScore: return "min-score";
    case Subject::MaxScore: return "max-score";
    case Subject::MaxTied: return "max-tied-placements";
    default: return "";
  }
}

bool validName(std::string_view name) {
  if (name.empty() || detail::isSpace(name.front()) || detail::isSpace(name.back())) return false;
  for (char ch : name) {
    if (static_cast<unsigned char>(ch) < 0x20 || ch == 0x7f) return false;
  }
  return true;
}

std::optional<Problem> checkDefinition(const ElectionDefinition &def) {
  const std::pair<Subject, bool> present[] = {{Subject::Seats, def.seats.has_value()},
                                              {Subject::MinScore, def.minScore.has_value()},
                                              {Subject::MaxScore, def.maxScore.has_value()},
                                              {Subject::MaxTied, def.maxTiedPlacements.has_value()}};
  for (auto [param, isSet] : present) {
    bool used = usesParameter(def.method, param);
    if (isSet && !used) {
      return Problem{ErrorKind::InvalidParameter,
                     std::string(parameterKey(param)) + " does not apply to " + std::string(name(def.method)), param};
    }
    if (!isSet && used) {
      return Problem{ErrorKind::MissingParameter,
                     std::string(name(def.method)) + " requires " + std::string(parameterKey(param)), param};
    }
  }

  std::set<std::uint32_t> ids;
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < def.candidates.size(); ++i) {
    const auto &c = def.candidates[i];
    if (!validName(c.name)) {
      return Problem{ErrorKind::InvalidParameter, "candidate " + std::to_string(c.id.value) + " has an invalid name",
                     Subject::Candidate, i};
    }
    if (!ids.insert(c.id.value).second) {
      return Problem{ErrorKind::DuplicateCandidate, "candidate id " + std::to_string(c.id.value) + " listed twice",
                     Subject::Candidate, i};
    }
    if (!names.insert(c.name).second) {
      return Problem{ErrorKind::DuplicateCandidate, "candidate name '" + c.name + "' listed twice", Subject::Candidate,
                     i};
    }
  }
  if (def.candidates.empty()) return Problem{ErrorKind::MissingParameter, "at least one candidate is required"};
  for (std::size_t i = 0; i < def.candidates.size(); ++i) {
    if (!def.hasCandidate(def.candidates[i].id)) {
      return Problem{ErrorKind::InvalidParameter,
                     "candidate ids must be 1.." + std::to_string(def.candidates.size()) + ", got " +
                         std::to_string(def.candidates[i].id.value),
                     Subject::Candidate, i};
    }
  }

  if (def.seats && *def.seats > def.candidates.size()) {
    return Problem{ErrorKind::InvalidParameter,
                   "seats " + std::to_string(*def.seats) + " exceeds the " + std::to_string(def.candidates.size()) +
                       " candidates",
                   Subject::Seats};
  }
  for (auto [param, bound] : {std::pair{Subject::MinScore, def.minScore}, std::pair{Subject::MaxScore, def.maxScore}}) {
    if (bound && (*bound < -kScoreLimit || *bound > kScoreLimit)) {
      return Problem{ErrorKind::InvalidParameter,
                     std::string(parameterKey(param)) + " must lie within +/-" + std::to_string(kScoreLimit), param};
    }
  }
  if (def.minScore && def.maxScore && *def.minScore > *def.maxScore) {
    return Problem{ErrorKind::InvalidParameter, "min-score exceeds max-score", Subject::MinScore};
  }
  return std::nullopt;
}

}  // namespace

void validateDefinition(const ElectionDefinition &definition) {
  if (auto problem = checkDefinition(definition)) {
    throw ParseError({{problem->kind, 0, 0, problem->message}});
  }
}

ElectionDefinition parseElection(std::string_view text) {
  ElectionDefinition def;
  bool haveMethod = false;
  std::map<Subject, std::size_t> paramLines;
  std::vector<std::size_t> candidateLines;
  auto fail = [](ErrorKind kind, std::size_t line, std::size_t column, std::string message) {
    throw ParseError({{kind, line, column, std::move(message)}});
  };

  detail::forEachLine(text, [&](std::size_t lineNo, std::string_view line) {
    std::size_t start = detail::skipSpace(line, 0);
    if (start == line.size() || line[start] == '#') return;
    auto colon = line.find(':', start);
    if (colon == std::string_view::npos) fail(ErrorKind::SyntaxError, lineNo, start + 1, "expected 'key: value'");
    std::string_view key = detail::trim(line.substr(start, colon - start));
    std::size_t valueStart = detail::skipSpace(line, colon + 1);
    std::string_view value = detail::trim(line.substr(valueStart));
    const std::size_t column = valueStart + 1;

    if (key == "method") {
      if (haveMethod) fail(ErrorKind::InvalidParameter, lineNo, start + 1, "method given twice");
      auto m = parseMethod(value);
      if (!m) fail(ErrorKind::InvalidParameter, lineNo, column, "unknown method '" + std::string(value) + "'");
      def.method = *m;
      haveMethod = true;
      paramLines[Subject::Method] = lineNo;
    } else if (key == "candidate") {
      std::size_t idEnd = 0;
      while (idEnd < value.size() && !detail::isSpace(value[idEnd])) ++idEnd;
      auto id = detail::parseInt<std::uint32_t>(value.substr(0, idEnd));
      if (!id || *id == 0) fail(ErrorKind::SyntaxError, lineNo, column, "expected a candidate id >= 1");
      std::string_view candidateName = detail::trim(value.substr(idEnd));
      if (candidateName.empty()) fail(ErrorKind::SyntaxError, lineNo, column + idEnd, "expected a candidate name");
      def.candidates.push_back({CandidateId(*id), std::string(candidateName)});
      candidateLines.push_back(lineNo);
    } else {
      Subject param = key == "seats"                 ? Subject::Seats
                      : key == "min-score"           ? Subject::MinScore
                      : key == "max-score"           ? Subject::MaxScore
                      : key == "max-tied-placements" ? Subject::MaxTied
                                                     : Subject::None;
      if (param == Subject::None) fail(ErrorKind::SyntaxError, lineNo, start + 1, "unknown key '" + std::string(key) + "'");
      if (paramLines.contains(param)) {
        fail(ErrorKind::InvalidParameter, lineNo, start + 1, std::string(key) + " given twice");
      }
      paramLines[param] = lineNo;
      if (param == Subject::MinScore || param == Subject::MaxScore) {
        auto v = detail::parseInt<std::int64_t>(value);
        if (!v) fail(ErrorKind::SyntaxError, lineNo, column, "expected an integer");
        (param == Subject::MinScore ? def.minScore : def.maxScore) = *v;
      } else {
        auto v = detail::parseInt<std::size_t>(value);
        if (!v) fail(ErrorKind::SyntaxError, lineNo, column, "expected a non-negative integer");
        (param == Subject::Seats ? def.seats : def.maxTiedPlacements) = *v;
      }
    }
  });

  if (!haveMethod) fail(ErrorKind::MissingParameter, 0, 0, "method is required");
  if (auto problem = checkDefinition(def)) {
    std::size_t line = 0;
    if (problem->subject == Subject::Candidate) {
      line = candidateLines[problem->candidateIndex];
    } else if (auto it = paramLines.find(problem->subject); it != paramLines.end()) {
      line = it->second;
    }
    fail(problem->kind, line, line ? 1 : 0, problem->message);
  }
  return def;
}

std::string serializeElection(const ElectionDefinition &definition) {
  std::string out = "method: " + std::string(name(definition.method)) + "\n";
  if (definition.seats) out += "seats: " + std::to_string(*definition.seats) + "\n";
  if (definition.minScore) out += "min-score: " + std::to_string(*definition.minScore) + "\n";
  if (definition.maxScore) out += "max-score: " + std::to_string(*definition.maxScore) + "\n";
  if (definition.maxTiedPlacements) {
    out += "max-tied-placements: " + std::to_string(*definition.maxTiedPlacements) + "\n";
  }
  for (const auto &c : definition.candidates) {
    out += "candidate: " + std::to_string(c.id.value) + " " + c.name + "\n";
  }
  return out;
}

nlohmann::ordered_json definitionToJson(const ElectionDefinition &definition) {
  nlohmann::ordered_json out;
  out["method"] = name(definition.method);
  if (definition.seats) out["seats"] = *definition.seats;
  if (definition.minScore) out["minScore"] = *definition.minScore;
  if (definition.maxScore) out["maxScore"] = *definition.maxScore;
  if (definition.maxTiedPlacements) out["maxTiedPlacements"] = *definition.maxTiedPlacements;
  out["candidates"] = nlohmann::ordered_json::array();
  for (const auto &c : definition.candidates) out["candidates"].push_back({{"id", c.id.value}, {"name", c.name}});
  return out;
}

ElectionDefinition definitionFromJson(const nlohmann::json &json) {
  auto fail = [](ErrorKind kind, std::string message) { throw ParseError({{kind, 0, 0, std::move(message)}}); };
  if (!json.is_object()) fail(ErrorKind::SyntaxError, "definition must be a JSON object");

  ElectionDefinition def;
  bool haveMethod = false;
  for (const auto &[key, value] : json.items()) {
    if (key == "method") {
      auto m = value.is_string() ? parseMethod(value.get<std::string>()) : std::nullopt;
      if (!m) fail(ErrorKind::InvalidParameter, "method must be one of score, irv, borda, stv");
      def.method = *m;
      haveMethod = true;
    } else if (key == "seats" || key == "maxTiedPlacements") {
      if (!value.is_number_unsigned()) fail(ErrorKind::SyntaxError, key + " must be a non-negative integer");
      (key == "seats" ? def.seats : def.maxTiedPlacements) = value.get<std::size_t>();
    } else if (key == "minScore" || key == "maxScore") {
      if (!value.is_number_integer()) fail(ErrorKind::SyntaxError, key + " must be an integer");
      (key == "minScore" ? def.minScore : def.maxScore) = value.get<std::int64_t>();
    } else if (key == "candidates") {
      if (!value.is_array()) fail(ErrorKind::SyntaxError, "candidates must be an array");
      for (const auto &entry : value) {
        if (entry.is_string()) {
          def.candidates.push_back(
              {CandidateId(static_cast<std::uint32_t>(def.candidates.size() + 1)), entry.get<std::string>()});
          continue;
        }
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("name") || entry.size() != 2 ||
            !entry["id"].is_number_unsigned() || !entry["name"].is_string() ||
            entry["id"].get<std::uint64_t>() > UINT32_MAX) {
          fail(ErrorKind::SyntaxError, "a candidate is a name or {\"id\": n, \"name\": \"...\"}");
        }
        def.candidates.push_back(
            {CandidateId(entry["id"].get<std::uint32_t>()), entry["name"].get<std::string>()});
      }
    } else {
      fail(ErrorKind::SyntaxError, "unknown field '" + key + "'");
    }
  }
  if (!haveMethod) fail(ErrorKind::MissingParameter, "method is required");
  validateDefinition(def);
  return def;
}

}  // namespace evote::io
