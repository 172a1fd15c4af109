#include "evote/io/ballots.hpp"

#include <set>

#include "text.hpp"

namespace evote::io {

using tally::CandidateId;

std::optional<BallotIssue> checkRanking(const tally::PreferenceBallot &ballot, const ElectionDefinition &definition) {
  if (ballot.empty() && definition.method == Method::Stv) {
    return BallotIssue{ErrorKind::EmptyBallot, "stv ballots must rank at least one candidate"};
  }
  std::set<CandidateId> seen;
  for (CandidateId c : ballot) {
    if (!definition.hasCandidate(c)) {
      return BallotIssue{ErrorKind::UnknownCandidate, "unknown candidate " + std::to_string(c.value)};
    }
    if (!seen.insert(c).second) {
      return BallotIssue{ErrorKind::DuplicateInBallot, "candidate " + std::to_string(c.value) + " ranked twice"};
    }
  }
  return std::nullopt;
}

std::optional<BallotIssue> checkScores(const tally::ScoreBallot &ballot, const ElectionDefinition &definition) {
  const auto range = definition.range();
  for (const auto &[c, score] : ballot) {
    if (!definition.hasCandidate(c)) {
      return BallotIssue{ErrorKind::UnknownCandidate, "unknown candidate " + std::to_string(c.value)};
    }
    if (score < range.minScore || score > range.maxScore) {
      return BallotIssue{ErrorKind::OutOfRangeScore, "score " + std::to_string(score) + " for candidate " +
                                                         std::to_string(c.value) + " outside " +
                                                         std::to_string(range.minScore) + ".." +
                                                         std::to_string(range.maxScore)};
    }
  }
  return std::nullopt;
}

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Field> splitFields(std::string_view line, std::size_t offset) {
  std::vector<Field> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    std::string_view raw = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::size_t lead = detail::skipSpace(raw, 0);
    out.push_back({detail::trim(raw), offset + pos + lead + 1});
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Parses one record, or returns the diagnostic for it.
struct RecordParser {
  const ElectionDefinition &def;
  std::size_t lineNo;

  Diagnostic error(ErrorKind kind, std::size_t column, std::string message) const {
    return {kind, lineNo, column, std::move(message)};
  }

  std::optional<Diagnostic> ranking(std::string_view record, std::size_t offset, tally::PreferenceBallot &out) const {
    if (record == "-") return checked(checkRanking(out, def), offset + 1);
    std::set<CandidateId> seen;
    for (const auto &field : splitFields(record, offset)) {
      auto id = detail::parseInt<std::uint32_t>(field.text);
      if (!id) return error(ErrorKind::SyntaxError, field.column, "expected a candidate id");
      CandidateId c(*id);
      if (!def.hasCandidate(c)) {
        return error(ErrorKind::UnknownCandidate, field.column, "unknown candidate " + std::to_string(*id));
      }
      if (!seen.insert(c).second) {
        return error(ErrorKind::DuplicateInBallot, field.column, "candidate " + std::to_string(*id) + " ranked twice");
      }
      out.push_back(c);
    }
    return checked(checkRanking(out, def), offset + 1);
  }

  std::optional<Diagnostic> scores(std::string_view record, std::size_t offset, tally::ScoreBallot &out) const {
    if (record == "-") return std::nullopt;
    for (const auto &field : splitFields(record, offset)) {
      auto eq = field.text.find('=');
      if (eq == std::string_view::npos) return error(ErrorKind::SyntaxError, field.column, "expected id=score");
      auto id = detail::parseInt<std::uint32_t>(detail::trim(field.text.substr(0, eq)));
      if (!id) return error(ErrorKind::SyntaxError, field.column, "expected a candidate id");
      std::string_view scoreText = detail::trim(field.text.substr(eq + 1));
      auto score = detail::parseInt<std::int64_t>(scoreText);
      const std::size_t scoreColumn = field.column + eq + 1 + detail::skipSpace(field.text.substr(eq + 1), 0);
      if (!score) return error(ErrorKind::SyntaxError, scoreColumn, "expected an integer score");
      CandidateId c(*id);
      if (!def.hasCandidate(c)) {
        return error(ErrorKind::UnknownCandidate, field.column, "unknown candidate " + std::to_string(*id));
      }
      if (out.contains(c)) {
        return error(ErrorKind::DuplicateInBallot, field.column, "candidate " + std::to_string(*id) + " scored twice");
      }
      out[c] = *score;
      if (auto issue = checkScores({{c, *score}}, def)) return error(issue->kind, scoreColumn, issue->message);
    }
    return std::nullopt;
  }

  std::optional<Diagnostic> checked(const std::optional<BallotIssue> &issue, std::size_t column) const {
    if (!issue) return std::nullopt;
    return error(issue->kind, column, issue->message);
  }
};

}  // namespace

ParsedBallots parseBallots(std::string_view text, const ElectionDefinition &definition, ParseMode mode) {
  ParsedBallots parsed;
  parsed.ballots.method = definition.method;
  bool haveHeader = false;
  std::vector<Diagnostic> problems;
  auto headerFail = [](std::size_t line, std::size_t column, std::string message) {
    throw ParseError({{ErrorKind::SyntaxError, line, column, std::move(message)}});
  };

  detail::forEachLine(text, [&](std::size_t lineNo, std::string_view line) {
    std::size_t start = detail::skipSpace(line, 0);
    if (start == line.size() || line[start] == '#') return;

    if (auto colon = line.find(':', start); colon != std::string_view::npos) {
      std::string_view key = detail::trim(line.substr(start, colon - start));
      if (key != "method") headerFail(lineNo, start + 1, "unknown header '" + std::string(key) + "'");
      if (haveHeader) headerFail(lineNo, start + 1, "method given twice");
      if (!parsed.ballots.rankings.empty() || !parsed.ballots.scores.empty() || !problems.empty()) {
        headerFail(lineNo, start + 1, "the header must precede all records");
      }
      std::string_view value = detail::trim(line.substr(colon + 1));
      auto m = parseMethod(value);
      if (!m || *m != definition.method) {
        headerFail(lineNo, detail::skipSpace(line, colon + 1) + 1,
                   "ballots for '" + std::string(value) + "' do not match a " + std::string(name(definition.method)) +
                       " election");
      }
      haveHeader = true;
      return;
    }
    if (!haveHeader) headerFail(lineNo, start + 1, "expected 'method: " + std::string(name(definition.method)) + "'");

    std::string_view record = detail::trim(line);
    RecordParser parser{definition, lineNo};
    if (isRanked(definition.method)) {
      tally::PreferenceBallot ballot;
      if (auto d = parser.ranking(record, start, ballot)) {
        problems.push_back(*d);
      } else {
        parsed.ballots.rankings.push_back(std::move(ballot));
      }
    } else {
      tally::ScoreBallot ballot;
      if (auto d = parser.scores(record, start, ballot)) {
        problems.push_back(*d);
      } else {
        parsed.ballots.scores.push_back(std::move(ballot));
      }
    }
  });

  if (!haveHeader) headerFail(0, 0, "missing 'method: " + std::string(name(definition.method)) + "' header");
  if (!problems.empty() && mode == ParseMode::Strict) throw ParseError(std::move(problems));
  parsed.diagnostics = std::move(problems);
  return parsed;
}

std::string serializeBallots(const BallotFile &ballots) {
  std::string out = "method: " + std::string(name(ballots.method)) + "\n";
  if (isRanked(ballots.method)) {
    for (const auto &ballot : ballots.rankings) {
      if (ballot.empty()) {
        out += "-\n";
        continue;
      }
      for (std::size_t i = 0; i < ballot.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ballot[i].value);
      }
      out += "\n";
    }
  } else {
    for (const auto &ballot : ballots.scores) {
      if (ballot.empty()) {
        out += "-\n";
        continue;
      }
      bool first = true;
      for (const auto &[c, score] : ballot) {
        if (!first) out += ",";
        out += std::to_string(c.value) + "=" + std::to_string(score);
        first = false;
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace evote::io
