#include "support/corpus.hpp"

#include <algorithm>

namespace evote::testing {

using io::Method;
using tally::CandidateId;

namespace {

std::size_t pick(oracle::Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

const char *const kNames[] = {"Ada",   "Grace Hopper", "Edsger", "Barbara Liskov", "Alan", "Frances E. Allen",
                              "Niklaus", "Tony Hoare",  "Leslie", "Radia #1",       "Ken",  "Mary-Ann O'Neil"};

std::string decorate(oracle::Rng &rng, const std::string &canonical) {
  std::string out;
  if (pick(rng, 0, 1)) out += "# generated\n";
  std::size_t pos = 0;
  while (pos < canonical.size()) {
    auto nl = canonical.find('\n', pos);
    std::string line = canonical.substr(pos, nl - pos);
    pos = nl + 1;
    if (pick(rng, 0, 5) == 0) out += "\n";
    if (pick(rng, 0, 7) == 0) out += "   # note\n";
    if (pick(rng, 0, 3) == 0) out += "  ";
    // extra space after separators
    if (pick(rng, 0, 3) == 0) {
      std::string spaced;
      for (char ch : line) {
        spaced += ch;
        if (ch == ',' || ch == ':') spaced += ' ';
      }
      line = spaced;
    }
    if (pick(rng, 0, 4) == 0) line += " \t";
    out += line;
    out += pick(rng, 0, 5) == 0 ? "\r\n" : "\n";
  }
  return out;
}

}  // namespace

io::ElectionDefinition randomDefinition(oracle::Rng &rng) {
  io::ElectionDefinition def;
  def.method = static_cast<Method>(pick(rng, 0, 3));
  const std::size_t n = pick(rng, 1, 6);
  std::vector<std::string> names(std::begin(kNames), std::end(kNames));
  std::shuffle(names.begin(), names.end(), rng);
  std::vector<std::uint32_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::uint32_t>(i + 1);
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::size_t i = 0; i < n; ++i) def.candidates.push_back({CandidateId(ids[i]), names[i]});
  switch (def.method) {
    case Method::Score:
      def.minScore = -static_cast<std::int64_t>(pick(rng, 0, 5));
      def.maxScore = *def.minScore + static_cast<std::int64_t>(pick(rng, 0, 10));
      break;
    case Method::Borda: def.maxTiedPlacements = pick(rng, 0, n); break;
    case Method::Stv: def.seats = pick(rng, 0, n); break;
    case Method::Irv: break;
  }
  return def;
}

io::BallotFile randomBallots(oracle::Rng &rng, const io::ElectionDefinition &definition, std::size_t maxBallots) {
  io::BallotFile file;
  file.method = definition.method;
  const auto roster = definition.roster();
  const std::size_t count = pick(rng, 0, maxBallots);
  for (std::size_t i = 0; i < count; ++i) {
    if (definition.method == Method::Score) {
      tally::ScoreBallot ballot;
      std::uniform_int_distribution<std::int64_t> score(*definition.minScore, *definition.maxScore);
      for (CandidateId c : roster) {
        if (pick(rng, 0, 2)) ballot[c] = score(rng);
      }
      file.scores.push_back(std::move(ballot));
    } else {
      file.rankings.push_back(oracle::randomRanking(rng, roster, definition.method != Method::Stv));
    }
  }
  return file;
}

CorpusFile randomCorpusFile(oracle::Rng &rng) {
  CorpusFile file;
  file.definition = randomDefinition(rng);
  file.ballots = randomBallots(rng, file.definition, 15);
  file.definitionText = decorate(rng, io::serializeElection(file.definition));
  file.ballotText = decorate(rng, io::serializeBallots(file.ballots));
  return file;
}

std::optional<InjectedFile> injectViolation(oracle::Rng &rng, const CorpusFile &file, io::ErrorKind kind) {
  const auto &def = file.definition;
  const bool ranked = io::isRanked(def.method);
  const auto n = static_cast<std::uint32_t>(def.candidates.size());
  InjectedFile out;
  std::string record;

  switch (kind) {
    case io::ErrorKind::DuplicateInBallot: {
      CandidateId c(static_cast<std::uint32_t>(pick(rng, 1, n)));
      if (ranked) {
        tally::PreferenceBallot b = oracle::randomRanking(rng, def.roster(), false);
        b.insert(b.begin() + static_cast<std::ptrdiff_t>(pick(rng, 0, b.size())), b[pick(rng, 0, b.size() - 1)]);
        out.ranking = b;
        for (std::size_t i = 0; i < b.size(); ++i) record += (i ? "," : "") + std::to_string(b[i].value);
      } else {
        record = std::to_string(c.value) + "=" + std::to_string(*def.minScore) + "," + std::to_string(c.value) + "=" +
                 std::to_string(*def.maxScore);
      }
      break;
    }
    case io::ErrorKind::UnknownCandidate: {
      std::uint32_t bad = pick(rng, 0, 3) == 0 ? 0 : n + static_cast<std::uint32_t>(pick(rng, 1, 5));
      if (ranked) {
        tally::PreferenceBallot b = oracle::randomRanking(rng, def.roster(), true);
        b.insert(b.begin() + static_cast<std::ptrdiff_t>(pick(rng, 0, b.size())), CandidateId(bad));
        out.ranking = b;
        for (std::size_t i = 0; i < b.size(); ++i) record += (i ? "," : "") + std::to_string(b[i].value);
      } else {
        out.scores = tally::ScoreBallot{{CandidateId(bad), *def.minScore}};
        record = std::to_string(bad) + "=" + std::to_string(*def.minScore);
      }
      break;
    }
    case io::ErrorKind::EmptyBallot:
      if (def.method != Method::Stv) return std::nullopt;
      out.ranking = tally::PreferenceBallot{};
      record = "-";
      break;
    case io::ErrorKind::OutOfRangeScore: {
      if (def.method != Method::Score) return std::nullopt;
      std::int64_t bad = pick(rng, 0, 1) ? *def.maxScore + static_cast<std::int64_t>(pick(rng, 1, 100))
                                         : *def.minScore - static_cast<std::int64_t>(pick(rng, 1, 100));
      CandidateId c(static_cast<std::uint32_t>(pick(rng, 1, n)));
      out.scores = tally::ScoreBallot{{c, bad}};
      record = std::to_string(c.value) + "=" + std::to_string(bad);
      break;
    }
    default: return std::nullopt;
  }

  // Insert after the header (line 1 of the canonical text) at a random record position.
  std::string canonical = io::serializeBallots(file.ballots);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < canonical.size()) {
    auto nl = canonical.find('\n', pos);
    lines.push_back(canonical.substr(pos, nl - pos));
    pos = nl + 1;
  }
  std::size_t at = pick(rng, 1, lines.size());
  lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(at), record);
  for (const auto &l : lines) out.ballotText += l + "\n";
  out.line = at + 1;
  return out;
}

}  // namespace evote::testing
