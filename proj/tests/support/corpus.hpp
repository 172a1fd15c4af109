#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evote/io/ballots.hpp"
#include "evote/io/definition.hpp"
#include "evote/oracle/generators.hpp"

namespace evote::testing {

struct CorpusFile {
  io::ElectionDefinition definition;
  io::BallotFile ballots;
  /// Texts as a person might write them: comments, blank lines, odd spacing, CRLF.
  std::string definitionText;
  std::string ballotText;
};

io::ElectionDefinition randomDefinition(oracle::Rng &rng);
io::BallotFile randomBallots(oracle::Rng &rng, const io::ElectionDefinition &definition, std::size_t maxBallots);
CorpusFile randomCorpusFile(oracle::Rng &rng);

/// A copy of `file` with one bad record of the given kind inserted; the
/// record's line number is returned alongside. Returns nullopt when the kind
/// cannot occur for the file's method (EmptyBallot outside stv,
/// OutOfRangeScore outside score).
struct InjectedFile {
  std::string ballotText;
  std::size_t line;
  /// The offending ballot as the core would receive it, when representable.
  std::optional<tally::PreferenceBallot> ranking;
  std::optional<tally::ScoreBallot> scores;
};
std::optional<InjectedFile> injectViolation(oracle::Rng &rng, const CorpusFile &file, io::ErrorKind kind);

}  // namespace evote::testing
