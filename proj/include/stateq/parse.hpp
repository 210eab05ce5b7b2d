#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "stateq/net.hpp"
#include "stateq/problem.hpp"

namespace stateq {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  std::size_t line, col;
};

struct NetFile {
  std::shared_ptr<const PetriNet> net;
  Marking initial;
};

// Net file grammar (keywords case-sensitive, `{ ... }` comments,
// whitespace-insensitive):
//
//   net      := "PLACE" idlist ";" "MARKING" weighted? ";" trans+
//   trans    := "TRANSITION" id ("CONSUME" weighted? ";")? ("PRODUCE" weighted? ";")?
//   weighted := witem ("," witem)*      witem := id (":" nat)?
//   id       := [A-Za-z_][A-Za-z0-9_']*
//
// An omitted ":nat" means 1. Duplicate items for the same pair sum their
// weights. Arc weights must be >= 1.
NetFile parse_net(std::string_view text);

// Renders a net file that parses back to an identical net.
std::string render_net(const PetriNet& net, const Marking& initial);

// Problem file: sections in any order, each at most once.
//
//   problem := section*
//   section := "FINAL" weighted? ";" | "MODE" ("reach"|"cover") ";"
//            | "REQUIRE" weighted? ";"
//
// Unlisted final places mean 0 in reach mode and "no lower bound" in cover
// mode. REQUIRE counts must be >= 1.
ReachabilityProblem parse_problem(std::string_view text, const NetFile& netfile);

}  // namespace stateq
