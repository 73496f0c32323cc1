#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtlkit/formula.hpp"

// Text grammar, parser and pretty-printer for each logic family.
//
// Shared token set: `E x.`/`A x.` first-order quantifiers; `ES/AS`, `ET/AT`,
// `EP/AP` second-order quantifiers by kind; `in`, `<=`, `<`, `=` relations;
// `<k>`/`[k]` graded modalities; `mu X./nu X.`; `D{k}` counting; `X`, `U`,
// `F`, `UU{chi}` (and RR/SS/BB) temporal and semilattice operators; `!`, `&`,
// `|`, `->` connectives.  `#` starts a line comment.
//
// In the graded mu-calculus an identifier starting with an upper-case letter
// is a fixpoint variable, anything else an atomic proposition.  `x < y` and
// `x = y` are parsed as their `<=` expansions; `|`, `->` and `F` desugar in
// the families whose syntax lacks them.  Printers emit a fully parenthesized
// canonical form that re-parses to a structurally identical tree.

namespace mtlkit {

enum class LogicTag { Msol, Gmc, Cctl, Stl };

LogicTag logic_tag_from_name(const std::string& name);
const char* logic_tag_name(LogicTag tag);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceSpan span, std::vector<std::string> expected = {})
      : std::runtime_error(msg), span(span), expected(std::move(expected)) {}
  SourceSpan span;
  std::vector<std::string> expected;
};

MsolPtr parse_msol(std::string_view text);
GmcPtr parse_gmc(std::string_view text);
CctlStatePtr parse_cctl(std::string_view text);
StlStatePtr parse_stl(std::string_view text);

std::string print(const MsolPtr& f);
std::string print(const GmcPtr& f);
std::string print(const CctlStatePtr& f);
std::string print(const CctlPathPtr& f);
std::string print(const StlStatePtr& f);
std::string print(const StlPathPtr& f);

// Tagged formula for interfaces that carry the family at run time.
struct AnyFormula {
  LogicTag tag = LogicTag::Msol;
  MsolPtr msol;
  GmcPtr gmc;
  CctlStatePtr cctl;
  StlStatePtr stl;
};

AnyFormula parse_any(std::string_view text, LogicTag tag);
std::string print(const AnyFormula& f);

// Parses a newline-separated corpus; `#` comments and blank lines skipped.
std::vector<AnyFormula> parse_corpus(std::string_view text, LogicTag tag);

}  // namespace mtlkit
