#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

// Abstract syntax for the four logic families handled by the workbench:
// MSOL (second-order quantifiers decorated with a set/tree/path kind),
// the graded mu-calculus, counting CTL*, and its substructure extension.
// All nodes are immutable after construction and shared freely.

namespace mtlkit {

enum class QuantKind { Set, Tree, Path };
enum class QuantMode { Full, Weak, CoWeak };

char quant_kind_letter(QuantKind k);
const char* quant_mode_name(QuantMode m);

struct SourceSpan {
  int begin = 0;
  int end = 0;
  int line = 1;
  int col = 1;
};

// ---------------------------------------------------------------------------
// MSOL
// ---------------------------------------------------------------------------

struct MsolNode;
using MsolPtr = std::shared_ptr<const MsolNode>;

struct MsolNode {
  enum class Kind {
    Atom,     // ap(v1)
    Leq,      // v1 <= v2, reflexive descendant order
    Member,   // v1 in v2
    Not,
    And,
    Or,
    Implies,
    Exists1,  // E v1. a
    Forall1,  // A v1. a
    Exists2,  // E{S,T,P} v2. a
    Forall2,  // A{S,T,P} v2. a
  };

  Kind kind;
  std::string ap;             // Atom
  std::string v1;             // first-order operand / binder
  std::string v2;             // second-order operand / binder
  QuantKind qkind = QuantKind::Set;
  MsolPtr a;
  MsolPtr b;
  SourceSpan span;
};

namespace msol {
MsolPtr atom(std::string ap, std::string x);
MsolPtr leq(std::string x, std::string y);
MsolPtr member(std::string x, std::string X);
MsolPtr not_(MsolPtr f);
MsolPtr and_(MsolPtr a, MsolPtr b);
MsolPtr or_(MsolPtr a, MsolPtr b);
MsolPtr implies(MsolPtr a, MsolPtr b);
MsolPtr exists1(std::string x, MsolPtr body);
MsolPtr forall1(std::string x, MsolPtr body);
MsolPtr exists2(QuantKind k, std::string X, MsolPtr body);
MsolPtr forall2(QuantKind k, std::string X, MsolPtr body);

// Shorthands from the signature: x<y and x=y expand over <=.
MsolPtr lt(const std::string& x, const std::string& y);
MsolPtr eq(const std::string& x, const std::string& y);
// Anchored truth constants; the signature has no boolean literals.
MsolPtr tt(const std::string& x);
MsolPtr ff(const std::string& x);
// Conjunction of a non-empty list, left-associated.
MsolPtr and_all(const std::vector<MsolPtr>& fs);
}  // namespace msol

// ---------------------------------------------------------------------------
// Graded mu-calculus
// ---------------------------------------------------------------------------

struct GmcNode;
using GmcPtr = std::shared_ptr<const GmcNode>;

struct GmcNode {
  enum class Kind {
    False,
    True,
    Atom,     // name
    Not,
    And,
    Or,
    Diamond,  // <grade> a, "at least `grade` children satisfy"
    Box,      // [grade] a, "all but fewer than `grade` children satisfy"
    Var,      // name
    Mu,       // mu name. a
    Nu,       // nu name. a
  };

  Kind kind;
  std::string name;    // Atom / Var / binder
  uint32_t grade = 0;  // Diamond / Box
  GmcPtr a;
  GmcPtr b;
  SourceSpan span;
};

namespace gmc {
GmcPtr ff();
GmcPtr tt();
GmcPtr atom(std::string name);
GmcPtr not_(GmcPtr f);
GmcPtr and_(GmcPtr a, GmcPtr b);
GmcPtr or_(GmcPtr a, GmcPtr b);
GmcPtr diamond(uint32_t grade, GmcPtr f);
GmcPtr box(uint32_t grade, GmcPtr f);
GmcPtr var(std::string name);
GmcPtr mu(std::string name, GmcPtr body);
GmcPtr nu(std::string name, GmcPtr body);
}  // namespace gmc

// Zero-step and one-step variable roles of the one-step fragment grammar.
struct VarRoleSets {
  std::set<std::string> zero;
  std::set<std::string> one;
};

// ---------------------------------------------------------------------------
// Counting CTL*: two sorts, state and path.
// ---------------------------------------------------------------------------

struct CctlState;
struct CctlPath;
using CctlStatePtr = std::shared_ptr<const CctlState>;
using CctlPathPtr = std::shared_ptr<const CctlPath>;

struct CctlState {
  enum class Kind { True, Atom, Not, And, Exists, Forall, Count };
  Kind kind;
  std::string ap;
  uint32_t grade = 0;  // Count
  CctlStatePtr a;
  CctlStatePtr b;
  CctlPathPtr p;
  SourceSpan span;
};

struct CctlPath {
  enum class Kind { State, Not, And, Next, Until };
  Kind kind;
  CctlStatePtr s;
  CctlPathPtr a;
  CctlPathPtr b;
  SourceSpan span;
};

namespace cctl {
CctlStatePtr tt();
CctlStatePtr atom(std::string ap);
CctlStatePtr not_(CctlStatePtr f);
CctlStatePtr and_(CctlStatePtr a, CctlStatePtr b);
CctlStatePtr exists(CctlPathPtr p);
CctlStatePtr forall(CctlPathPtr p);
CctlStatePtr count(uint32_t grade, CctlStatePtr f);
CctlPathPtr embed(CctlStatePtr s);
CctlPathPtr pnot(CctlPathPtr f);
CctlPathPtr pand(CctlPathPtr a, CctlPathPtr b);
CctlPathPtr next(CctlPathPtr f);
CctlPathPtr until(CctlPathPtr a, CctlPathPtr b);
}  // namespace cctl

// ---------------------------------------------------------------------------
// STL*: counting CTL* state/path sorts plus the four semilattice operators.
// The chi argument is the preservation side-condition, a state formula.
// ---------------------------------------------------------------------------

struct StlState;
struct StlPath;
using StlStatePtr = std::shared_ptr<const StlState>;
using StlPathPtr = std::shared_ptr<const StlPath>;

struct StlState {
  enum class Kind { True, Atom, Not, And, Exists, Forall, Count, UU, RR, SS, BB };
  Kind kind;
  std::string ap;
  uint32_t grade = 0;
  StlStatePtr chi;  // semilattice side-condition
  StlStatePtr a;
  StlStatePtr b;
  StlPathPtr p;
  SourceSpan span;
};

struct StlPath {
  enum class Kind { State, Not, And, Next, Until };
  Kind kind;
  StlStatePtr s;
  StlPathPtr a;
  StlPathPtr b;
  SourceSpan span;
};

namespace stl {
StlStatePtr tt();
StlStatePtr atom(std::string ap);
StlStatePtr not_(StlStatePtr f);
StlStatePtr and_(StlStatePtr a, StlStatePtr b);
StlStatePtr exists(StlPathPtr p);
StlStatePtr forall(StlPathPtr p);
StlStatePtr count(uint32_t grade, StlStatePtr f);
StlStatePtr uu(StlStatePtr chi, StlStatePtr a, StlStatePtr b);
StlStatePtr rr(StlStatePtr chi, StlStatePtr a, StlStatePtr b);
StlStatePtr ss(StlStatePtr chi, StlStatePtr a, StlStatePtr b);
StlStatePtr bb(StlStatePtr chi, StlStatePtr a, StlStatePtr b);
StlPathPtr embed(StlStatePtr s);
StlPathPtr pnot(StlPathPtr f);
StlPathPtr pand(StlPathPtr a, StlPathPtr b);
StlPathPtr next(StlPathPtr f);
StlPathPtr until(StlPathPtr a, StlPathPtr b);

// True when the formula contains no UU/RR/SS/BB node.  Such formulas are
// plain counting-CTL* and convert losslessly.
bool pure_cctl(const StlStatePtr& f);
CctlStatePtr to_cctl(const StlStatePtr& f);
StlStatePtr from_cctl(const CctlStatePtr& f);
}  // namespace stl

// Structural equality (spans ignored).
bool equal(const MsolPtr& a, const MsolPtr& b);
bool equal(const GmcPtr& a, const GmcPtr& b);
bool equal(const CctlStatePtr& a, const CctlStatePtr& b);
bool equal(const CctlPathPtr& a, const CctlPathPtr& b);
bool equal(const StlStatePtr& a, const StlStatePtr& b);
bool equal(const StlPathPtr& a, const StlPathPtr& b);

}  // namespace mtlkit
