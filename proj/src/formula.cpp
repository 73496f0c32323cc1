#include "mtlkit/formula.hpp"

#include <stdexcept>

namespace mtlkit {

char quant_kind_letter(QuantKind k) {
  switch (k) {
    case QuantKind::Set: return 'S';
    case QuantKind::Tree: return 'T';
    case QuantKind::Path: return 'P';
  }
  return '?';
}

const char* quant_mode_name(QuantMode m) {
  switch (m) {
    case QuantMode::Full: return "full";
    case QuantMode::Weak: return "weak";
    case QuantMode::CoWeak: return "coweak";
  }
  return "?";
}

namespace msol {

static MsolPtr mk(MsolNode n) { return std::make_shared<const MsolNode>(std::move(n)); }

MsolPtr atom(std::string ap, std::string x) {
  MsolNode n;
  n.kind = MsolNode::Kind::Atom;
  n.ap = std::move(ap);
  n.v1 = std::move(x);
  return mk(std::move(n));
}

MsolPtr leq(std::string x, std::string y) {
  MsolNode n;
  n.kind = MsolNode::Kind::Leq;
  n.v1 = std::move(x);
  n.v2 = std::move(y);
  return mk(std::move(n));
}

MsolPtr member(std::string x, std::string X) {
  MsolNode n;
  n.kind = MsolNode::Kind::Member;
  n.v1 = std::move(x);
  n.v2 = std::move(X);
  return mk(std::move(n));
}

MsolPtr not_(MsolPtr f) {
  MsolNode n;
  n.kind = MsolNode::Kind::Not;
  n.a = std::move(f);
  return mk(std::move(n));
}

static MsolPtr binary(MsolNode::Kind k, MsolPtr a, MsolPtr b) {
  MsolNode n;
  n.kind = k;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk(std::move(n));
}

MsolPtr and_(MsolPtr a, MsolPtr b) { return binary(MsolNode::Kind::And, std::move(a), std::move(b)); }
MsolPtr or_(MsolPtr a, MsolPtr b) { return binary(MsolNode::Kind::Or, std::move(a), std::move(b)); }
MsolPtr implies(MsolPtr a, MsolPtr b) { return binary(MsolNode::Kind::Implies, std::move(a), std::move(b)); }

static MsolPtr quant1(MsolNode::Kind k, std::string x, MsolPtr body) {
  MsolNode n;
  n.kind = k;
  n.v1 = std::move(x);
  n.a = std::move(body);
  return mk(std::move(n));
}

MsolPtr exists1(std::string x, MsolPtr body) { return quant1(MsolNode::Kind::Exists1, std::move(x), std::move(body)); }
MsolPtr forall1(std::string x, MsolPtr body) { return quant1(MsolNode::Kind::Forall1, std::move(x), std::move(body)); }

static MsolPtr quant2(MsolNode::Kind k, QuantKind q, std::string X, MsolPtr body) {
  MsolNode n;
  n.kind = k;
  n.qkind = q;
  n.v2 = std::move(X);
  n.a = std::move(body);
  return mk(std::move(n));
}

MsolPtr exists2(QuantKind k, std::string X, MsolPtr body) {
  return quant2(MsolNode::Kind::Exists2, k, std::move(X), std::move(body));
}
MsolPtr forall2(QuantKind k, std::string X, MsolPtr body) {
  return quant2(MsolNode::Kind::Forall2, k, std::move(X), std::move(body));
}

MsolPtr lt(const std::string& x, const std::string& y) {
  return and_(leq(x, y), not_(leq(y, x)));
}

MsolPtr eq(const std::string& x, const std::string& y) {
  return and_(leq(x, y), leq(y, x));
}

MsolPtr tt(const std::string& x) { return leq(x, x); }
MsolPtr ff(const std::string& x) { return not_(leq(x, x)); }

MsolPtr and_all(const std::vector<MsolPtr>& fs) {
  if (fs.empty()) throw std::invalid_argument("and_all: empty conjunction");
  MsolPtr out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = and_(out, fs[i]);
  return out;
}

}  // namespace msol

namespace gmc {

static GmcPtr mk(GmcNode n) { return std::make_shared<const GmcNode>(std::move(n)); }

GmcPtr ff() {
  GmcNode n;
  n.kind = GmcNode::Kind::False;
  return mk(std::move(n));
}

GmcPtr tt() {
  GmcNode n;
  n.kind = GmcNode::Kind::True;
  return mk(std::move(n));
}

GmcPtr atom(std::string name) {
  GmcNode n;
  n.kind = GmcNode::Kind::Atom;
  n.name = std::move(name);
  return mk(std::move(n));
}

GmcPtr not_(GmcPtr f) {
  GmcNode n;
  n.kind = GmcNode::Kind::Not;
  n.a = std::move(f);
  return mk(std::move(n));
}

GmcPtr and_(GmcPtr a, GmcPtr b) {
  GmcNode n;
  n.kind = GmcNode::Kind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk(std::move(n));
}

GmcPtr or_(GmcPtr a, GmcPtr b) {
  GmcNode n;
  n.kind = GmcNode::Kind::Or;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk(std::move(n));
}

GmcPtr diamond(uint32_t grade, GmcPtr f) {
  GmcNode n;
  n.kind = GmcNode::Kind::Diamond;
  n.grade = grade;
  n.a = std::move(f);
  return mk(std::move(n));
}

GmcPtr box(uint32_t grade, GmcPtr f) {
  GmcNode n;
  n.kind = GmcNode::Kind::Box;
  n.grade = grade;
  n.a = std::move(f);
  return mk(std::move(n));
}

GmcPtr var(std::string name) {
  GmcNode n;
  n.kind = GmcNode::Kind::Var;
  n.name = std::move(name);
  return mk(std::move(n));
}

GmcPtr mu(std::string name, GmcPtr body) {
  GmcNode n;
  n.kind = GmcNode::Kind::Mu;
  n.name = std::move(name);
  n.a = std::move(body);
  return mk(std::move(n));
}

GmcPtr nu(std::string name, GmcPtr body) {
  GmcNode n;
  n.kind = GmcNode::Kind::Nu;
  n.name = std::move(name);
  n.a = std::move(body);
  return mk(std::move(n));
}

}  // namespace gmc

namespace cctl {

static CctlStatePtr mks(CctlState n) { return std::make_shared<const CctlState>(std::move(n)); }
static CctlPathPtr mkp(CctlPath n) { return std::make_shared<const CctlPath>(std::move(n)); }

CctlStatePtr tt() {
  CctlState n;
  n.kind = CctlState::Kind::True;
  return mks(std::move(n));
}

CctlStatePtr atom(std::string ap) {
  CctlState n;
  n.kind = CctlState::Kind::Atom;
  n.ap = std::move(ap);
  return mks(std::move(n));
}

CctlStatePtr not_(CctlStatePtr f) {
  CctlState n;
  n.kind = CctlState::Kind::Not;
  n.a = std::move(f);
  return mks(std::move(n));
}

CctlStatePtr and_(CctlStatePtr a, CctlStatePtr b) {
  CctlState n;
  n.kind = CctlState::Kind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return mks(std::move(n));
}

CctlStatePtr exists(CctlPathPtr p) {
  CctlState n;
  n.kind = CctlState::Kind::Exists;
  n.p = std::move(p);
  return mks(std::move(n));
}

CctlStatePtr forall(CctlPathPtr p) {
  CctlState n;
  n.kind = CctlState::Kind::Forall;
  n.p = std::move(p);
  return mks(std::move(n));
}

CctlStatePtr count(uint32_t grade, CctlStatePtr f) {
  CctlState n;
  n.kind = CctlState::Kind::Count;
  n.grade = grade;
  n.a = std::move(f);
  return mks(std::move(n));
}

CctlPathPtr embed(CctlStatePtr s) {
  CctlPath n;
  n.kind = CctlPath::Kind::State;
  n.s = std::move(s);
  return mkp(std::move(n));
}

CctlPathPtr pnot(CctlPathPtr f) {
  CctlPath n;
  n.kind = CctlPath::Kind::Not;
  n.a = std::move(f);
  return mkp(std::move(n));
}

CctlPathPtr pand(CctlPathPtr a, CctlPathPtr b) {
  CctlPath n;
  n.kind = CctlPath::Kind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return mkp(std::move(n));
}

CctlPathPtr next(CctlPathPtr f) {
  CctlPath n;
  n.kind = CctlPath::Kind::Next;
  n.a = std::move(f);
  return mkp(std::move(n));
}

CctlPathPtr until(CctlPathPtr a, CctlPathPtr b) {
  CctlPath n;
  n.kind = CctlPath::Kind::Until;
  n.a = std::move(a);
  n.b = std::move(b);
  return mkp(std::move(n));
}

}  // namespace cctl

namespace stl {

static StlStatePtr mks(StlState n) { return std::make_shared<const StlState>(std::move(n)); }
static StlPathPtr mkp(StlPath n) { return std::make_shared<const StlPath>(std::move(n)); }

StlStatePtr tt() {
  StlState n;
  n.kind = StlState::Kind::True;
  return mks(std::move(n));
}

StlStatePtr atom(std::string ap) {
  StlState n;
  n.kind = StlState::Kind::Atom;
  n.ap = std::move(ap);
  return mks(std::move(n));
}

StlStatePtr not_(StlStatePtr f) {
  StlState n;
  n.kind = StlState::Kind::Not;
  n.a = std::move(f);
  return mks(std::move(n));
}

StlStatePtr and_(StlStatePtr a, StlStatePtr b) {
  StlState n;
  n.kind = StlState::Kind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return mks(std::move(n));
}

StlStatePtr exists(StlPathPtr p) {
  StlState n;
  n.kind = StlState::Kind::Exists;
  n.p = std::move(p);
  return mks(std::move(n));
}

StlStatePtr forall(StlPathPtr p) {
  StlState n;
  n.kind = StlState::Kind::Forall;
  n.p = std::move(p);
  return mks(std::move(n));
}

StlStatePtr count(uint32_t grade, StlStatePtr f) {
  StlState n;
  n.kind = StlState::Kind::Count;
  n.grade = grade;
  n.a = std::move(f);
  return mks(std::move(n));
}

static StlStatePtr semilattice(StlState::Kind k, StlStatePtr chi, StlStatePtr a, StlStatePtr b) {
  StlState n;
  n.kind = k;
  n.chi = std::move(chi);
  n.a = std::move(a);
  n.b = std::move(b);
  return mks(std::move(n));
}

StlStatePtr uu(StlStatePtr chi, StlStatePtr a, StlStatePtr b) {
  return semilattice(StlState::Kind::UU, std::move(chi), std::move(a), std::move(b));
}
StlStatePtr rr(StlStatePtr chi, StlStatePtr a, StlStatePtr b) {
  return semilattice(StlState::Kind::RR, std::move(chi), std::move(a), std::move(b));
}
StlStatePtr ss(StlStatePtr chi, StlStatePtr a, StlStatePtr b) {
  return semilattice(StlState::Kind::SS, std::move(chi), std::move(a), std::move(b));
}
StlStatePtr bb(StlStatePtr chi, StlStatePtr a, StlStatePtr b) {
  return semilattice(StlState::Kind::BB, std::move(chi), std::move(a), std::move(b));
}

StlPathPtr embed(StlStatePtr s) {
  StlPath n;
  n.kind = StlPath::Kind::State;
  n.s = std::move(s);
  return mkp(std::move(n));
}

StlPathPtr pnot(StlPathPtr f) {
  StlPath n;
  n.kind = StlPath::Kind::Not;
  n.a = std::move(f);
  return mkp(std::move(n));
}

StlPathPtr pand(StlPathPtr a, StlPathPtr b) {
  StlPath n;
  n.kind = StlPath::Kind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return mkp(std::move(n));
}

StlPathPtr next(StlPathPtr f) {
  StlPath n;
  n.kind = StlPath::Kind::Next;
  n.a = std::move(f);
  return mkp(std::move(n));
}

StlPathPtr until(StlPathPtr a, StlPathPtr b) {
  StlPath n;
  n.kind = StlPath::Kind::Until;
  n.a = std::move(a);
  n.b = std::move(b);
  return mkp(std::move(n));
}

static bool pure_cctl_path(const StlPathPtr& f);

bool pure_cctl(const StlStatePtr& f) {
  if (!f) return true;
  switch (f->kind) {
    case StlState::Kind::True:
    case StlState::Kind::Atom:
      return true;
    case StlState::Kind::Not:
    case StlState::Kind::Count:
      return pure_cctl(f->a);
    case StlState::Kind::And:
      return pure_cctl(f->a) && pure_cctl(f->b);
    case StlState::Kind::Exists:
    case StlState::Kind::Forall:
      return pure_cctl_path(f->p);
    case StlState::Kind::UU:
    case StlState::Kind::RR:
    case StlState::Kind::SS:
    case StlState::Kind::BB:
      return false;
  }
  return false;
}

static bool pure_cctl_path(const StlPathPtr& f) {
  switch (f->kind) {
    case StlPath::Kind::State: return pure_cctl(f->s);
    case StlPath::Kind::Not:
    case StlPath::Kind::Next:
      return pure_cctl_path(f->a);
    case StlPath::Kind::And:
    case StlPath::Kind::Until:
      return pure_cctl_path(f->a) && pure_cctl_path(f->b);
  }
  return false;
}

static CctlPathPtr to_cctl_path(const StlPathPtr& f);

CctlStatePtr to_cctl(const StlStatePtr& f) {
  switch (f->kind) {
    case StlState::Kind::True: return cctl::tt();
    case StlState::Kind::Atom: return cctl::atom(f->ap);
    case StlState::Kind::Not: return cctl::not_(to_cctl(f->a));
    case StlState::Kind::And: return cctl::and_(to_cctl(f->a), to_cctl(f->b));
    case StlState::Kind::Exists: return cctl::exists(to_cctl_path(f->p));
    case StlState::Kind::Forall: return cctl::forall(to_cctl_path(f->p));
    case StlState::Kind::Count: return cctl::count(f->grade, to_cctl(f->a));
    default:
      throw std::invalid_argument("to_cctl: formula contains a semilattice operator");
  }
}

static CctlPathPtr to_cctl_path(const StlPathPtr& f) {
  switch (f->kind) {
    case StlPath::Kind::State: return cctl::embed(to_cctl(f->s));
    case StlPath::Kind::Not: return cctl::pnot(to_cctl_path(f->a));
    case StlPath::Kind::And: return cctl::pand(to_cctl_path(f->a), to_cctl_path(f->b));
    case StlPath::Kind::Next: return cctl::next(to_cctl_path(f->a));
    case StlPath::Kind::Until: return cctl::until(to_cctl_path(f->a), to_cctl_path(f->b));
  }
  throw std::logic_error("to_cctl_path: bad kind");
}

static StlPathPtr from_cctl_path(const CctlPathPtr& f);

StlStatePtr from_cctl(const CctlStatePtr& f) {
  switch (f->kind) {
    case CctlState::Kind::True: return tt();
    case CctlState::Kind::Atom: return atom(f->ap);
    case CctlState::Kind::Not: return not_(from_cctl(f->a));
    case CctlState::Kind::And: return and_(from_cctl(f->a), from_cctl(f->b));
    case CctlState::Kind::Exists: return exists(from_cctl_path(f->p));
    case CctlState::Kind::Forall: return forall(from_cctl_path(f->p));
    case CctlState::Kind::Count: return count(f->grade, from_cctl(f->a));
  }
  throw std::logic_error("from_cctl: bad kind");
}

static StlPathPtr from_cctl_path(const CctlPathPtr& f) {
  switch (f->kind) {
    case CctlPath::Kind::State: return embed(from_cctl(f->s));
    case CctlPath::Kind::Not: return pnot(from_cctl_path(f->a));
    case CctlPath::Kind::And: return pand(from_cctl_path(f->a), from_cctl_path(f->b));
    case CctlPath::Kind::Next: return next(from_cctl_path(f->a));
    case CctlPath::Kind::Until: return until(from_cctl_path(f->a), from_cctl_path(f->b));
  }
  throw std::logic_error("from_cctl_path: bad kind");
}

}  // namespace stl

bool equal(const MsolPtr& a, const MsolPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->ap != b->ap || a->v1 != b->v1 || a->v2 != b->v2 || a->qkind != b->qkind)
    return false;
  return equal(a->a, b->a) && equal(a->b, b->b);
}

bool equal(const GmcPtr& a, const GmcPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->grade != b->grade) return false;
  return equal(a->a, b->a) && equal(a->b, b->b);
}

bool equal(const CctlStatePtr& a, const CctlStatePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->ap != b->ap || a->grade != b->grade) return false;
  return equal(a->a, b->a) && equal(a->b, b->b) && equal(a->p, b->p);
}

bool equal(const CctlPathPtr& a, const CctlPathPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  return equal(a->s, b->s) && equal(a->a, b->a) && equal(a->b, b->b);
}

bool equal(const StlStatePtr& a, const StlStatePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->ap != b->ap || a->grade != b->grade) return false;
  return equal(a->chi, b->chi) && equal(a->a, b->a) && equal(a->b, b->b) && equal(a->p, b->p);
}

bool equal(const StlPathPtr& a, const StlPathPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  return equal(a->s, b->s) && equal(a->a, b->a) && equal(a->b, b->b);
}

}  // namespace mtlkit
