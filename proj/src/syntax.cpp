#include "mtlkit/syntax.hpp"

#include <cctype>
#include <sstream>

namespace mtlkit {

LogicTag logic_tag_from_name(const std::string& name) {
  if (name == "msol" || name == "mso" || name == "mtl" || name == "mpl") return LogicTag::Msol;
  if (name == "gmc") return LogicTag::Gmc;
  if (name == "cctl") return LogicTag::Cctl;
  if (name == "stl") return LogicTag::Stl;
  throw std::invalid_argument("unknown logic tag: " + name);
}

const char* logic_tag_name(LogicTag tag) {
  switch (tag) {
    case LogicTag::Msol: return "msol";
    case LogicTag::Gmc: return "gmc";
    case LogicTag::Cctl: return "cctl";
    case LogicTag::Stl: return "stl";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Dot,
  Bang,
  Amp,
  Pipe,
  Arrow,
  Leq,
  Lt,
  Eq,
  Ident,
  Number,
  DiamondGrade,  // <k>
  BoxGrade,      // [k]
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  uint32_t number = 0;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_ = Token{};
    tok_.span = here();
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    if (c == '(') return single(Tok::LParen);
    if (c == ')') return single(Tok::RParen);
    if (c == '{') return single(Tok::LBrace);
    if (c == '}') return single(Tok::RBrace);
    if (c == '.') return single(Tok::Dot);
    if (c == '!') return single(Tok::Bang);
    if (c == '&') return single(Tok::Amp);
    if (c == '|') return single(Tok::Pipe);
    if (c == '=') return single(Tok::Eq);
    if (c == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        bump(2);
        tok_.kind = Tok::Arrow;
        finish();
        return;
      }
      throw ParseError("stray '-'", tok_.span, {"->"});
    }
    if (c == '<') {
      // `<k>` graded diamond, `<=` order, bare `<` strict order
      size_t j = pos_ + 1;
      if (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
        size_t k = j;
        while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
        if (k < text_.size() && text_[k] == '>') {
          tok_.number = parse_number(j, k);
          bump(k + 1 - pos_);
          tok_.kind = Tok::DiamondGrade;
          finish();
          return;
        }
      }
      if (j < text_.size() && text_[j] == '=') {
        bump(2);
        tok_.kind = Tok::Leq;
        finish();
        return;
      }
      return single(Tok::Lt);
    }
    if (c == '[') {
      size_t j = pos_ + 1;
      size_t k = j;
      while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
      if (k > j && k < text_.size() && text_[k] == ']') {
        tok_.number = parse_number(j, k);
        bump(k + 1 - pos_);
        tok_.kind = Tok::BoxGrade;
        finish();
        return;
      }
      throw ParseError("expected `[k]` graded box", tok_.span, {"[k]"});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t k = pos_;
      while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
      tok_.number = parse_number(pos_, k);
      bump(k - pos_);
      tok_.kind = Tok::Number;
      finish();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      size_t k = pos_;
      while (k < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[k])) || text_[k] == '_' ||
                                  text_[k] == '@'))
        ++k;
      tok_.text = std::string(text_.substr(pos_, k - pos_));
      bump(k - pos_);
      tok_.kind = Tok::Ident;
      finish();
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tok_.span);
  }

  uint32_t parse_number(size_t from, size_t to) {
    uint64_t val = 0;
    for (size_t i = from; i < to; ++i) {
      val = val * 10 + uint64_t(text_[i] - '0');
      if (val > 1000000) throw ParseError("grade too large", here());
    }
    return static_cast<uint32_t>(val);
  }

  void single(Tok k) {
    bump(1);
    tok_.kind = k;
    finish();
  }

  void finish() { tok_.span.end = static_cast<int>(pos_); }

  SourceSpan here() const {
    SourceSpan s;
    s.begin = static_cast<int>(pos_);
    s.end = static_cast<int>(pos_);
    s.line = line_;
    s.col = col_;
    return s;
  }

  void bump(size_t n) {
    for (size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

bool upper_initial(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class Parser {
 public:
  Parser(std::string_view text, LogicTag tag) : lex_(text), tag_(tag) {}

  MsolPtr msol_formula() {
    MsolPtr f = msol_implies();
    expect_end();
    return f;
  }

  GmcPtr gmc_formula() {
    GmcPtr f = gmc_or();
    expect_end();
    return f;
  }

  CctlStatePtr cctl_formula() {
    StlStatePtr f = state_or();
    expect_end();
    return stl::to_cctl(f);
  }

  StlStatePtr stl_formula() {
    StlStatePtr f = state_or();
    expect_end();
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) {
    throw ParseError(msg, lex_.peek().span, std::move(expected));
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::End) fail("trailing input after formula", {"end of input"});
  }

  Token expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) fail(std::string("expected ") + what, {what});
    return lex_.take();
  }

  bool accept(Tok k) {
    if (lex_.peek().kind == k) {
      lex_.take();
      return true;
    }
    return false;
  }

  bool ident_is(const char* kw) const {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == kw;
  }

  std::string expect_ident(const char* what) {
    if (lex_.peek().kind != Tok::Ident) fail(std::string("expected ") + what, {what});
    return lex_.take().text;
  }

  // ---- msol ----

  MsolPtr msol_implies() {
    MsolPtr a = msol_or();
    if (accept(Tok::Arrow)) return msol::implies(a, msol_implies());
    return a;
  }

  MsolPtr msol_or() {
    MsolPtr a = msol_and();
    while (accept(Tok::Pipe)) a = msol::or_(a, msol_and());
    return a;
  }

  MsolPtr msol_and() {
    MsolPtr a = msol_unary();
    while (accept(Tok::Amp)) a = msol::and_(a, msol_unary());
    return a;
  }

  static bool so_quant_kw(const std::string& s, bool& exists, QuantKind& kind) {
    if (s.size() != 2 || (s[0] != 'E' && s[0] != 'A')) return false;
    exists = s[0] == 'E';
    switch (s[1]) {
      case 'S': kind = QuantKind::Set; return true;
      case 'T': kind = QuantKind::Tree; return true;
      case 'P': kind = QuantKind::Path; return true;
    }
    return false;
  }

  MsolPtr msol_unary() {
    if (accept(Tok::Bang)) return msol::not_(msol_unary());
    if (lex_.peek().kind == Tok::Ident) {
      const std::string& kw = lex_.peek().text;
      bool exists;
      QuantKind qk;
      if (kw == "E" || kw == "A") {
        bool ex = kw == "E";
        lex_.take();
        std::string v = expect_ident("first-order variable");
        expect(Tok::Dot, "'.'");
        MsolPtr body = msol_implies();
        return ex ? msol::exists1(v, body) : msol::forall1(v, body);
      }
      if (so_quant_kw(kw, exists, qk)) {
        lex_.take();
        std::string v = expect_ident("second-order variable");
        expect(Tok::Dot, "'.'");
        MsolPtr body = msol_implies();
        return exists ? msol::exists2(qk, v, body) : msol::forall2(qk, v, body);
      }
    }
    return msol_primary();
  }

  MsolPtr msol_primary() {
    if (accept(Tok::LParen)) {
      MsolPtr f = msol_implies();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (lex_.peek().kind != Tok::Ident) fail("expected a formula", {"identifier", "'('", "'!'"});
    std::string id = lex_.take().text;
    switch (lex_.peek().kind) {
      case Tok::LParen: {
        lex_.take();
        std::string v = expect_ident("variable");
        expect(Tok::RParen, "')'");
        return msol::atom(id, v);
      }
      case Tok::Leq: {
        lex_.take();
        return msol::leq(id, expect_ident("variable"));
      }
      case Tok::Lt: {
        lex_.take();
        return msol::lt(id, expect_ident("variable"));
      }
      case Tok::Eq: {
        lex_.take();
        return msol::eq(id, expect_ident("variable"));
      }
      case Tok::Ident:
        if (lex_.peek().text == "in") {
          lex_.take();
          return msol::member(id, expect_ident("set variable"));
        }
        [[fallthrough]];
      default:
        fail("expected a relation after identifier", {"(v)", "<=", "<", "=", "in"});
    }
  }

  // ---- gmc ----

  GmcPtr gmc_or() {
    GmcPtr a = gmc_and();
    while (true) {
      if (accept(Tok::Pipe)) {
        a = gmc::or_(a, gmc_and());
      } else if (accept(Tok::Arrow)) {
        a = gmc::or_(gmc::not_(a), gmc_or());
        break;
      } else {
        break;
      }
    }
    return a;
  }

  GmcPtr gmc_and() {
    GmcPtr a = gmc_unary();
    while (accept(Tok::Amp)) a = gmc::and_(a, gmc_unary());
    return a;
  }

  GmcPtr gmc_unary() {
    switch (lex_.peek().kind) {
      case Tok::Bang:
        lex_.take();
        return gmc::not_(gmc_unary());
      case Tok::DiamondGrade: {
        uint32_t k = lex_.take().number;
        return gmc::diamond(k, gmc_unary());
      }
      case Tok::BoxGrade: {
        uint32_t k = lex_.take().number;
        return gmc::box(k, gmc_unary());
      }
      case Tok::Ident:
        if (lex_.peek().text == "mu" || lex_.peek().text == "nu") {
          bool is_mu = lex_.take().text == "mu";
          std::string v = expect_ident("fixpoint variable");
          expect(Tok::Dot, "'.'");
          GmcPtr body = gmc_or();
          return is_mu ? gmc::mu(v, body) : gmc::nu(v, body);
        }
        break;
      default:
        break;
    }
    return gmc_primary();
  }

  GmcPtr gmc_primary() {
    if (accept(Tok::LParen)) {
      GmcPtr f = gmc_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (lex_.peek().kind != Tok::Ident) fail("expected a formula", {"identifier", "'('", "'!'"});
    std::string id = lex_.take().text;
    if (id == "tt") return gmc::tt();
    if (id == "ff") return gmc::ff();
    if (upper_initial(id)) return gmc::var(id);
    return gmc::atom(id);
  }

  // ---- cctl / stl state and path formulas (parsed as stl, converted down) ----

  StlStatePtr state_or() {
    StlStatePtr a = state_and();
    while (true) {
      if (accept(Tok::Pipe)) {
        StlStatePtr b = state_and();
        a = stl::not_(stl::and_(stl::not_(a), stl::not_(b)));
      } else if (accept(Tok::Arrow)) {
        StlStatePtr b = state_or();
        a = stl::not_(stl::and_(a, stl::not_(b)));
        break;
      } else {
        break;
      }
    }
    return a;
  }

  StlStatePtr state_and() {
    StlStatePtr a = state_semi();
    while (accept(Tok::Amp)) a = stl::and_(a, state_semi());
    return a;
  }

  static bool semi_kw(const std::string& s) {
    return s == "UU" || s == "RR" || s == "SS" || s == "BB";
  }

  StlStatePtr state_semi() {
    StlStatePtr a = state_unary();
    while (lex_.peek().kind == Tok::Ident && semi_kw(lex_.peek().text)) {
      if (tag_ != LogicTag::Stl) fail("semilattice operator outside stl");
      std::string op = lex_.take().text;
      expect(Tok::LBrace, "'{'");
      StlStatePtr chi = state_or();
      expect(Tok::RBrace, "'}'");
      StlStatePtr b = state_unary();
      if (op == "UU") a = stl::uu(chi, a, b);
      else if (op == "RR") a = stl::rr(chi, a, b);
      else if (op == "SS") a = stl::ss(chi, a, b);
      else a = stl::bb(chi, a, b);
    }
    return a;
  }

  StlStatePtr state_unary() {
    if (accept(Tok::Bang)) return stl::not_(state_unary());
    if (lex_.peek().kind == Tok::Ident) {
      const std::string& kw = lex_.peek().text;
      if (kw == "E") {
        lex_.take();
        return stl::exists(path_unary());
      }
      if (kw == "A") {
        lex_.take();
        return stl::forall(path_unary());
      }
      if (kw == "D") {
        lex_.take();
        expect(Tok::LBrace, "'{'");
        uint32_t k = expect(Tok::Number, "grade").number;
        expect(Tok::RBrace, "'}'");
        return stl::count(k, state_unary());
      }
    }
    return state_primary();
  }

  StlStatePtr state_primary() {
    if (accept(Tok::LParen)) {
      StlStatePtr f = state_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (lex_.peek().kind != Tok::Ident) fail("expected a state formula", {"identifier", "'('", "'!'"});
    std::string id = lex_.take().text;
    if (id == "tt") return stl::tt();
    if (id == "ff") return stl::not_(stl::tt());
    return stl::atom(id);
  }

  StlPathPtr path_or() {
    StlPathPtr a = path_and();
    while (true) {
      if (accept(Tok::Pipe)) {
        StlPathPtr b = path_and();
        a = stl::pnot(stl::pand(stl::pnot(a), stl::pnot(b)));
      } else if (accept(Tok::Arrow)) {
        StlPathPtr b = path_or();
        a = stl::pnot(stl::pand(a, stl::pnot(b)));
        break;
      } else {
        break;
      }
    }
    return a;
  }

  StlPathPtr path_and() {
    StlPathPtr a = path_until();
    while (accept(Tok::Amp)) a = stl::pand(a, path_until());
    return a;
  }

  StlPathPtr path_until() {
    StlPathPtr a = path_semi();
    if (ident_is("U")) {
      lex_.take();
      return stl::until(a, path_until());
    }
    return a;
  }

  // `!` and `&` read the same in both sorts, so a state formula re-parsed in
  // path position comes back with path connectives; lower them back when a
  // state context demands it
  static StlStatePtr lower_to_state(const StlPathPtr& p) {
    switch (p->kind) {
      case StlPath::Kind::State:
        return p->s;
      case StlPath::Kind::Not: {
        StlStatePtr s = lower_to_state(p->a);
        return s ? stl::not_(s) : nullptr;
      }
      case StlPath::Kind::And: {
        StlStatePtr a = lower_to_state(p->a);
        StlStatePtr b = lower_to_state(p->b);
        return a && b ? stl::and_(a, b) : nullptr;
      }
      default:
        return nullptr;  // genuinely temporal
    }
  }

  // semilattice operators are state connectives; when one shows up in path
  // position the left operand must lower to a state formula
  StlPathPtr path_semi() {
    StlPathPtr a = path_unary();
    while (lex_.peek().kind == Tok::Ident && semi_kw(lex_.peek().text)) {
      if (tag_ != LogicTag::Stl) fail("semilattice operator outside stl");
      StlStatePtr s = lower_to_state(a);
      if (!s) fail("semilattice operator applied to a path formula");
      std::string op = lex_.take().text;
      expect(Tok::LBrace, "'{'");
      StlStatePtr chi = state_or();
      expect(Tok::RBrace, "'}'");
      StlStatePtr b = state_unary();
      if (op == "UU") s = stl::uu(chi, s, b);
      else if (op == "RR") s = stl::rr(chi, s, b);
      else if (op == "SS") s = stl::ss(chi, s, b);
      else s = stl::bb(chi, s, b);
      a = stl::embed(s);
    }
    return a;
  }

  StlPathPtr path_unary() {
    if (accept(Tok::Bang)) return stl::pnot(path_unary());
    if (ident_is("X")) {
      lex_.take();
      return stl::next(path_unary());
    }
    if (ident_is("F")) {
      lex_.take();
      return stl::until(stl::embed(stl::tt()), path_unary());
    }
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      StlPathPtr f = path_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    return stl::embed(state_unary());
  }

  Lexer lex_;
  LogicTag tag_;
};

}  // namespace

MsolPtr parse_msol(std::string_view text) { return Parser(text, LogicTag::Msol).msol_formula(); }
GmcPtr parse_gmc(std::string_view text) { return Parser(text, LogicTag::Gmc).gmc_formula(); }
CctlStatePtr parse_cctl(std::string_view text) { return Parser(text, LogicTag::Cctl).cctl_formula(); }
StlStatePtr parse_stl(std::string_view text) { return Parser(text, LogicTag::Stl).stl_formula(); }

AnyFormula parse_any(std::string_view text, LogicTag tag) {
  AnyFormula out;
  out.tag = tag;
  switch (tag) {
    case LogicTag::Msol: out.msol = parse_msol(text); break;
    case LogicTag::Gmc: out.gmc = parse_gmc(text); break;
    case LogicTag::Cctl: out.cctl = parse_cctl(text); break;
    case LogicTag::Stl: out.stl = parse_stl(text); break;
  }
  return out;
}

std::vector<AnyFormula> parse_corpus(std::string_view text, LogicTag tag) {
  std::vector<AnyFormula> out;
  size_t pos = 0;
  int line_no = 1;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) {
      try {
        out.push_back(parse_any(line, tag));
      } catch (ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.span, e.expected);
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
    ++line_no;
  }
  return out;
}

// ---------------------------------------------------------------------------
// printers
// ---------------------------------------------------------------------------

namespace {

bool msol_quant(const MsolPtr& f) {
  using K = MsolNode::Kind;
  return f->kind == K::Exists1 || f->kind == K::Forall1 || f->kind == K::Exists2 || f->kind == K::Forall2;
}

void print_msol(const MsolPtr& f, std::string& out);

void print_msol_operand(const MsolPtr& f, std::string& out) {
  if (msol_quant(f)) {
    out += '(';
    print_msol(f, out);
    out += ')';
  } else {
    print_msol(f, out);
  }
}

void print_msol(const MsolPtr& f, std::string& out) {
  using K = MsolNode::Kind;
  switch (f->kind) {
    case K::Atom:
      out += f->ap;
      out += '(';
      out += f->v1;
      out += ')';
      return;
    case K::Leq:
      out += f->v1;
      out += " <= ";
      out += f->v2;
      return;
    case K::Member:
      out += f->v1;
      out += " in ";
      out += f->v2;
      return;
    case K::Not: {
      out += '!';
      const auto k = f->a->kind;
      bool bare = k == K::Atom || k == K::Not || k == K::And || k == K::Or || k == K::Implies;
      if (bare) {
        print_msol(f->a, out);
      } else {
        out += '(';
        print_msol(f->a, out);
        out += ')';
      }
      return;
    }
    case K::And:
    case K::Or:
    case K::Implies: {
      out += '(';
      print_msol_operand(f->a, out);
      out += f->kind == K::And ? " & " : (f->kind == K::Or ? " | " : " -> ");
      print_msol_operand(f->b, out);
      out += ')';
      return;
    }
    case K::Exists1:
    case K::Forall1:
      out += f->kind == K::Exists1 ? "E " : "A ";
      out += f->v1;
      out += ". ";
      print_msol(f->a, out);
      return;
    case K::Exists2:
    case K::Forall2:
      out += f->kind == K::Exists2 ? 'E' : 'A';
      out += quant_kind_letter(f->qkind);
      out += ' ';
      out += f->v2;
      out += ". ";
      print_msol(f->a, out);
      return;
  }
}

bool gmc_atomic(const GmcPtr& f) {
  using K = GmcNode::Kind;
  switch (f->kind) {
    case K::False:
    case K::True:
    case K::Atom:
    case K::Var:
    case K::Not:
    case K::Diamond:
    case K::Box:
    case K::And:  // self-parenthesized
    case K::Or:
      return true;
    default:
      return false;
  }
}

void print_gmc(const GmcPtr& f, std::string& out) {
  using K = GmcNode::Kind;
  auto operand = [&out](const GmcPtr& g) {
    if (gmc_atomic(g)) {
      print_gmc(g, out);
    } else {
      out += '(';
      print_gmc(g, out);
      out += ')';
    }
  };
  switch (f->kind) {
    case K::False: out += "ff"; return;
    case K::True: out += "tt"; return;
    case K::Atom:
    case K::Var:
      out += f->name;
      return;
    case K::Not:
      out += '!';
      operand(f->a);
      return;
    case K::And:
    case K::Or:
      out += '(';
      operand(f->a);
      out += f->kind == K::And ? " & " : " | ";
      operand(f->b);
      out += ')';
      return;
    case K::Diamond:
      out += '<';
      out += std::to_string(f->grade);
      out += "> ";
      operand(f->a);
      return;
    case K::Box:
      out += '[';
      out += std::to_string(f->grade);
      out += "] ";
      operand(f->a);
      return;
    case K::Mu:
    case K::Nu:
      out += f->kind == K::Mu ? "mu " : "nu ";
      out += f->name;
      out += ". ";
      print_gmc(f->a, out);
      return;
  }
}

void print_stl_state(const StlStatePtr& f, std::string& out);
void print_stl_path(const StlPathPtr& f, std::string& out);

void print_stl_state(const StlStatePtr& f, std::string& out) {
  using K = StlState::Kind;
  auto state_operand = [&out](const StlStatePtr& g) {
    bool bare;
    switch (g->kind) {
      case K::True:
      case K::Atom:
      case K::Not:
      case K::And:
      case K::Count:
      case K::UU:
      case K::RR:
      case K::SS:
      case K::BB:
        bare = true;
        break;
      default:
        bare = false;  // E / A bind a trailing path formula
    }
    if (bare) {
      print_stl_state(g, out);
    } else {
      out += '(';
      print_stl_state(g, out);
      out += ')';
    }
  };
  switch (f->kind) {
    case K::True: out += "tt"; return;
    case K::Atom: out += f->ap; return;
    case K::Not:
      out += '!';
      state_operand(f->a);
      return;
    case K::And:
      out += '(';
      state_operand(f->a);
      out += " & ";
      state_operand(f->b);
      out += ')';
      return;
    case K::Exists:
    case K::Forall:
      out += f->kind == K::Exists ? "E " : "A ";
      print_stl_path(f->p, out);
      return;
    case K::Count:
      out += "D{";
      out += std::to_string(f->grade);
      out += "} ";
      state_operand(f->a);
      return;
    case K::UU:
    case K::RR:
    case K::SS:
    case K::BB: {
      out += '(';
      state_operand(f->a);
      out += f->kind == K::UU ? " UU{" : (f->kind == K::RR ? " RR{" : (f->kind == K::SS ? " SS{" : " BB{"));
      print_stl_state(f->chi, out);
      out += "} ";
      state_operand(f->b);
      out += ')';
      return;
    }
  }
}

void print_stl_path(const StlPathPtr& f, std::string& out) {
  using K = StlPath::Kind;
  switch (f->kind) {
    case K::State:
      print_stl_state(f->s, out);
      return;
    case K::Not: {
      out += '!';
      // E / A swallow the rest of the line, so parenthesize them here
      if (f->a->kind == K::State &&
          (f->a->s->kind == StlState::Kind::Exists || f->a->s->kind == StlState::Kind::Forall)) {
        out += '(';
        print_stl_path(f->a, out);
        out += ')';
      } else {
        print_stl_path(f->a, out);
      }
      return;
    }
    case K::And:
    case K::Until:
      out += '(';
      print_stl_path(f->a, out);
      out += f->kind == K::And ? " & " : " U ";
      print_stl_path(f->b, out);
      out += ')';
      return;
    case K::Next: {
      out += "X ";
      if (f->a->kind == K::State &&
          (f->a->s->kind == StlState::Kind::Exists || f->a->s->kind == StlState::Kind::Forall)) {
        out += '(';
        print_stl_path(f->a, out);
        out += ')';
      } else {
        print_stl_path(f->a, out);
      }
      return;
    }
  }
}

}  // namespace

std::string print(const MsolPtr& f) {
  std::string out;
  print_msol(f, out);
  return out;
}

std::string print(const GmcPtr& f) {
  std::string out;
  print_gmc(f, out);
  return out;
}

std::string print(const StlStatePtr& f) {
  std::string out;
  print_stl_state(f, out);
  return out;
}

std::string print(const StlPathPtr& f) {
  std::string out;
  print_stl_path(f, out);
  return out;
}

std::string print(const CctlStatePtr& f) { return print(stl::from_cctl(f)); }

std::string print(const CctlPathPtr& f) {
  std::string out;
  print_stl_path(stl::from_cctl(cctl::exists(f))->p, out);
  return out;
}

std::string print(const AnyFormula& f) {
  switch (f.tag) {
    case LogicTag::Msol: return print(f.msol);
    case LogicTag::Gmc: return print(f.gmc);
    case LogicTag::Cctl: return print(f.cctl);
    case LogicTag::Stl: return print(f.stl);
  }
  return {};
}

}  // namespace mtlkit
