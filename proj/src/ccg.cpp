// ccgdisco/ccg.cpp - categorial types, rule schemas, derivation validation
#include "ccgdisco/ccg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ccgdisco
{

TypeParseError::TypeParseError(const std::string & what, std::size_t offset)
: Error(what + " at byte " + std::to_string(offset)), offset_(offset)
{
}

struct CcgType::Node
{
  Kind kind;
  std::string name;
  CcgType left;
  CcgType right;
  std::size_t depth;
};

CcgType CcgType::atom(std::string name)
{
  if (name.empty()) throw Error("atom name must be non-empty");
  return CcgType(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}, 1}));
}

CcgType CcgType::forward(CcgType result, CcgType argument)
{
  const std::size_t d = 1 + std::max(result.depth(), argument.depth());
  return CcgType(
    std::make_shared<const Node>(Node{Kind::Forward, {}, std::move(result), std::move(argument), d}));
}

CcgType CcgType::backward(CcgType argument, CcgType result)
{
  const std::size_t d = 1 + std::max(result.depth(), argument.depth());
  return CcgType(
    std::make_shared<const Node>(Node{Kind::Backward, {}, std::move(argument), std::move(result), d}));
}

CcgType::Kind CcgType::kind() const { return node_->kind; }
const std::string & CcgType::name() const { return node_->name; }
const CcgType & CcgType::left() const { return node_->left; }
const CcgType & CcgType::right() const { return node_->right; }
std::size_t CcgType::depth() const { return node_ ? node_->depth : 0; }

const CcgType & CcgType::result() const
{
  return kind() == Kind::Forward ? node_->left : node_->right;
}

const CcgType & CcgType::argument() const
{
  return kind() == Kind::Forward ? node_->right : node_->left;
}

bool operator==(const CcgType & a, const CcgType & b)
{
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  if (a.is_atom()) return a.name() == b.name();
  return a.left() == b.left() && a.right() == b.right();
}

namespace
{

std::string slash_operand(const CcgType & t)
{
  return t.is_atom() ? t.name() : "(" + t.str() + ")";
}

std::string arrow_operand(const CcgType & t)
{
  return t.is_atom() ? t.name() : "(" + t.arrow_str() + ")";
}

}  // namespace

std::string CcgType::str() const
{
  switch (kind()) {
    case Kind::Atom:
      return name();
    case Kind::Forward:
      return slash_operand(result()) + "/" + slash_operand(argument());
    case Kind::Backward:
      return slash_operand(result()) + "\\" + slash_operand(argument());
  }
  return {};
}

std::string CcgType::arrow_str() const
{
  switch (kind()) {
    case Kind::Atom:
      return name();
    case Kind::Forward:
      return arrow_operand(left()) + " ⤙ " + arrow_operand(right());
    case Kind::Backward:
      return arrow_operand(left()) + " ⤚ " + arrow_operand(right());
  }
  return {};
}

std::string normalize_atom(std::string_view raw)
{
  std::string name(raw.substr(0, raw.find('[')));
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (lower == "conj") return std::string(atoms::CONJ);
  return name;
}

// ---------------------------------------------------------------------------
// Type parsing

namespace
{

constexpr std::string_view kForwardArrow = "⤙";
constexpr std::string_view kBackwardArrow = "⤚";

bool is_ident_start(unsigned char c) { return std::isalpha(c) != 0; }
bool is_ident_continue(unsigned char c) { return std::isalnum(c) != 0 || c == '_'; }

class TypeParser
{
public:
  TypeParser(std::string_view text, bool arrows) : text_(text), arrows_(arrows) {}

  CcgType parse()
  {
    skip_ws();
    if (eof()) throw TypeParseError("empty input", pos_);
    CcgType t = expr();
    skip_ws();
    if (!eof()) {
      if (text_[pos_] == ')') throw TypeParseError("unbalanced parentheses", pos_);
      if (arrows_ && (at(kForwardArrow) || at(kBackwardArrow))) {
        throw TypeParseError("arrow notation requires parentheses", pos_);
      }
      unknown_token();
    }
    return t;
  }

private:
  [[nodiscard]] bool eof() const { return pos_ >= text_.size(); }
  [[nodiscard]] bool at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void skip_ws()
  {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  [[noreturn]] void unknown_token() const
  {
    // Report the whole UTF-8 sequence so the message stays printable.
    std::size_t len = 1;
    const auto c = static_cast<unsigned char>(text_[pos_]);
    if (c >= 0xF0) {
      len = 4;
    } else if (c >= 0xE0) {
      len = 3;
    } else if (c >= 0xC0) {
      len = 2;
    }
    throw TypeParseError(
      "unknown token '" + std::string(text_.substr(pos_, len)) + "'", pos_);
  }

  CcgType expr()
  {
    CcgType lhs = primary();
    if (arrows_) {
      skip_ws();
      if (at(kForwardArrow)) {
        pos_ += kForwardArrow.size();
        return CcgType::forward(lhs, primary());
      }
      if (at(kBackwardArrow)) {
        pos_ += kBackwardArrow.size();
        return CcgType::backward(lhs, primary());
      }
      return lhs;
    }
    for (;;) {
      skip_ws();
      if (eof()) return lhs;
      const char c = text_[pos_];
      if (c == '/') {
        ++pos_;
        lhs = CcgType::forward(lhs, primary());
      } else if (c == '\\') {
        ++pos_;
        lhs = CcgType::backward(primary(), lhs);
      } else {
        return lhs;
      }
    }
  }

  CcgType primary()
  {
    skip_ws();
    if (eof()) throw TypeParseError("expected type", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      CcgType inner = expr();
      skip_ws();
      if (eof()) throw TypeParseError("unbalanced parentheses", open);
      if (text_[pos_] != ')') {
        if (arrows_ && (at(kForwardArrow) || at(kBackwardArrow))) {
          throw TypeParseError("arrow notation requires parentheses", pos_);
        }
        unknown_token();
      }
      ++pos_;
      return inner;
    }
    if (c == ')') throw TypeParseError("unbalanced parentheses", pos_);
    if (!is_ident_start(static_cast<unsigned char>(c))) unknown_token();
    const std::size_t start = pos_;
    while (!eof() && is_ident_continue(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (!eof() && text_[pos_] == '[') {
      const std::size_t bracket = pos_;
      while (!eof() && text_[pos_] != ']') ++pos_;
      if (eof()) throw TypeParseError("unterminated feature", bracket);
      ++pos_;
    }
    return CcgType::atom(normalize_atom(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  bool arrows_;
  std::size_t pos_ = 0;
};

}  // namespace

CcgType parse_type(std::string_view text)
{
  const bool arrows = text.find(kForwardArrow) != std::string_view::npos ||
                      text.find(kBackwardArrow) != std::string_view::npos;
  return TypeParser(text, arrows).parse();
}

// ---------------------------------------------------------------------------
// Rules

std::string_view rule_name(RuleKind k)
{
  switch (k) {
    case RuleKind::Lex: return "LEX";
    case RuleKind::FA: return "FA";
    case RuleKind::BA: return "BA";
    case RuleKind::FC: return "FC";
    case RuleKind::BC: return "BC";
    case RuleKind::GFC: return "GFC";
    case RuleKind::GBC: return "GBC";
    case RuleKind::FTR: return "FTR";
    case RuleKind::BTR: return "BTR";
    case RuleKind::FCX: return "FCX";
    case RuleKind::BCX: return "BCX";
    case RuleKind::GFCX: return "GFCX";
    case RuleKind::GBCX: return "GBCX";
    case RuleKind::Unary: return "UNARY";
    case RuleKind::Conj: return "CONJ";
  }
  return "?";
}

int RuleLabel::arity() const
{
  switch (kind) {
    case RuleKind::Lex: return 0;
    case RuleKind::FTR:
    case RuleKind::BTR:
    case RuleKind::Unary: return 1;
    default: return 2;
  }
}

bool RuleLabel::is_crossed() const
{
  return kind == RuleKind::FCX || kind == RuleKind::BCX || kind == RuleKind::GFCX ||
         kind == RuleKind::GBCX;
}

std::string RuleLabel::str() const
{
  std::string s(rule_name(kind));
  switch (kind) {
    case RuleKind::GFC:
    case RuleKind::GBC:
    case RuleKind::GFCX:
    case RuleKind::GBCX:
      s += ":" + std::to_string(degree);
      break;
    case RuleKind::FTR:
    case RuleKind::BTR:
    case RuleKind::Unary:
      if (target) s += ":" + target->str();
      break;
    default:
      break;
  }
  return s;
}

bool operator==(const RuleLabel & a, const RuleLabel & b)
{
  return a.kind == b.kind && a.degree == b.degree && a.target == b.target;
}

namespace
{

[[noreturn]] void mismatch(
  const RuleLabel & rule, std::string_view pattern, const std::vector<CcgType> & inputs)
{
  std::ostringstream os;
  os << rule.str() << " expects " << pattern << "; got (";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i != 0) os << ", ";
    os << inputs[i].str();
  }
  os << ")";
  throw RuleError(os.str());
}

void check_degree(const RuleLabel & rule)
{
  if (rule.degree < 1 || rule.degree > kMaxCompositionDegree) {
    throw RuleError(
      rule.str() + ": degree must be between 1 and " + std::to_string(kMaxCompositionDegree));
  }
}

// Peels `count` outer slash layers of the given direction. The peeled
// arguments are returned outermost first.
std::optional<CcgType> peel(
  CcgType t, CcgType::Kind dir, int count, std::vector<CcgType> & dollars)
{
  for (int i = 0; i < count; ++i) {
    if (t.kind() != dir) return std::nullopt;
    dollars.push_back(t.argument());
    t = t.result();
  }
  return t;
}

CcgType rewrap(CcgType core, CcgType::Kind dir, const std::vector<CcgType> & dollars)
{
  for (auto it = dollars.rbegin(); it != dollars.rend(); ++it) {
    core = dir == CcgType::Kind::Forward ? CcgType::forward(core, *it)
                                         : CcgType::backward(*it, core);
  }
  return core;
}

}  // namespace

CcgType apply_rule(const RuleLabel & rule, const std::vector<CcgType> & in)
{
  using K = CcgType::Kind;
  if (rule.kind == RuleKind::Lex) throw RuleError("LEX has no inputs to combine");
  if (static_cast<int>(in.size()) != rule.arity()) {
    throw RuleError(
      rule.str() + ": expected " + std::to_string(rule.arity()) + " input(s), got " +
      std::to_string(in.size()));
  }

  switch (rule.kind) {
    case RuleKind::FA:
      if (!in[0].is_forward() || !(in[0].argument() == in[1])) mismatch(rule, "(X/Y, Y)", in);
      return in[0].result();

    case RuleKind::BA:
      if (!in[1].is_backward() || !(in[1].argument() == in[0])) mismatch(rule, "(Y, X\\Y)", in);
      return in[1].result();

    case RuleKind::FC:
      if (!in[0].is_forward() || !in[1].is_forward() || !(in[0].argument() == in[1].result())) {
        mismatch(rule, "(X/Y, Y/Z)", in);
      }
      return CcgType::forward(in[0].result(), in[1].argument());

    case RuleKind::BC:
      if (!in[0].is_backward() || !in[1].is_backward() || !(in[0].result() == in[1].argument())) {
        mismatch(rule, "(Y\\Z, X\\Y)", in);
      }
      return CcgType::backward(in[0].argument(), in[1].result());

    case RuleKind::GFC: {
      check_degree(rule);
      std::vector<CcgType> dollars;
      auto core = peel(in[1], K::Forward, rule.degree - 1, dollars);
      if (!in[0].is_forward() || !core || !core->is_forward() ||
          !(core->result() == in[0].argument())) {
        mismatch(rule, "(X/Y, (Y/Z)/$)", in);
      }
      return rewrap(CcgType::forward(in[0].result(), core->argument()), K::Forward, dollars);
    }

    case RuleKind::GBC: {
      check_degree(rule);
      std::vector<CcgType> dollars;
      auto core = peel(in[0], K::Backward, rule.degree - 1, dollars);
      if (!in[1].is_backward() || !core || !core->is_backward() ||
          !(core->result() == in[1].argument())) {
        mismatch(rule, "((Y\\Z)\\$, X\\Y)", in);
      }
      return rewrap(CcgType::backward(core->argument(), in[1].result()), K::Backward, dollars);
    }

    case RuleKind::FTR:
      if (!rule.target) throw RuleError("FTR requires a target type");
      return CcgType::forward(*rule.target, CcgType::backward(in[0], *rule.target));

    case RuleKind::BTR:
      if (!rule.target) throw RuleError("BTR requires a target type");
      return CcgType::backward(CcgType::forward(*rule.target, in[0]), *rule.target);

    case RuleKind::FCX:
      if (!in[0].is_forward() || !in[1].is_backward() || !(in[1].result() == in[0].argument())) {
        mismatch(rule, "(X/Y, Y\\Z)", in);
      }
      return CcgType::backward(in[1].argument(), in[0].result());

    case RuleKind::BCX:
      if (!in[0].is_forward() || !in[1].is_backward() || !(in[1].argument() == in[0].result())) {
        mismatch(rule, "(Y/Z, X\\Y)", in);
      }
      return CcgType::forward(in[1].result(), in[0].argument());

    case RuleKind::GFCX: {
      check_degree(rule);
      std::vector<CcgType> dollars;
      auto core = peel(in[1], K::Backward, rule.degree - 1, dollars);
      if (!in[0].is_forward() || !core || !core->is_backward() ||
          !(core->result() == in[0].argument())) {
        mismatch(rule, "(X/Y, (Y\\Z)\\$)", in);
      }
      return rewrap(CcgType::backward(core->argument(), in[0].result()), K::Backward, dollars);
    }

    case RuleKind::GBCX: {
      check_degree(rule);
      std::vector<CcgType> dollars;
      auto core = peel(in[0], K::Forward, rule.degree - 1, dollars);
      if (!in[1].is_backward() || !core || !core->is_forward() ||
          !(in[1].argument() == core->result())) {
        mismatch(rule, "((Y/Z)/$, X\\Y)", in);
      }
      return rewrap(CcgType::forward(in[1].result(), core->argument()), K::Forward, dollars);
    }

    case RuleKind::Unary:
      if (!rule.target) throw RuleError("UNARY requires a destination type");
      return *rule.target;

    case RuleKind::Conj:
      if (!in[0].is_atom() || in[0].name() != atoms::CONJ) mismatch(rule, "(conj, X)", in);
      return CcgType::backward(in[1], in[1]);

    case RuleKind::Lex:
      break;
  }
  throw RuleError("unhandled rule " + rule.str());
}

// ---------------------------------------------------------------------------
// Derivations

Derivation Derivation::leaf(std::string word, CcgType type)
{
  Derivation d;
  d.kind = Kind::Leaf;
  d.word = std::move(word);
  d.rule = RuleLabel::of(RuleKind::Lex);
  d.type = std::move(type);
  return d;
}

Derivation Derivation::unary(RuleLabel rule, Derivation child, CcgType type)
{
  Derivation d;
  d.kind = Kind::Unary;
  d.rule = std::move(rule);
  d.type = std::move(type);
  d.children.push_back(std::move(child));
  return d;
}

Derivation Derivation::binary(RuleLabel rule, Derivation left, Derivation right, CcgType type)
{
  Derivation d;
  d.kind = Kind::Binary;
  d.rule = std::move(rule);
  d.type = std::move(type);
  d.children.push_back(std::move(left));
  d.children.push_back(std::move(right));
  return d;
}

std::vector<std::string> Derivation::words() const
{
  std::vector<std::string> out;
  if (kind == Kind::Leaf) {
    out.push_back(word);
    return out;
  }
  for (const auto & c : children) {
    auto w = c.words();
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::size_t Derivation::size() const
{
  std::size_t n = 1;
  for (const auto & c : children) n += c.size();
  return n;
}

bool operator==(const Derivation & a, const Derivation & b)
{
  return a.kind == b.kind && a.word == b.word && a.rule == b.rule && a.type == b.type &&
         a.children == b.children;
}

namespace
{

void validate_into(const Derivation & d, const std::string & path, std::vector<Violation> & out)
{
  const std::string here = path.empty() ? "/" : path;
  if (d.kind == Derivation::Kind::Leaf) {
    if (d.word.empty()) out.push_back({here, "leaf word is empty"});
    return;
  }
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    validate_into(d.children[i], path + "/" + std::to_string(i), out);
  }
  if (static_cast<int>(d.children.size()) != d.rule.arity()) {
    out.push_back(
      {here, d.rule.str() + " node has " + std::to_string(d.children.size()) + " children"});
    return;
  }
  std::vector<CcgType> inputs;
  inputs.reserve(d.children.size());
  for (const auto & c : d.children) inputs.push_back(c.type);
  try {
    const CcgType produced = apply_rule(d.rule, inputs);
    if (!(produced == d.type)) {
      out.push_back(
        {here, d.rule.str() + " produces " + produced.str() + " but node has " + d.type.str()});
    }
  } catch (const RuleError & e) {
    out.push_back({here, e.what()});
  }
}

}  // namespace

std::vector<Violation> validate(const Derivation & d)
{
  std::vector<Violation> out;
  validate_into(d, "", out);
  return out;
}

}  // namespace ccgdisco
