// ccgdisco/biclosed.cpp - biclosed objects, typed terms, derivation lowering
#include "ccgdisco/biclosed.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace ccgdisco
{

// ---------------------------------------------------------------------------
// Objects

struct BObject::Node
{
  Kind kind;
  std::string name;
  std::vector<BObject> parts;  // tensor factors, or {left, right} of a hom
};

BObject::BObject() : node_(nullptr) {}

BObject BObject::base(std::string atom)
{
  return BObject(std::make_shared<const Node>(Node{Kind::Base, std::move(atom), {}}));
}

BObject BObject::tensor(const BObject & a, const BObject & b)
{
  std::vector<BObject> fs = a.factors();
  for (auto & f : b.factors()) fs.push_back(std::move(f));
  return tensor_of(fs);
}

BObject tensor_of(const std::vector<BObject> & factors)
{
  std::vector<BObject> flat;
  for (const auto & f : factors) {
    for (auto & g : f.factors()) flat.push_back(std::move(g));
  }
  if (flat.empty()) return BObject::unit();
  if (flat.size() == 1) return flat.front();
  return BObject(std::make_shared<const BObject::Node>(
    BObject::Node{BObject::Kind::Tensor, {}, std::move(flat)}));
}

BObject BObject::left_hom(BObject a, BObject c)
{
  return BObject(std::make_shared<const Node>(Node{Kind::LeftHom, {}, {std::move(a), std::move(c)}}));
}

BObject BObject::right_hom(BObject c, BObject b)
{
  return BObject(std::make_shared<const Node>(Node{Kind::RightHom, {}, {std::move(c), std::move(b)}}));
}

BObject::Kind BObject::kind() const { return node_ ? node_->kind : Kind::Unit; }

const std::string & BObject::name() const
{
  static const std::string empty;
  return node_ ? node_->name : empty;
}

std::vector<BObject> BObject::factors() const
{
  switch (kind()) {
    case Kind::Unit: return {};
    case Kind::Tensor: return node_->parts;
    default: return {*this};
  }
}

const BObject & BObject::left() const { return node_->parts.at(0); }
const BObject & BObject::right() const { return node_->parts.at(1); }

namespace
{

std::string operand(const BObject & o)
{
  switch (o.kind()) {
    case BObject::Kind::Unit:
    case BObject::Kind::Base:
      return o.str();
    default:
      return "(" + o.str() + ")";
  }
}

}  // namespace

std::string BObject::str() const
{
  switch (kind()) {
    case Kind::Unit:
      return "I";
    case Kind::Base:
      return name();
    case Kind::Tensor: {
      std::string s;
      for (std::size_t i = 0; i < node_->parts.size(); ++i) {
        if (i != 0) s += " ⊗ ";
        s += operand(node_->parts[i]);
      }
      return s;
    }
    case Kind::LeftHom:
      return operand(left()) + " ⤚ " + operand(right());
    case Kind::RightHom:
      return operand(left()) + " ⤙ " + operand(right());
  }
  return {};
}

bool operator==(const BObject & a, const BObject & b)
{
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == BObject::Kind::Unit) return true;
  return a.node_->name == b.node_->name && a.node_->parts == b.node_->parts;
}

BObject to_bobject(const CcgType & t)
{
  switch (t.kind()) {
    case CcgType::Kind::Atom:
      return BObject::base(t.name());
    case CcgType::Kind::Forward:
      return BObject::right_hom(to_bobject(t.result()), to_bobject(t.argument()));
    case CcgType::Kind::Backward:
      return BObject::left_hom(to_bobject(t.argument()), to_bobject(t.result()));
  }
  return {};
}

// ---------------------------------------------------------------------------
// Terms

struct BTerm::Node
{
  Kind kind;
  std::string label;
  BObject object;
  std::vector<BTerm> children;
  RuleKind direction = RuleKind::Lex;
  std::vector<BObject> cross;  // x, y, z
  std::vector<BObject> dollars;
  BObject dom;
  BObject cod;
};

namespace
{

// Splits a tensor into a prefix matching `head` and the remaining factors.
std::optional<BObject> strip_prefix(const BObject & whole, const BObject & head)
{
  const auto w = whole.factors();
  const auto h = head.factors();
  if (h.size() > w.size()) return std::nullopt;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(w[i] == h[i])) return std::nullopt;
  }
  return tensor_of(std::vector<BObject>(w.begin() + static_cast<std::ptrdiff_t>(h.size()), w.end()));
}

std::optional<BObject> strip_suffix(const BObject & whole, const BObject & tail)
{
  const auto w = whole.factors();
  const auto t = tail.factors();
  if (t.size() > w.size()) return std::nullopt;
  const std::size_t off = w.size() - t.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(w[off + i] == t[i])) return std::nullopt;
  }
  return tensor_of(std::vector<BObject>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(off)));
}

}  // namespace

BTerm BTerm::id(BObject a)
{
  Node n{Kind::Id, {}, a, {}, RuleKind::Lex, {}, {}, a, a};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::word(std::string label, BObject a)
{
  if (label.empty()) throw TermTypeError("word label must be non-empty");
  Node n{Kind::Word, std::move(label), a, {}, RuleKind::Lex, {}, {}, BObject::unit(), a};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::compose(BTerm g, BTerm f)
{
  if (!(f.cod() == g.dom())) {
    throw TermTypeError("compose: cod " + f.cod().str() + " does not match dom " + g.dom().str());
  }
  BObject dom = f.dom();
  BObject cod = g.cod();
  Node n{Kind::Compose, {}, {}, {std::move(g), std::move(f)}, RuleKind::Lex, {}, {}, dom, cod};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::tensor(BTerm f, BTerm g)
{
  BObject dom = BObject::tensor(f.dom(), g.dom());
  BObject cod = BObject::tensor(f.cod(), g.cod());
  Node n{Kind::Tensor, {}, {}, {std::move(f), std::move(g)}, RuleKind::Lex, {}, {}, dom, cod};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::curry_left(BTerm f, BObject a)
{
  auto rest = strip_prefix(f.dom(), a);
  if (!rest) throw TermTypeError("curry-l: " + a.str() + " is not a prefix of " + f.dom().str());
  BObject cod = BObject::left_hom(a, f.cod());
  Node n{Kind::CurryL, {}, a, {std::move(f)}, RuleKind::Lex, {}, {}, *rest, cod};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::curry_right(BTerm f, BObject b)
{
  auto rest = strip_suffix(f.dom(), b);
  if (!rest) throw TermTypeError("curry-r: " + b.str() + " is not a suffix of " + f.dom().str());
  BObject cod = BObject::right_hom(f.cod(), b);
  Node n{Kind::CurryR, {}, b, {std::move(f)}, RuleKind::Lex, {}, {}, *rest, cod};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::uncurry_left(BTerm g)
{
  if (g.cod().kind() != BObject::Kind::LeftHom) {
    throw TermTypeError("uncurry-l: codomain " + g.cod().str() + " is not a left hom");
  }
  BObject dom = BObject::tensor(g.cod().left(), g.dom());
  BObject cod = g.cod().right();
  Node n{Kind::UncurryL, {}, {}, {std::move(g)}, RuleKind::Lex, {}, {}, dom, cod};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::uncurry_right(BTerm g)
{
  if (g.cod().kind() != BObject::Kind::RightHom) {
    throw TermTypeError("uncurry-r: codomain " + g.cod().str() + " is not a right hom");
  }
  BObject dom = BObject::tensor(g.dom(), g.cod().right());
  BObject cod = g.cod().left();
  Node n{Kind::UncurryR, {}, {}, {std::move(g)}, RuleKind::Lex, {}, {}, dom, cod};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm BTerm::cross(RuleKind direction, BObject x, BObject y, BObject z, std::vector<BObject> dollars)
{
  BObject left;
  BObject right;
  BObject cod;
  switch (direction) {
    case RuleKind::FCX:
    case RuleKind::GFCX: {
      // (X ⤙ Y) ⊗ ($ₖ ⤚ … (Z ⤚ Y)) → $ₖ ⤚ … (Z ⤚ X)
      left = BObject::right_hom(x, y);
      right = BObject::left_hom(z, y);
      cod = BObject::left_hom(z, x);
      for (const auto & d : dollars) {
        right = BObject::left_hom(d, right);
        cod = BObject::left_hom(d, cod);
      }
      break;
    }
    case RuleKind::BCX:
    case RuleKind::GBCX: {
      // ((Y ⤙ Z) ⤙ … $ₖ) ⊗ (Y ⤚ X) → (X ⤙ Z) ⤙ … $ₖ
      left = BObject::right_hom(y, z);
      right = BObject::left_hom(y, x);
      cod = BObject::right_hom(x, z);
      for (const auto & d : dollars) {
        left = BObject::right_hom(left, d);
        cod = BObject::right_hom(cod, d);
      }
      break;
    }
    default:
      throw TermTypeError("cross: not a crossed rule");
  }
  if ((direction == RuleKind::FCX || direction == RuleKind::BCX) && !dollars.empty()) {
    throw TermTypeError("cross: FCX/BCX take no $ arguments");
  }
  Node n{Kind::Cross, {}, {}, {}, direction, {x, y, z}, std::move(dollars),
         BObject::tensor(left, right), cod};
  return BTerm(std::make_shared<const Node>(std::move(n)));
}

BTerm::Kind BTerm::kind() const { return node_->kind; }
const BObject & BTerm::dom() const { return node_->dom; }
const BObject & BTerm::cod() const { return node_->cod; }
const std::string & BTerm::label() const { return node_->label; }
const BObject & BTerm::object() const { return node_->object; }
const std::vector<BTerm> & BTerm::children() const { return node_->children; }
RuleKind BTerm::cross_direction() const { return node_->direction; }
const BObject & BTerm::cross_x() const { return node_->cross.at(0); }
const BObject & BTerm::cross_y() const { return node_->cross.at(1); }
const BObject & BTerm::cross_z() const { return node_->cross.at(2); }
const std::vector<BObject> & BTerm::cross_dollars() const { return node_->dollars; }

bool operator==(const BTerm & a, const BTerm & b)
{
  if (a.node_ == b.node_) return true;
  const auto & x = *a.node_;
  const auto & y = *b.node_;
  return x.kind == y.kind && x.label == y.label && x.object == y.object &&
         x.children == y.children && x.direction == y.direction && x.cross == y.cross &&
         x.dollars == y.dollars;
}

namespace
{

std::string quoted(const std::string & s)
{
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void write_sexpr(const BTerm & t, std::ostream & os)
{
  auto obj = [&](const BObject & o) { os << "[" << o.str() << "]"; };
  switch (t.kind()) {
    case BTerm::Kind::Id:
      os << "(id ";
      obj(t.object());
      os << ")";
      return;
    case BTerm::Kind::Word:
      os << "(word " << quoted(t.label()) << " ";
      obj(t.object());
      os << ")";
      return;
    case BTerm::Kind::Compose:
    case BTerm::Kind::Tensor:
      os << (t.kind() == BTerm::Kind::Compose ? "(compose " : "(tensor ");
      write_sexpr(t.children()[0], os);
      os << " ";
      write_sexpr(t.children()[1], os);
      os << ")";
      return;
    case BTerm::Kind::CurryL:
    case BTerm::Kind::CurryR:
      os << (t.kind() == BTerm::Kind::CurryL ? "(curry-l " : "(curry-r ");
      obj(t.object());
      os << " ";
      write_sexpr(t.children()[0], os);
      os << ")";
      return;
    case BTerm::Kind::UncurryL:
    case BTerm::Kind::UncurryR:
      os << (t.kind() == BTerm::Kind::UncurryL ? "(uncurry-l " : "(uncurry-r ");
      write_sexpr(t.children()[0], os);
      os << ")";
      return;
    case BTerm::Kind::Cross: {
      std::string dir(rule_name(t.cross_direction()));
      for (auto & c : dir) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      os << "(cross " << dir;
      if (!t.cross_dollars().empty()) os << ":" << t.cross_dollars().size() + 1;
      os << " ";
      obj(t.cross_x());
      os << " ";
      obj(t.cross_y());
      os << " ";
      obj(t.cross_z());
      for (const auto & d : t.cross_dollars()) {
        os << " ";
        obj(d);
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string BTerm::sexpr() const
{
  std::ostringstream os;
  write_sexpr(*this, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Rules as curried identities

namespace
{

CcgType to_ccg(const BObject & o)
{
  switch (o.kind()) {
    case BObject::Kind::Base:
      return CcgType::atom(o.name());
    case BObject::Kind::RightHom:
      return CcgType::forward(to_ccg(o.left()), to_ccg(o.right()));
    case BObject::Kind::LeftHom:
      return CcgType::backward(to_ccg(o.left()), to_ccg(o.right()));
    default:
      throw RuleError("rule inputs must be categorial objects, got " + o.str());
  }
}

// Peels `count` outer hom layers, returning the arguments outermost first.
CcgType peel(CcgType t, int count, std::vector<CcgType> & dollars)
{
  for (int i = 0; i < count; ++i) {
    dollars.push_back(t.argument());
    t = t.result();
  }
  return t;
}

}  // namespace

BTerm rule_term(const RuleLabel & rule, const std::vector<BObject> & inputs)
{
  std::vector<CcgType> in;
  in.reserve(inputs.size());
  for (const auto & o : inputs) in.push_back(to_ccg(o));
  const CcgType out = apply_rule(rule, in);  // schema check

  switch (rule.kind) {
    case RuleKind::FA:
      return BTerm::uncurry_right(BTerm::id(inputs[0]));

    case RuleKind::BA:
      return BTerm::uncurry_left(BTerm::id(inputs[1]));

    case RuleKind::FC:
    case RuleKind::GFC: {
      const int k = rule.kind == RuleKind::FC ? 0 : rule.degree - 1;
      std::vector<CcgType> dollars;
      const CcgType core = peel(in[1], k, dollars);
      BTerm chain = BTerm::id(inputs[1]);
      for (int i = 0; i <= k; ++i) chain = BTerm::uncurry_right(chain);
      BTerm body = BTerm::compose(
        BTerm::uncurry_right(BTerm::id(inputs[0])), BTerm::tensor(BTerm::id(inputs[0]), chain));
      body = BTerm::curry_right(body, to_bobject(core.argument()));
      for (auto it = dollars.rbegin(); it != dollars.rend(); ++it) {
        body = BTerm::curry_right(body, to_bobject(*it));
      }
      return body;
    }

    case RuleKind::BC:
    case RuleKind::GBC: {
      const int k = rule.kind == RuleKind::BC ? 0 : rule.degree - 1;
      std::vector<CcgType> dollars;
      const CcgType core = peel(in[0], k, dollars);
      BTerm chain = BTerm::id(inputs[0]);
      for (int i = 0; i <= k; ++i) chain = BTerm::uncurry_left(chain);
      BTerm body = BTerm::compose(
        BTerm::uncurry_left(BTerm::id(inputs[1])), BTerm::tensor(chain, BTerm::id(inputs[1])));
      body = BTerm::curry_left(body, to_bobject(core.argument()));
      for (auto it = dollars.rbegin(); it != dollars.rend(); ++it) {
        body = BTerm::curry_left(body, to_bobject(*it));
      }
      return body;
    }

    case RuleKind::FTR: {
      const BObject raised = BObject::left_hom(inputs[0], to_bobject(*rule.target));
      return BTerm::curry_right(BTerm::uncurry_left(BTerm::id(raised)), raised);
    }

    case RuleKind::BTR: {
      const BObject raised = BObject::right_hom(to_bobject(*rule.target), inputs[0]);
      return BTerm::curry_left(BTerm::uncurry_right(BTerm::id(raised)), raised);
    }

    case RuleKind::FCX:
    case RuleKind::GFCX: {
      const int k = rule.kind == RuleKind::FCX ? 0 : rule.degree - 1;
      std::vector<CcgType> dollars;
      const CcgType core = peel(in[1], k, dollars);
      std::vector<BObject> ds;
      for (auto it = dollars.rbegin(); it != dollars.rend(); ++it) ds.push_back(to_bobject(*it));
      return BTerm::cross(
        rule.kind, to_bobject(in[0].result()), to_bobject(in[0].argument()),
        to_bobject(core.argument()), std::move(ds));
    }

    case RuleKind::BCX:
    case RuleKind::GBCX: {
      const int k = rule.kind == RuleKind::BCX ? 0 : rule.degree - 1;
      std::vector<CcgType> dollars;
      const CcgType core = peel(in[0], k, dollars);
      std::vector<BObject> ds;
      for (auto it = dollars.rbegin(); it != dollars.rend(); ++it) ds.push_back(to_bobject(*it));
      return BTerm::cross(
        rule.kind, to_bobject(in[1].result()), to_bobject(core.result()),
        to_bobject(core.argument()), std::move(ds));
    }

    case RuleKind::Lex:
    case RuleKind::Unary:
    case RuleKind::Conj:
      break;
  }
  (void)out;
  throw RuleError(rule.str() + " has no biclosed construction; run ingestion first");
}

BTerm lower_derivation(const Derivation & d)
{
  switch (d.kind) {
    case Derivation::Kind::Leaf:
      return BTerm::word(d.word, to_bobject(d.type));
    case Derivation::Kind::Unary: {
      BTerm child = lower_derivation(d.children[0]);
      BTerm rule = rule_term(d.rule, {to_bobject(d.children[0].type)});
      return BTerm::compose(std::move(rule), std::move(child));
    }
    case Derivation::Kind::Binary: {
      BTerm l = lower_derivation(d.children[0]);
      BTerm r = lower_derivation(d.children[1]);
      BTerm rule =
        rule_term(d.rule, {to_bobject(d.children[0].type), to_bobject(d.children[1].type)});
      BTerm t = BTerm::compose(std::move(rule), BTerm::tensor(std::move(l), std::move(r)));
      if (!(t.cod() == to_bobject(d.type))) {
        throw TermTypeError("lowering produced " + t.cod().str() + " for node " + d.type.str());
      }
      return t;
    }
  }
  throw TermTypeError("unknown derivation node");
}

}  // namespace ccgdisco
