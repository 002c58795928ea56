// ccgdisco/ingest.cpp - derivation readers, unary resolution, conj expansion
#include "ccgdisco/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <unordered_map>

#include "json.hpp"

namespace ccgdisco
{

using json = nlohmann::json;

SchemaError::SchemaError(const std::string & pointer, const std::string & what)
: Error((pointer.empty() ? std::string("(document)") : pointer) + ": " + what), pointer_(pointer)
{
}

IngestError::IngestError(const std::string & path, const std::string & what)
: Error((path.empty() ? std::string("/") : path) + ": " + what), path_(path)
{
}

// ---------------------------------------------------------------------------
// JSON

namespace
{

RawTree node_from_json(const json & j, const std::string & ptr)
{
  if (!j.is_object()) throw SchemaError(ptr, "node must be an object");
  RawTree t;
  t.pointer = ptr;
  auto require_string = [&](const char * key) -> std::string {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(ptr, std::string("missing field \"") + key + "\"");
    if (!it->is_string()) throw SchemaError(ptr + "/" + key, "must be a string");
    return it->get<std::string>();
  };

  if (j.contains("word")) {
    for (const auto & [key, _] : j.items()) {
      if (key != "word" && key != "type") {
        throw SchemaError(ptr + "/" + key, "unknown field in leaf node");
      }
    }
    t.word = require_string("word");
    t.type = require_string("type");
    if (t.word.empty()) throw SchemaError(ptr + "/word", "word must be non-empty");
    return t;
  }

  for (const auto & [key, _] : j.items()) {
    if (key != "rule" && key != "type" && key != "children") {
      throw SchemaError(ptr + "/" + key, "unknown field in rule node");
    }
  }
  t.rule = require_string("rule");
  t.type = require_string("type");
  auto it = j.find("children");
  if (it == j.end()) throw SchemaError(ptr, "missing field \"children\"");
  if (!it->is_array()) throw SchemaError(ptr + "/children", "must be an array");
  if (it->empty() || it->size() > 2) {
    throw SchemaError(ptr + "/children", "rule nodes take one or two children");
  }
  for (std::size_t i = 0; i < it->size(); ++i) {
    t.children.push_back(node_from_json((*it)[i], ptr + "/children/" + std::to_string(i)));
  }
  return t;
}

json parse_document(std::string_view bytes)
{
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error & e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

RawTree read_json(std::string_view bytes) { return node_from_json(parse_document(bytes), ""); }

RecordBatch read_json_records(std::string_view bytes, const std::string & default_prefix)
{
  RecordBatch batch;
  const bool blank = std::all_of(bytes.begin(), bytes.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
  if (blank) return batch;

  const json doc = parse_document(bytes);
  std::vector<std::pair<const json *, std::string>> items;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) items.emplace_back(&doc[i], "/" + std::to_string(i));
  } else {
    items.emplace_back(&doc, "");
  }

  std::size_t n = 0;
  for (const auto & [item, ptr] : items) {
    std::string id = default_prefix + std::to_string(n++);
    ++batch.total;
    try {
      if (item->is_object() && item->contains("tree")) {
        for (const auto & [key, value] : item->items()) {
          if (key == "id") {
            if (!value.is_string()) throw SchemaError(ptr + "/id", "must be a string");
            id = value.get<std::string>();
          } else if (key != "text" && key != "tree") {
            throw SchemaError(ptr + "/" + key, "unknown field in record");
          }
        }
        batch.records.push_back({id, node_from_json(item->at("tree"), ptr + "/tree")});
      } else {
        batch.records.push_back({id, node_from_json(*item, ptr)});
      }
    } catch (const SchemaError & e) {
      batch.failures.emplace_back(id, e.what());
    }
  }
  return batch;
}

// ---------------------------------------------------------------------------
// Bracketed text

namespace
{

class BracketReader
{
public:
  explicit BracketReader(std::string_view text) : text_(text) {}

  std::vector<RawTree> read_all()
  {
    std::vector<RawTree> trees;
    for (;;) {
      skip_ws_and_comments();
      if (eof()) break;
      trees.push_back(node("/" + std::to_string(trees.size())));
    }
    return trees;
  }

private:
  [[nodiscard]] bool eof() const { return pos_ >= text_.size(); }

  void skip_ws()
  {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  void skip_ws_and_comments()
  {
    for (;;) {
      skip_ws();
      if (eof() || text_[pos_] != '#') return;
      while (!eof() && text_[pos_] != '\n') ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string & ptr, const std::string & what) const
  {
    throw SchemaError(ptr, what + " (byte " + std::to_string(pos_) + ")");
  }

  void expect(char c, const std::string & ptr)
  {
    skip_ws();
    if (eof() || text_[pos_] != c) fail(ptr, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string token(const std::string & ptr)
  {
    skip_ws();
    const std::size_t start = pos_;
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_])) == 0 &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail(ptr, "expected rule name");
    return std::string(text_.substr(start, pos_ - start));
  }

  // A type runs to the first whitespace outside parentheses.
  std::string type_token(const std::string & ptr)
  {
    skip_ws();
    const std::size_t start = pos_;
    int depth = 0;
    while (!eof()) {
      const char c = text_[pos_];
      if (depth == 0 && (std::isspace(static_cast<unsigned char>(c)) != 0 || c == ')')) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      ++pos_;
    }
    if (depth != 0) fail(ptr, "unbalanced parentheses in type");
    if (start == pos_) fail(ptr, "expected type");
    return std::string(text_.substr(start, pos_ - start));
  }

  RawTree node(const std::string & ptr)
  {
    expect('(', ptr);
    RawTree t;
    t.pointer = ptr;
    std::string rule = token(ptr);
    std::string upper = rule;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
      return static_cast<char>(std::toupper(c));
    });
    t.type = type_token(ptr);
    if (upper == "LEX") {
      skip_ws();
      const std::size_t start = pos_;
      while (!eof() && text_[pos_] != ')') ++pos_;
      std::string_view w = text_.substr(start, pos_ - start);
      while (!w.empty() && std::isspace(static_cast<unsigned char>(w.back())) != 0) {
        w.remove_suffix(1);
      }
      if (w.empty()) fail(ptr, "leaf word must be non-empty");
      t.word = std::string(w);
      expect(')', ptr);
      return t;
    }
    t.rule = rule;
    for (;;) {
      skip_ws();
      if (eof()) fail(ptr, "unbalanced parentheses");
      if (text_[pos_] == ')') break;
      t.children.push_back(node(ptr + "/children/" + std::to_string(t.children.size())));
    }
    ++pos_;
    if (t.children.empty() || t.children.size() > 2) {
      fail(ptr, "rule nodes take one or two children");
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<RawTree> read_ccgbank(std::string_view text) { return BracketReader(text).read_all(); }

// ---------------------------------------------------------------------------
// Rule strings

RuleLabel parse_rule(std::string_view text, const CcgType & node_type)
{
  const std::size_t colon = text.find(':');
  std::string head(text.substr(0, colon));
  std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) {
    return static_cast<char>(std::toupper(c));
  });
  const std::optional<std::string_view> param =
    colon == std::string_view::npos ? std::nullopt : std::optional(text.substr(colon + 1));

  static const std::map<std::string, RuleKind, std::less<>> simple = {
    {"FA", RuleKind::FA},   {"BA", RuleKind::BA},   {"FC", RuleKind::FC},
    {"BC", RuleKind::BC},   {"FCX", RuleKind::FCX}, {"BCX", RuleKind::BCX},
    {"CONJ", RuleKind::Conj},
  };
  static const std::map<std::string, RuleKind, std::less<>> generalized = {
    {"GFC", RuleKind::GFC},
    {"GBC", RuleKind::GBC},
    {"GFCX", RuleKind::GFCX},
    {"GBCX", RuleKind::GBCX},
  };

  if (auto it = simple.find(head); it != simple.end()) {
    if (param) throw Error("rule " + head + " takes no parameter");
    return RuleLabel::of(it->second);
  }
  if (auto it = generalized.find(head); it != generalized.end()) {
    if (!param) throw Error("rule " + head + " requires a degree, e.g. " + head + ":2");
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(std::string(*param), &used);
      if (used != param->size()) throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw Error("invalid degree '" + std::string(*param) + "' for " + head);
    }
    return RuleLabel::generalized(it->second, n);
  }
  if (head == "FTR" || head == "BTR") {
    const RuleKind k = head == "FTR" ? RuleKind::FTR : RuleKind::BTR;
    if (param) return RuleLabel::raise(k, parse_type(*param));
    if (node_type.is_atom()) throw Error(head + " without target needs a raised node type");
    return RuleLabel::raise(k, node_type.result());
  }
  if (head == "UNARY") {
    return RuleLabel::unary(param ? parse_type(*param) : node_type);
  }
  if (head == "LEX") throw Error("LEX is only valid on leaves");
  throw Error("unknown rule '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Index linking

namespace
{

// Union-find over type occurrences. Each subtype occurrence is a node; rule
// schemas unify occurrences that must be equal, and a unary rule substitutes
// its destination for the whole class of its input.
class Linker
{
public:
  int build(const CcgType & t)
  {
    if (t.is_atom()) return add({CcgType::Kind::Atom, t.name(), -1, -1});
    const int l = build(t.left());
    const int r = build(t.right());
    return add({t.kind(), {}, l, r});
  }

  int slash(CcgType::Kind k, int left, int right) { return add({k, {}, left, right}); }
  int forward(int result, int argument) { return slash(CcgType::Kind::Forward, result, argument); }
  int backward(int argument, int result) { return slash(CcgType::Kind::Backward, argument, result); }

  int find(int n)
  {
    while (parent_[n] != n) {
      parent_[n] = parent_[parent_[n]];
      n = parent_[n];
    }
    return n;
  }

  int deref(int n)
  {
    for (;;) {
      const int r = find(n);
      auto it = subst_.find(r);
      if (it == subst_.end()) return r;
      n = it->second;
    }
  }

  void unify(int a, int b)
  {
    a = deref(a);
    b = deref(b);
    if (a == b) return;
    const Node na = nodes_[a];
    const Node nb = nodes_[b];
    if (na.kind != nb.kind || na.atom != nb.atom) {
      throw RuleError("cannot link " + materialize(a).str() + " with " + materialize(b).str());
    }
    parent_[b] = a;
    if (na.kind != CcgType::Kind::Atom) {
      unify(na.left, nb.left);
      unify(na.right, nb.right);
    }
  }

  void substitute(int n, int replacement) { subst_[deref(n)] = replacement; }

  CcgType materialize(int n, bool follow_subst = true)
  {
    const int d = follow_subst ? deref(n) : n;
    const Node & nd = nodes_[d];
    if (nd.kind == CcgType::Kind::Atom) return CcgType::atom(nd.atom);
    CcgType l = materialize(nd.left, follow_subst);
    CcgType r = materialize(nd.right, follow_subst);
    return nd.kind == CcgType::Kind::Forward ? CcgType::forward(l, r) : CcgType::backward(l, r);
  }

  // Children through the current substitution.
  int left(int n) { return nodes_[deref(n)].left; }
  int right(int n) { return nodes_[deref(n)].right; }
  CcgType::Kind kind(int n) { return nodes_[deref(n)].kind; }
  int result(int n) { return kind(n) == CcgType::Kind::Forward ? left(n) : right(n); }
  int argument(int n) { return kind(n) == CcgType::Kind::Forward ? right(n) : left(n); }

  IndexedType indexed(int n, std::map<int, int> & numbering)
  {
    IndexedType out;
    out.type = materialize(n, false);
    const int cls = find(n);
    auto [it, inserted] = numbering.emplace(cls, static_cast<int>(numbering.size()) + 1);
    out.index = it->second;
    const Node & nd = nodes_[n];
    if (nd.kind != CcgType::Kind::Atom) {
      out.children.push_back(indexed(nd.left, numbering));
      out.children.push_back(indexed(nd.right, numbering));
    }
    return out;
  }

private:
  struct Node
  {
    CcgType::Kind kind;
    std::string atom;
    int left;
    int right;
  };

  int add(Node n)
  {
    nodes_.push_back(std::move(n));
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
  std::vector<int> parent_;
  std::unordered_map<int, int> subst_;
};

struct Work
{
  Derivation::Kind kind = Derivation::Kind::Leaf;
  std::string word;
  RuleLabel rule;
  int node = -1;
  std::vector<Work> children;
};

class UnaryResolver
{
public:
  Work process(const RawTree & raw, const std::string & path)
  {
    const std::string where = raw.pointer.empty() ? path : raw.pointer;
    const CcgType declared = parse_at(raw.type, where);

    if (raw.is_leaf()) {
      if (raw.word.empty()) throw IngestError(where, "leaf word is empty");
      Work w;
      w.word = raw.word;
      w.node = linker_.build(declared);
      return w;
    }

    RuleLabel rule;
    try {
      rule = parse_rule(raw.rule, declared);
    } catch (const TypeParseError & e) {
      throw IngestError(where, e.what());
    } catch (const Error & e) {
      throw IngestError(where, e.what());
    }
    if (static_cast<int>(raw.children.size()) != rule.arity()) {
      throw IngestError(
        where, rule.str() + " expects " + std::to_string(rule.arity()) + " child(ren), found " +
                 std::to_string(raw.children.size()));
    }

    std::vector<Work> kids;
    for (std::size_t i = 0; i < raw.children.size(); ++i) {
      kids.push_back(process(raw.children[i], path + "/" + std::to_string(i)));
    }

    if (rule.kind == RuleKind::Unary) {
      Work child = std::move(kids[0]);
      if (linker_.materialize(child.node) == *rule.target) return child;
      const int replacement = linker_.build(*rule.target);
      linker_.substitute(child.node, replacement);
      child.node = replacement;
      return child;
    }

    std::vector<CcgType> inputs;
    for (const auto & k : kids) inputs.push_back(linker_.materialize(k.node));
    CcgType produced;
    try {
      produced = apply_rule(rule, inputs);
    } catch (const RuleError & e) {
      throw IngestError(where, e.what());
    }
    // Coordination nodes may carry either X\X or the bare conjunct type.
    if (rule.kind != RuleKind::Conj && !(produced == declared)) {
      throw IngestError(
        where, "node declares " + declared.str() + " but " + rule.str() + " produces " +
                 produced.str());
    }

    Work w;
    w.kind = raw.children.size() == 1 ? Derivation::Kind::Unary : Derivation::Kind::Binary;
    w.rule = rule;
    try {
      w.node = link(rule, kids);
    } catch (const RuleError & e) {
      throw IngestError(where, e.what());
    }
    w.children = std::move(kids);
    return w;
  }

  Derivation finish(const Work & w)
  {
    const CcgType t = linker_.materialize(w.node);
    switch (w.kind) {
      case Derivation::Kind::Leaf:
        return Derivation::leaf(w.word, t);
      case Derivation::Kind::Unary:
        return Derivation::unary(w.rule, finish(w.children[0]), t);
      case Derivation::Kind::Binary:
        return Derivation::binary(w.rule, finish(w.children[0]), finish(w.children[1]), t);
    }
    return {};
  }

  Linker & linker() { return linker_; }

private:
  static CcgType parse_at(const std::string & text, const std::string & where)
  {
    try {
      return parse_type(text);
    } catch (const TypeParseError & e) {
      throw IngestError(where, e.what());
    }
  }

  std::vector<int> peel(int n, int count, std::vector<int> & dollars)
  {
    for (int i = 0; i < count; ++i) {
      dollars.push_back(linker_.argument(n));
      n = linker_.result(n);
    }
    return {n};
  }

  int rewrap(int core, CcgType::Kind dir, const std::vector<int> & dollars)
  {
    for (auto it = dollars.rbegin(); it != dollars.rend(); ++it) {
      core = dir == CcgType::Kind::Forward ? linker_.forward(core, *it)
                                           : linker_.backward(*it, core);
    }
    return core;
  }

  // Unifies the occurrences the schema identifies and returns the output
  // occurrence. Shapes were already checked by apply_rule.
  int link(const RuleLabel & rule, const std::vector<Work> & kids)
  {
    using K = CcgType::Kind;
    Linker & L = linker_;
    const int a = kids[0].node;
    const int b = kids.size() > 1 ? kids[1].node : -1;
    switch (rule.kind) {
      case RuleKind::FA:
        L.unify(L.argument(a), b);
        return L.result(a);
      case RuleKind::BA:
        L.unify(L.argument(b), a);
        return L.result(b);
      case RuleKind::FC:
        L.unify(L.argument(a), L.result(b));
        return L.forward(L.result(a), L.argument(b));
      case RuleKind::BC:
        L.unify(L.result(a), L.argument(b));
        return L.backward(L.argument(a), L.result(b));
      case RuleKind::GFC: {
        std::vector<int> dollars;
        const int core = peel(b, rule.degree - 1, dollars)[0];
        L.unify(L.argument(a), L.result(core));
        return rewrap(L.forward(L.result(a), L.argument(core)), K::Forward, dollars);
      }
      case RuleKind::GBC: {
        std::vector<int> dollars;
        const int core = peel(a, rule.degree - 1, dollars)[0];
        L.unify(L.result(core), L.argument(b));
        return rewrap(L.backward(L.argument(core), L.result(b)), K::Backward, dollars);
      }
      case RuleKind::FCX:
        L.unify(L.argument(a), L.result(b));
        return L.backward(L.argument(b), L.result(a));
      case RuleKind::BCX:
        L.unify(L.result(a), L.argument(b));
        return L.forward(L.result(b), L.argument(a));
      case RuleKind::GFCX: {
        std::vector<int> dollars;
        const int core = peel(b, rule.degree - 1, dollars)[0];
        L.unify(L.argument(a), L.result(core));
        return rewrap(L.backward(L.argument(core), L.result(a)), K::Backward, dollars);
      }
      case RuleKind::GBCX: {
        std::vector<int> dollars;
        const int core = peel(a, rule.degree - 1, dollars)[0];
        L.unify(L.result(core), L.argument(b));
        return rewrap(L.forward(L.result(b), L.argument(core)), K::Forward, dollars);
      }
      case RuleKind::FTR: {
        const int t = L.build(*rule.target);
        return L.forward(t, L.backward(a, t));
      }
      case RuleKind::BTR: {
        const int t = L.build(*rule.target);
        return L.backward(L.forward(t, a), t);
      }
      case RuleKind::Conj:
        return L.backward(b, b);
      case RuleKind::Lex:
      case RuleKind::Unary:
        break;
    }
    throw RuleError("cannot link rule " + rule.str());
  }

  Linker linker_;
};

void collect_leaves(const Work & w, std::vector<const Work *> & out)
{
  if (w.kind == Derivation::Kind::Leaf) {
    out.push_back(&w);
    return;
  }
  for (const auto & c : w.children) collect_leaves(c, out);
}

}  // namespace

std::vector<IndexedType> index_leaf_types(const RawTree & raw)
{
  UnaryResolver r;
  const Work top = r.process(raw, "");
  std::vector<const Work *> leaves;
  collect_leaves(top, leaves);
  std::map<int, int> numbering;
  std::vector<IndexedType> out;
  for (const Work * w : leaves) out.push_back(r.linker().indexed(w->node, numbering));
  return out;
}

Derivation resolve_unary(const RawTree & raw)
{
  UnaryResolver r;
  const Work top = r.process(raw, "");
  Derivation d = r.finish(top);
  const auto violations = validate(d);
  if (!violations.empty()) {
    throw IngestError(violations.front().path, violations.front().message);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Conjunction

namespace
{

bool contains_conj(const CcgType & t)
{
  if (t.is_atom()) return t.name() == atoms::CONJ;
  return contains_conj(t.left()) || contains_conj(t.right());
}

bool is_conj_leaf(const Derivation & d)
{
  return d.kind == Derivation::Kind::Leaf && d.type.is_atom() && d.type.name() == atoms::CONJ;
}

Derivation expand_at(const Derivation & d, const std::string & path, bool coordination_slot)
{
  const std::string here = path.empty() ? "/" : path;
  if (d.kind == Derivation::Kind::Leaf) {
    if (is_conj_leaf(d)) throw IngestError(here, "CONJ in non-coordination position");
    if (contains_conj(d.type)) throw IngestError(here, "conj inside a slash type");
    return d;
  }

  if (d.rule.kind == RuleKind::Conj) {
    if (!coordination_slot) throw IngestError(here, "CONJ in non-coordination position");
    if (!is_conj_leaf(d.children[0])) {
      throw IngestError(here + "/0", "coordination node needs a conj leaf on the left");
    }
    Derivation right = expand_at(d.children[1], path + "/1", false);
    const CcgType x = right.type;
    const CcgType modifier = CcgType::backward(x, x);
    Derivation conj = Derivation::leaf(d.children[0].word, CcgType::forward(modifier, x));
    return Derivation::binary(RuleLabel::of(RuleKind::FA), std::move(conj), std::move(right), modifier);
  }

  std::vector<Derivation> kids;
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    const bool slot = d.kind == Derivation::Kind::Binary && i == 1 &&
                      d.children[1].rule.kind == RuleKind::Conj &&
                      d.children[1].kind == Derivation::Kind::Binary;
    if (slot) {
      if (d.rule.kind != RuleKind::BA) {
        throw IngestError(path + "/1", "CONJ in non-coordination position");
      }
      const CcgType & left_type = d.children[0].type;
      const CcgType & right_type = d.children[1].children[1].type;
      if (!(left_type == right_type)) {
        throw IngestError(
          here, "conjuncts' types differ: " + left_type.str() + " vs " + right_type.str());
      }
    }
    kids.push_back(expand_at(d.children[i], path + "/" + std::to_string(i), slot));
  }
  Derivation out = d;
  out.children = std::move(kids);
  return out;
}

}  // namespace

Derivation expand_conj(const Derivation & d) { return expand_at(d, "", false); }

Derivation ingest(const RawTree & raw)
{
  Derivation d = expand_conj(resolve_unary(raw));
  const auto violations = validate(d);
  if (!violations.empty()) {
    throw IngestError(violations.front().path, violations.front().message);
  }
  return d;
}

}  // namespace ccgdisco
