// ccgdisco/ccg.hpp - categorial types, rule catalog and derivation trees
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccgdisco
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed type text. `offset` is the byte offset of the offending input.
class TypeParseError : public Error
{
public:
  TypeParseError(const std::string & what, std::size_t offset);
  [[nodiscard]] std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// A rule was applied to inputs that do not fit its schema.
class RuleError : public Error
{
public:
  using Error::Error;
};

namespace atoms
{
inline constexpr std::string_view NP = "NP";
inline constexpr std::string_view N = "N";
inline constexpr std::string_view S = "S";
inline constexpr std::string_view PP = "PP";
inline constexpr std::string_view CONJ = "CONJ";
}  // namespace atoms

/// Categorial type: an atom, X/Y (Forward) or X\Y (Backward).
///
/// Forward(result X, argument Y) prints as "X/Y" or "X ⤙ Y".
/// Backward(argument Y, result X) prints as "X\Y" or "Y ⤚ X".
/// Values are immutable and cheap to copy.
class CcgType
{
public:
  enum class Kind { Atom, Forward, Backward };

  /// Null type; only valid as a placeholder to be assigned over.
  CcgType() = default;

  static CcgType atom(std::string name);
  static CcgType forward(CcgType result, CcgType argument);
  static CcgType backward(CcgType argument, CcgType result);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] bool is_atom() const { return kind() == Kind::Atom; }
  [[nodiscard]] bool is_forward() const { return kind() == Kind::Forward; }
  [[nodiscard]] bool is_backward() const { return kind() == Kind::Backward; }

  /// Atom name; empty for slash types.
  [[nodiscard]] const std::string & name() const;
  [[nodiscard]] const CcgType & result() const;
  [[nodiscard]] const CcgType & argument() const;
  /// Left and right operand in arrow notation.
  [[nodiscard]] const CcgType & left() const;
  [[nodiscard]] const CcgType & right() const;

  [[nodiscard]] std::size_t depth() const;

  /// Slash notation, complex operands always parenthesized: "(S\NP)/NP".
  [[nodiscard]] std::string str() const;
  /// Arrow notation: "(NP ⤚ S) ⤙ NP".
  [[nodiscard]] std::string arrow_str() const;

  friend bool operator==(const CcgType & a, const CcgType & b);

private:
  struct Node;
  explicit CcgType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Strips parser feature annotations ("S[dcl]" -> "S") and folds "conj".
std::string normalize_atom(std::string_view raw);

/// Parses slash notation (left associative, CCGBank style) or arrow notation
/// with ⤙ / ⤚ and explicit parentheses. Throws TypeParseError.
CcgType parse_type(std::string_view text);

enum class RuleKind {
  Lex,
  FA,
  BA,
  FC,
  BC,
  GFC,
  GBC,
  FTR,
  BTR,
  FCX,
  BCX,
  GFCX,
  GBCX,
  Unary,
  Conj,
};

inline constexpr int kMaxCompositionDegree = 4;

struct RuleLabel
{
  RuleKind kind = RuleKind::Lex;
  /// Generalization degree for GFC/GBC/GFCX/GBCX (1 = plain composition).
  int degree = 1;
  /// FTR/BTR raise target, UNARY destination.
  std::optional<CcgType> target;

  static RuleLabel of(RuleKind k) { return RuleLabel{k, 1, std::nullopt}; }
  static RuleLabel generalized(RuleKind k, int n) { return RuleLabel{k, n, std::nullopt}; }
  static RuleLabel raise(RuleKind k, CcgType t) { return RuleLabel{k, 1, std::move(t)}; }
  static RuleLabel unary(CcgType to) { return RuleLabel{RuleKind::Unary, 1, std::move(to)}; }

  [[nodiscard]] int arity() const;
  [[nodiscard]] bool is_crossed() const;
  /// Canonical text: "FA", "GFC:2", "FTR:S", "UNARY:NP".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const RuleLabel & a, const RuleLabel & b);
};

std::string_view rule_name(RuleKind k);

/// Applies the rule schema to the input types and returns the output type.
/// Throws RuleError on arity or shape mismatch.
CcgType apply_rule(const RuleLabel & rule, const std::vector<CcgType> & inputs);

/// Rule-labelled derivation tree. Leaves hold words, internal nodes hold the
/// rule and the type it produces.
struct Derivation
{
  enum class Kind { Leaf, Unary, Binary };

  Kind kind = Kind::Leaf;
  std::string word;
  RuleLabel rule;
  CcgType type;
  std::vector<Derivation> children;

  static Derivation leaf(std::string word, CcgType type);
  static Derivation unary(RuleLabel rule, Derivation child, CcgType type);
  static Derivation binary(RuleLabel rule, Derivation left, Derivation right, CcgType type);

  [[nodiscard]] std::vector<std::string> words() const;
  [[nodiscard]] std::size_t size() const;

  friend bool operator==(const Derivation & a, const Derivation & b);
};

struct Violation
{
  /// Child indices from the root, rendered as "/0/1".
  std::string path;
  std::string message;
};

/// Checks every node against its rule. Empty result means the tree is valid.
std::vector<Violation> validate(const Derivation & d);

}  // namespace ccgdisco
