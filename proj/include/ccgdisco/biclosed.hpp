// ccgdisco/biclosed.hpp - free biclosed category terms for derivations
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ccgdisco/ccg.hpp"

namespace ccgdisco
{

/// Ill-typed term construction.
class TermTypeError : public Error
{
public:
  using Error::Error;
};

/// Object of the free biclosed category. The tensor is kept strict: nested
/// tensors are flattened and the unit I is the empty tensor.
class BObject
{
public:
  enum class Kind { Unit, Base, Tensor, LeftHom, RightHom };

  BObject();  // unit
  static BObject unit() { return {}; }
  static BObject base(std::string atom);
  static BObject tensor(const BObject & a, const BObject & b);
  /// A ⤚ C: takes A on the left, yields C.
  static BObject left_hom(BObject a, BObject c);
  /// C ⤙ B: takes B on the right, yields C.
  static BObject right_hom(BObject c, BObject b);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] const std::string & name() const;
  /// Tensor factors; a non-tensor object is its own single factor, unit has none.
  [[nodiscard]] std::vector<BObject> factors() const;
  /// Arrow-notation operands of a hom object.
  [[nodiscard]] const BObject & left() const;
  [[nodiscard]] const BObject & right() const;

  [[nodiscard]] std::string str() const;
  friend bool operator==(const BObject & a, const BObject & b);
  friend BObject tensor_of(const std::vector<BObject> & factors);

private:
  struct Node;
  explicit BObject(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

BObject to_bobject(const CcgType & t);
BObject tensor_of(const std::vector<BObject> & factors);

/// Morphism of the free biclosed category. Construction type-checks and
/// throws TermTypeError; dom/cod are computed once and stored.
class BTerm
{
public:
  enum class Kind { Id, Word, Compose, Tensor, CurryL, CurryR, UncurryL, UncurryR, Cross };

  static BTerm id(BObject a);
  static BTerm word(std::string label, BObject a);
  /// g ∘ f; requires cod(f) = dom(g).
  static BTerm compose(BTerm g, BTerm f);
  static BTerm tensor(BTerm f, BTerm g);
  /// f: A ⊗ B → C  ↦  B → A ⤚ C. `a` names the split.
  static BTerm curry_left(BTerm f, BObject a);
  /// f: A ⊗ B → C  ↦  A → C ⤙ B. `b` names the split.
  static BTerm curry_right(BTerm f, BObject b);
  /// g: B → A ⤚ C  ↦  A ⊗ B → C.
  static BTerm uncurry_left(BTerm g);
  /// g: A → C ⤙ B  ↦  A ⊗ B → C.
  static BTerm uncurry_right(BTerm g);
  /// Crossed composition generator. `dollars` are the extra arguments of the
  /// generalized forms, innermost first; empty for FCX/BCX.
  static BTerm cross(RuleKind direction, BObject x, BObject y, BObject z,
                     std::vector<BObject> dollars = {});

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] const BObject & dom() const;
  [[nodiscard]] const BObject & cod() const;
  [[nodiscard]] const std::string & label() const;
  /// Id / Word object, or the curry split object.
  [[nodiscard]] const BObject & object() const;
  [[nodiscard]] const std::vector<BTerm> & children() const;

  [[nodiscard]] RuleKind cross_direction() const;
  [[nodiscard]] const BObject & cross_x() const;
  [[nodiscard]] const BObject & cross_y() const;
  [[nodiscard]] const BObject & cross_z() const;
  [[nodiscard]] const std::vector<BObject> & cross_dollars() const;

  /// Stable s-expression: (compose g f), (word "w" [NP]), (curry-r [B] f), ...
  [[nodiscard]] std::string sexpr() const;

  friend bool operator==(const BTerm & a, const BTerm & b);

private:
  struct Node;
  explicit BTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// The biclosed construction of a rule over input objects, built from
/// curried and uncurried identities (crossed rules use a generator box).
BTerm rule_term(const RuleLabel & rule, const std::vector<BObject> & inputs);

/// Lowers a validated, unary-free derivation to a term I → root type.
BTerm lower_derivation(const Derivation & d);

}  // namespace ccgdisco
