// ccgdisco/functor.hpp - the functor from biclosed terms to string diagrams
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccgdisco/biclosed.hpp"
#include "ccgdisco/diagram.hpp"

namespace ccgdisco
{

struct LoweringContext
{
  AtomMap atoms = default_atom_map();

  /// Default map with `k=v` overrides applied.
  static LoweringContext with_overrides(const std::vector<std::pair<std::string, std::string>> & kv);
};

/// F on morphisms. Rule terms produced by `rule_term` get their direct
/// images (cup blocks, cap blocks, swap blocks); any other curry/uncurry is
/// lowered through the generic cap/cup construction below.
Diagram lower(const BTerm & term, const LoweringContext & ctx = {});

/// Diagram-level currying. f: a⊗b → c becomes a → c⊗bˡ by bending b with caps.
Diagram curry_right(const Diagram & f, const RObject & b);
/// f: a⊗b → c becomes b → aʳ⊗c.
Diagram curry_left(const Diagram & f, const RObject & a);
/// g: a → c⊗bˡ becomes a⊗b → c by closing bˡ against b with cups.
Diagram uncurry_right(const Diagram & g, const RObject & b);
/// g: b → aʳ⊗c becomes a⊗b → c.
Diagram uncurry_left(const Diagram & g, const RObject & a);

/// Nested cups closing `left` against the wires that follow it (innermost first).
void append_cup_block(Diagram & d, std::size_t offset, const RObject & left);
/// Nested caps creating `left` followed by its partner wires (outermost first).
void append_cap_block(Diagram & d, std::size_t offset, const RObject & left);
/// Moves the `b` wires right of `offset + a` to the left of the `a` wires
/// before them, one elementary swap at a time (a·b swaps).
void append_swap_block(Diagram & d, std::size_t offset, std::size_t a, std::size_t b);

struct FunctorLawReport
{
  std::size_t checked = 0;
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Checks every subterm of each sample: composition and tensor laws
/// structurally, currying and uncurrying against the diagram-level
/// constructions up to rewrite normal form.
FunctorLawReport verify_functor_laws(const std::vector<BTerm> & samples, const LoweringContext & ctx = {});

}  // namespace ccgdisco
