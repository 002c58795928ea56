// ccgdisco/diagram.hpp - layered compact-closed string diagrams
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ccgdisco/biclosed.hpp"
#include "ccgdisco/ccg.hpp"

namespace ccgdisco
{

class DiagramError : public Error
{
public:
  using Error::Error;
};

/// Largest |z| accepted on a wire; anything beyond is a lowering bug.
inline constexpr int kMaxWinding = 6;

/// Atomic wire: base symbol plus adjoint winding (+1 = ·ʳ, −1 = ·ˡ).
struct Wire
{
  std::string base;
  int z = 0;

  /// "n", "nʳ", "nˡ", "nʳʳ", ...
  [[nodiscard]] std::string str() const;
  friend bool operator==(const Wire &, const Wire &) = default;
  friend auto operator<=>(const Wire &, const Wire &) = default;
};

/// Ordered list of wires; empty is the unit.
using RObject = std::vector<Wire>;

RObject right_adjoint(const RObject & a);
RObject left_adjoint(const RObject & a);
RObject concat(const RObject & a, const RObject & b);
/// "nʳ·s·nˡ"; the unit prints as "1".
std::string str(const RObject & a);

/// Atom name to wire base.
using AtomMap = std::map<std::string, std::string>;

/// NP→n, S→s, PP→p, N→N; unlisted atoms map to their lowercase name.
AtomMap default_atom_map();
std::string atom_image(const std::string & atom, const AtomMap & atoms);

RObject f_object(const CcgType & t, const AtomMap & atoms = default_atom_map());
RObject f_object(const BObject & o, const AtomMap & atoms = default_atom_map());

struct Generator
{
  enum class Kind { Word, Cup, Cap, Swap };

  Kind kind = Kind::Word;
  std::string label;  // Word
  RObject out;        // Word codomain
  std::string base;   // Cup / Cap
  int z = 0;          // Cup / Cap
  Wire left;          // Swap
  Wire right;         // Swap

  static Generator word(std::string label, RObject cod);
  /// dom [(base,z),(base,z+1)], cod [].
  static Generator cup(std::string base, int z);
  /// dom [], cod [(base,z+1),(base,z)].
  static Generator cap(std::string base, int z);
  /// dom [left,right], cod [right,left].
  static Generator swap(Wire left, Wire right);

  [[nodiscard]] RObject dom() const;
  [[nodiscard]] RObject cod() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Generator &, const Generator &) = default;
};

struct Layer
{
  std::size_t offset = 0;
  Generator gen;

  friend bool operator==(const Layer &, const Layer &) = default;
};

/// Layers apply top to bottom; each generator acts at `offset` with
/// identities on the other wires.
struct Diagram
{
  RObject dom;
  RObject cod;
  std::vector<Layer> layers;

  static Diagram identity(RObject a);
  static Diagram state(std::string label, RObject cod);

  /// Appends a layer, updating cod. Throws DiagramError if it does not fit.
  Diagram & then(std::size_t offset, Generator g);

  [[nodiscard]] std::size_t count(Generator::Kind k) const;

  friend bool operator==(const Diagram &, const Diagram &) = default;
};

struct DiagramViolation
{
  /// Layer index; layers.size() for the final cod check.
  std::size_t layer = 0;
  std::string message;
};

std::vector<DiagramViolation> well_formed(const Diagram & d);

/// Wire accounting: 2·cups = word-box wires + 2·caps + |dom| − |cod|.
/// Without caps and dom this is cups = (word wires − cod wires) / 2.
bool conserves_wires(const Diagram & d);

/// d1 then d2. Throws DiagramError listing both boundaries on mismatch.
Diagram compose(const Diagram & d1, const Diagram & d2);
/// d1's layers first (whiskered by d2.dom), then d2's shifted past d1.cod.
Diagram tensor(const Diagram & d1, const Diagram & d2);

/// Running boundary before each layer and after the last (size layers+1).
/// Throws DiagramError if the diagram is ill-formed.
std::vector<RObject> boundaries(const Diagram & d);

std::string to_json(const Diagram & d, int indent = 2);
Diagram diagram_from_json(std::string_view text);

}  // namespace ccgdisco
