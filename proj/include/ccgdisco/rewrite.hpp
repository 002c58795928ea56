// ccgdisco/rewrite.hpp - snake removal, planarization and diagram normal forms
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccgdisco/diagram.hpp"

namespace ccgdisco
{

enum class StepKind { SnakeLeft, SnakeRight, SlideBoxThroughSwap, SwapCancel, CupSlide };

std::string step_name(StepKind k);

/// A local rewrite whose redex starts at `layer`. `offset` is the offset of
/// that first layer.
struct RewriteStep
{
  StepKind kind = StepKind::SwapCancel;
  std::size_t layer = 0;
  std::size_t offset = 0;

  friend bool operator==(const RewriteStep &, const RewriteStep &) = default;
};

/// Every local redex present in d, in layer order.
std::vector<RewriteStep> find_steps(const Diagram & d);

/// Applies one step. Throws DiagramError if its redex is not at the location.
Diagram apply_step(const Diagram & d, const RewriteStep & step);

/// Connectivity of a diagram: every dom port, word-box port and cod port
/// (a "terminal") is joined to exactly one other terminal by a path through
/// caps, cups and swaps. Closed loops are kept separately.
struct Wiring
{
  struct Box
  {
    std::string label;
    RObject out;
    std::size_t first = 0;  // terminal id of the leftmost port
  };

  RObject dom;
  RObject cod;
  std::vector<Box> boxes;
  std::vector<Wire> type;        // per terminal
  std::vector<std::size_t> partner;  // per terminal
  std::vector<Wire> loops;       // one cap wire type per closed loop

  [[nodiscard]] std::size_t cod_first() const { return type.size() - cod.size(); }
  [[nodiscard]] bool is_dom(std::size_t t) const { return t < dom.size(); }
  [[nodiscard]] bool is_cod(std::size_t t) const { return t >= cod_first(); }
};

/// Throws DiagramError for ill-formed input.
Wiring extract_wiring(const Diagram & d);

/// Snake-free normal form. Word boxes keep their order when a planar layout
/// with that order exists; then come the cups, rightmost first. Planar input
/// stays planar unless a wire curls around a box (its two ends differ by a
/// double adjoint). Everything else is emitted with boxes in their original
/// order and adjacent swaps from a greedy layout; curls and closed loops
/// become cap/swap/cup gadgets.
Diagram normalize(const Diagram & d);

struct PlanarizeResult
{
  Diagram diagram;
  bool ok = true;
  std::string message;
};

/// Removes swaps by relocating word states. Swap-free input is returned
/// unchanged; if no planar arrangement exists the input is returned with
/// ok = false.
PlanarizeResult planarize_report(const Diagram & d);
Diagram planarize(const Diagram & d);

/// normalize(planarize(d1)) == normalize(planarize(d2)). Throws DiagramError
/// if the boundaries differ.
bool diagrams_equal(const Diagram & d1, const Diagram & d2);

}  // namespace ccgdisco
