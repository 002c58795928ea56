// ccgdisco/render.hpp - TikZ and SVG drawings of diagrams
#pragma once

#include <string>

#include "ccgdisco/diagram.hpp"

namespace ccgdisco
{

/// A tikzpicture environment; needs only \usepackage{tikz}.
std::string render_tikz(const Diagram & d);

/// Self-contained SVG document. Wires and swaps are <line> elements, cups
/// and caps <path> arcs, word boxes <rect> plus <text>.
std::string render_svg(const Diagram & d);

}  // namespace ccgdisco
