// ccgdisco/render.cpp
//
// Layout: the leading run of word boxes shares the top band, every other
// layer gets a band of its own. Wire i of a boundary sits at x = i. Identity
// wires change column inside a short shift zone so they never run through a
// box, cup or cap drawn in the same band.
#include "ccgdisco/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace ccgdisco
{

namespace
{

struct Segment
{
  double x1, y1, x2, y2;
  bool swap;
};

struct Arc
{
  double x1, x2, y, depth;  // depth > 0 bends downwards
  bool cup;
};

struct BoxShape
{
  double x1, x2, y1, y2;
  std::string label;
};

struct Scene
{
  std::vector<Segment> lines;
  std::vector<Arc> arcs;
  std::vector<BoxShape> boxes;
  std::size_t width = 0;
  double height = 0;
};

constexpr double kShift = 0.3;

Scene layout(const Diagram & d)
{
  Scene sc;
  boundaries(d);  // validates

  std::vector<int> cur;
  int next_id = 0;
  for (std::size_t i = 0; i < d.dom.size(); ++i) cur.push_back(next_id++);
  sc.width = d.dom.size();

  std::size_t li = 0;
  double y = 0;
  while (li < d.layers.size()) {
    std::size_t stop = li + 1;
    if (d.layers[li].gen.kind == Generator::Kind::Word) {
      while (stop < d.layers.size() && d.layers[stop].gen.kind == Generator::Kind::Word) ++stop;
    }
    const std::vector<int> before = cur;
    std::vector<std::pair<std::vector<int>, std::string>> new_boxes;
    std::vector<std::pair<int, int>> caps;
    std::pair<int, int> cup{-1, -1};
    bool swapping = false;
    for (std::size_t k = li; k < stop; ++k) {
      const auto & l = d.layers[k];
      auto pos = cur.begin() + static_cast<std::ptrdiff_t>(l.offset);
      switch (l.gen.kind) {
        case Generator::Kind::Word: {
          std::vector<int> ids;
          for (std::size_t j = 0; j < l.gen.out.size(); ++j) ids.push_back(next_id++);
          cur.insert(pos, ids.begin(), ids.end());
          new_boxes.emplace_back(ids, l.gen.label);
          break;
        }
        case Generator::Kind::Cap: {
          const int a = next_id++;
          const int b = next_id++;
          cur.insert(pos, {a, b});
          caps.emplace_back(a, b);
          break;
        }
        case Generator::Kind::Cup:
          cup = {*pos, *(pos + 1)};
          cur.erase(pos, pos + 2);
          break;
        case Generator::Kind::Swap:
          std::iter_swap(pos, pos + 1);
          swapping = true;
          break;
      }
    }
    std::map<int, std::size_t> pb;
    std::map<int, std::size_t> pa;
    for (std::size_t i = 0; i < before.size(); ++i) pb[before[i]] = i;
    for (std::size_t i = 0; i < cur.size(); ++i) pa[cur[i]] = i;

    const bool shift_low = cup.first >= 0;  // cups sit at the top of the band
    for (const auto & [id, b] : pb) {
      auto it = pa.find(id);
      if (it == pa.end()) continue;
      const double xb = static_cast<double>(b);
      const double xa = static_cast<double>(it->second);
      if (swapping || xb == xa) {
        sc.lines.push_back({xb, y, xa, y + 1, swapping && xb != xa});
      } else if (shift_low) {
        sc.lines.push_back({xb, y, xb, y + 1 - kShift, false});
        sc.lines.push_back({xb, y + 1 - kShift, xa, y + 1, false});
      } else {
        sc.lines.push_back({xb, y, xa, y + kShift, false});
        sc.lines.push_back({xa, y + kShift, xa, y + 1, false});
      }
    }
    for (const auto & [ids, label] : new_boxes) {
      const double x1 = ids.empty() ? 0.0 : static_cast<double>(pa[ids.front()]);
      const double x2 = ids.empty() ? 0.0 : static_cast<double>(pa[ids.back()]);
      sc.boxes.push_back({x1 - 0.4, x2 + 0.4, y + 0.35, y + 0.7, label});
      for (int id : ids) {
        const double x = static_cast<double>(pa[id]);
        sc.lines.push_back({x, y + 0.7, x, y + 1, false});
      }
    }
    for (const auto & [a, b] : caps) {
      sc.arcs.push_back({static_cast<double>(pa[a]), static_cast<double>(pa[b]), y + 1, -0.4, false});
    }
    if (cup.first >= 0) {
      sc.arcs.push_back({static_cast<double>(pb[cup.first]), static_cast<double>(pb[cup.second]), y, 0.4, true});
    }
    sc.width = std::max({sc.width, before.size(), cur.size()});
    y += 1;
    li = stop;
  }
  sc.height = y;
  return sc;
}

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string xml_escape(const std::string & s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tex_escape(const std::string & s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': case '%': case '$': case '#': case '_': case '{': case '}':
        out += '\\';
        out += c;
        break;
      case '\\': out += "\\textbackslash{}"; break;
      case '~': out += "\\textasciitilde{}"; break;
      case '^': out += "\\textasciicircum{}"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_tikz(const Diagram & d)
{
  const Scene sc = layout(d);
  std::ostringstream os;
  os << "\\begin{tikzpicture}[x=1cm,y=-1cm]\n";
  for (const auto & l : sc.lines) {
    os << "  \\draw" << (l.swap ? "[thick]" : "") << " (" << num(l.x1) << "," << num(l.y1) << ") -- ("
       << num(l.x2) << "," << num(l.y2) << ");\n";
  }
  for (const auto & a : sc.arcs) {
    const double mid = a.y + a.depth;
    os << "  \\draw (" << num(a.x1) << "," << num(a.y) << ") .. controls (" << num(a.x1) << "," << num(mid)
       << ") and (" << num(a.x2) << "," << num(mid) << ") .. (" << num(a.x2) << "," << num(a.y) << ");\n";
  }
  for (const auto & b : sc.boxes) {
    os << "  \\draw[fill=white] (" << num(b.x1) << "," << num(b.y1) << ") rectangle (" << num(b.x2) << ","
       << num(b.y2) << ");\n";
    os << "  \\node[font=\\footnotesize,inner sep=0pt] at (" << num((b.x1 + b.x2) / 2) << "," << num((b.y1 + b.y2) / 2) << ") {"
       << tex_escape(b.label) << "};\n";
  }
  os << "\\end{tikzpicture}\n";
  return os.str();
}

std::string render_svg(const Diagram & d)
{
  const Scene sc = layout(d);
  constexpr double unit = 40;
  constexpr double margin = 30;
  auto X = [&](double x) { return num(margin + x * unit); };
  auto Y = [&](double y) { return num(margin + y * unit); };
  const double w = 2 * margin + (sc.width == 0 ? 0.0 : static_cast<double>(sc.width - 1)) * unit;
  const double h = 2 * margin + sc.height * unit;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  os << "<style>line,path{stroke:black;fill:none;stroke-width:1.5}rect{fill:white;stroke:black}"
        "text{font-family:sans-serif;font-size:11px;text-anchor:middle;dominant-baseline:middle}</style>\n";
  for (const auto & l : sc.lines) {
    os << "<line class=\"" << (l.swap ? "swap" : "wire") << "\" x1=\"" << X(l.x1) << "\" y1=\"" << Y(l.y1)
       << "\" x2=\"" << X(l.x2) << "\" y2=\"" << Y(l.y2) << "\"/>\n";
  }
  for (const auto & a : sc.arcs) {
    const double mid = a.y + a.depth;
    os << "<path class=\"" << (a.cup ? "cup" : "cap") << "\" d=\"M " << X(a.x1) << " " << Y(a.y) << " C "
       << X(a.x1) << " " << Y(mid) << " " << X(a.x2) << " " << Y(mid) << " " << X(a.x2) << " " << Y(a.y)
       << "\"/>\n";
  }
  for (const auto & b : sc.boxes) {
    os << "<rect x=\"" << X(b.x1) << "\" y=\"" << Y(b.y1) << "\" width=\"" << num((b.x2 - b.x1) * unit)
       << "\" height=\"" << num((b.y2 - b.y1) * unit) << "\"/>\n";
    // Squeeze labels wider than their box.
    const double room = (b.x2 - b.x1) * unit - 4;
    std::string fit;
    if (static_cast<double>(b.label.size()) * 6.2 > room) {
      const double size = std::max(6.0, 11 * room / (static_cast<double>(b.label.size()) * 6.2));
      fit = " style=\"font-size:" + num(size) + "px\" textLength=\"" + num(room) + "\" lengthAdjust=\"spacingAndGlyphs\"";
    }
    os << "<text x=\"" << X((b.x1 + b.x2) / 2) << "\" y=\"" << Y((b.y1 + b.y2) / 2) << "\"" << fit << ">"
       << xml_escape(b.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ccgdisco
