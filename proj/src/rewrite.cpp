// ccgdisco/rewrite.cpp
#include "ccgdisco/rewrite.hpp"

#include <algorithm>
#include <limits>

namespace ccgdisco
{

std::string step_name(StepKind k)
{
  switch (k) {
    case StepKind::SnakeLeft: return "snake-left";
    case StepKind::SnakeRight: return "snake-right";
    case StepKind::SlideBoxThroughSwap: return "slide-box-through-swap";
    case StepKind::SwapCancel: return "swap-cancel";
    case StepKind::CupSlide: return "cup-slide";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Local steps

namespace
{

using Kind = Generator::Kind;

bool is_cap(const Layer & l) { return l.gen.kind == Kind::Cap; }
bool is_cup(const Layer & l) { return l.gen.kind == Kind::Cup; }
bool is_swap(const Layer & l) { return l.gen.kind == Kind::Swap; }

bool snake_right_at(const Diagram & d, std::size_t i)
{
  if (i + 1 >= d.layers.size()) return false;
  const auto & a = d.layers[i];
  const auto & b = d.layers[i + 1];
  return is_cap(a) && is_cup(b) && b.offset == a.offset + 1 && b.gen.base == a.gen.base && b.gen.z == a.gen.z;
}

bool snake_left_at(const Diagram & d, std::size_t i)
{
  if (i + 1 >= d.layers.size()) return false;
  const auto & a = d.layers[i];
  const auto & b = d.layers[i + 1];
  return is_cap(a) && is_cup(b) && a.offset >= 1 && b.offset + 1 == a.offset && b.gen.base == a.gen.base &&
         b.gen.z == a.gen.z;
}

bool swap_cancel_at(const Diagram & d, std::size_t i)
{
  if (i + 1 >= d.layers.size()) return false;
  return is_swap(d.layers[i]) && is_swap(d.layers[i + 1]) && d.layers[i].offset == d.layers[i + 1].offset;
}

// +1: the wire right of the box crosses it leftwards; -1: the wire left of it
// crosses rightwards; 0: no redex.
int slide_direction(const Diagram & d, std::size_t i)
{
  const auto & box = d.layers[i];
  if (box.gen.kind != Kind::Word) return 0;
  const std::size_t m = box.gen.out.size();
  const std::size_t o = box.offset;
  if (m == 0 || i + m >= d.layers.size()) return 0;
  bool right = true;
  bool left = o >= 1;
  for (std::size_t k = 0; k < m; ++k) {
    const auto & s = d.layers[i + 1 + k];
    if (!is_swap(s)) return 0;
    if (s.offset != o + m - 1 - k) right = false;
    if (!left || s.offset != o - 1 + k) left = false;
  }
  return right ? 1 : (left ? -1 : 0);
}

bool cup_slide_at(const Diagram & d, std::size_t i)
{
  if (i + 1 >= d.layers.size()) return false;
  const auto & a = d.layers[i];
  const auto & c = d.layers[i + 1];
  if (!is_cup(c) || is_cup(a)) return false;
  const std::size_t out = a.gen.cod().size();
  return c.offset + 2 <= a.offset || c.offset >= a.offset + out;
}

}  // namespace

std::vector<RewriteStep> find_steps(const Diagram & d)
{
  std::vector<RewriteStep> out;
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const std::size_t o = d.layers[i].offset;
    if (snake_left_at(d, i)) out.push_back({StepKind::SnakeLeft, i, o});
    if (snake_right_at(d, i)) out.push_back({StepKind::SnakeRight, i, o});
    if (slide_direction(d, i) != 0) out.push_back({StepKind::SlideBoxThroughSwap, i, o});
    if (swap_cancel_at(d, i)) out.push_back({StepKind::SwapCancel, i, o});
    if (cup_slide_at(d, i)) out.push_back({StepKind::CupSlide, i, o});
  }
  return out;
}

Diagram apply_step(const Diagram & d, const RewriteStep & step)
{
  const std::size_t i = step.layer;
  auto missing = [&] {
    return DiagramError("no " + step_name(step.kind) + " redex at layer " + std::to_string(i));
  };
  if (i >= d.layers.size() || d.layers[i].offset != step.offset) throw missing();
  Diagram out = d;
  auto at = out.layers.begin() + static_cast<std::ptrdiff_t>(i);
  switch (step.kind) {
    case StepKind::SnakeLeft:
      if (!snake_left_at(d, i)) throw missing();
      out.layers.erase(at, at + 2);
      break;
    case StepKind::SnakeRight:
      if (!snake_right_at(d, i)) throw missing();
      out.layers.erase(at, at + 2);
      break;
    case StepKind::SwapCancel:
      if (!swap_cancel_at(d, i)) throw missing();
      out.layers.erase(at, at + 2);
      break;
    case StepKind::SlideBoxThroughSwap: {
      const int dir = slide_direction(d, i);
      if (dir == 0) throw missing();
      const std::size_t m = d.layers[i].gen.out.size();
      at->offset = dir > 0 ? at->offset + 1 : at->offset - 1;
      out.layers.erase(at + 1, at + 1 + static_cast<std::ptrdiff_t>(m));
      break;
    }
    case StepKind::CupSlide: {
      if (!cup_slide_at(d, i)) throw missing();
      Layer a = d.layers[i];
      Layer c = d.layers[i + 1];
      const std::size_t in = a.gen.dom().size();
      const std::size_t outw = a.gen.cod().size();
      if (c.offset + 2 <= a.offset) {
        a.offset -= 2;
      } else {
        c.offset = c.offset - outw + in;
      }
      out.layers[i] = c;
      out.layers[i + 1] = a;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wiring

Wiring extract_wiring(const Diagram & d)
{
  boundaries(d);  // validates
  Wiring w;
  w.dom = d.dom;
  w.cod = d.cod;

  // Vertices: terminals first (dom, box ports in layer order, cod), then
  // two internal vertices per cap.
  std::size_t nbox_ports = 0;
  for (const auto & l : d.layers) {
    if (l.gen.kind == Kind::Word) nbox_ports += l.gen.out.size();
  }
  const std::size_t nterm = d.dom.size() + nbox_ports + d.cod.size();
  w.type.resize(nterm);
  std::vector<std::vector<std::size_t>> adj(nterm);
  std::vector<Wire> cap_type;  // per internal vertex

  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };

  std::vector<std::size_t> cur;
  for (std::size_t i = 0; i < d.dom.size(); ++i) {
    w.type[i] = d.dom[i];
    cur.push_back(i);
  }
  std::size_t next_port = d.dom.size();
  for (const auto & l : d.layers) {
    auto pos = cur.begin() + static_cast<std::ptrdiff_t>(l.offset);
    switch (l.gen.kind) {
      case Kind::Word: {
        w.boxes.push_back({l.gen.label, l.gen.out, next_port});
        std::vector<std::size_t> ports;
        for (const auto & wire : l.gen.out) {
          w.type[next_port] = wire;
          ports.push_back(next_port++);
        }
        cur.insert(pos, ports.begin(), ports.end());
        break;
      }
      case Kind::Cap: {
        const std::size_t u = adj.size();
        adj.emplace_back();
        adj.emplace_back();
        cap_type.push_back(Wire{l.gen.base, l.gen.z});
        cap_type.push_back(Wire{l.gen.base, l.gen.z});
        link(u, u + 1);
        cur.insert(pos, {u, u + 1});
        break;
      }
      case Kind::Cup:
        link(*pos, *(pos + 1));
        cur.erase(pos, pos + 2);
        break;
      case Kind::Swap:
        std::iter_swap(pos, pos + 1);
        break;
    }
  }
  const std::size_t cod0 = d.dom.size() + nbox_ports;
  for (std::size_t k = 0; k < d.cod.size(); ++k) {
    w.type[cod0 + k] = d.cod[k];
    link(cur[k], cod0 + k);
  }

  constexpr auto none = std::numeric_limits<std::size_t>::max();
  w.partner.assign(nterm, none);
  std::vector<bool> seen(adj.size(), false);
  for (std::size_t t = 0; t < nterm; ++t) {
    if (seen[t]) continue;
    seen[t] = true;
    std::size_t prev = t;
    std::size_t at = adj[t].at(0);
    while (at >= nterm) {
      seen[at] = true;
      const std::size_t nxt = adj[at][0] == prev ? adj[at][1] : adj[at][0];
      prev = at;
      at = nxt;
    }
    seen[at] = true;
    w.partner[t] = at;
    w.partner[at] = t;
  }
  for (std::size_t v = nterm; v < adj.size(); ++v) {
    if (seen[v]) continue;
    w.loops.push_back(cap_type[v - nterm]);
    std::size_t prev = v;
    std::size_t at = v;
    do {
      seen[at] = true;
      const std::size_t nxt = adj[at][0] == prev ? adj[at][1] : adj[at][0];
      prev = at;
      at = nxt;
    } while (at != v);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Layout search and emission

namespace
{

struct Item
{
  enum class Type { Dom, Box, Leg } type;
  std::size_t index;
};

class RowSearch
{
public:
  RowSearch(const Wiring & w, bool free_order) : w_(w), free_(free_order) {}

  std::optional<std::vector<Item>> run()
  {
    if (!w_.loops.empty()) return std::nullopt;
    State s;
    s.placed.assign(w_.type.size(), false);
    s.box_done.assign(w_.boxes.size(), false);
    if (search(s)) return s.row;
    return std::nullopt;
  }

private:
  struct State
  {
    std::vector<bool> placed;
    std::vector<bool> box_done;
    std::size_t boxes_left = 0;
    std::size_t dom_next = 0;
    std::size_t cod_next = 0;
    std::vector<std::size_t> cups;  // open top terminals
    std::vector<std::size_t> caps;  // open left legs (cod terminals)
    std::vector<Item> row;
  };

  static constexpr std::size_t kBudget = 2'000'000;

  bool place(State & s, std::size_t t) const
  {
    const std::size_t p = w_.partner[t];
    if (w_.is_cod(p)) {
      if (!s.cups.empty() || p - w_.cod_first() != s.cod_next) return false;
      if (!(w_.type[p] == w_.type[t])) return false;  // curled wire
      ++s.cod_next;
    } else if (s.placed[p]) {
      if (s.cups.empty() || s.cups.back() != p) return false;
      if (w_.type[p].base != w_.type[t].base || w_.type[p].z + 1 != w_.type[t].z) return false;
      s.cups.pop_back();
    } else {
      s.cups.push_back(t);
    }
    s.placed[t] = true;
    return true;
  }

  bool complete(const State & s) const
  {
    return s.dom_next == w_.dom.size() && s.cod_next == w_.cod.size() && s.cups.empty() && s.caps.empty() &&
           std::all_of(s.box_done.begin(), s.box_done.end(), [](bool b) { return b; });
  }

  bool search(State & s)
  {
    if (++steps_ > kBudget) return false;
    if (complete(s)) return true;

    // Cap leg at the next cod position.
    if (s.cod_next < w_.cod.size() && s.cups.empty()) {
      const std::size_t t = w_.cod_first() + s.cod_next;
      const std::size_t p = w_.partner[t];
      if (w_.is_cod(p)) {
        State n = s;
        bool ok = true;
        if (p > t) {
          ok = w_.type[t].base == w_.type[p].base && w_.type[t].z == w_.type[p].z + 1;
          n.caps.push_back(t);
        } else {
          ok = !n.caps.empty() && n.caps.back() == p;
          if (ok) n.caps.pop_back();
        }
        if (ok) {
          ++n.cod_next;
          n.row.push_back({Item::Type::Leg, s.cod_next});
          if (search(n)) {
            s = std::move(n);
            return true;
          }
        }
      }
    }

    if (s.dom_next < w_.dom.size() && s.caps.empty()) {
      State n = s;
      if (place(n, n.dom_next)) {
        n.row.push_back({Item::Type::Dom, n.dom_next});
        ++n.dom_next;
        if (search(n)) {
          s = std::move(n);
          return true;
        }
      }
    }

    for (std::size_t b = 0; b < w_.boxes.size(); ++b) {
      if (s.box_done[b]) continue;
      State n = s;
      bool ok = true;
      const auto & box = w_.boxes[b];
      for (std::size_t k = 0; k < box.out.size() && ok; ++k) ok = place(n, box.first + k);
      if (ok) {
        n.box_done[b] = true;
        n.row.push_back({Item::Type::Box, b});
        if (search(n)) {
          s = std::move(n);
          return true;
        }
      }
      if (!free_) break;
    }
    return false;
  }

  const Wiring & w_;
  bool free_;
  std::size_t steps_ = 0;
};

Diagram emit_planar(const Wiring & w, const std::vector<Item> & row)
{
  Diagram d = Diagram::identity(w.dom);
  std::vector<std::size_t> cur;
  for (std::size_t i = 0; i < w.dom.size(); ++i) cur.push_back(i);
  std::size_t cursor = 0;
  for (const auto & it : row) {
    switch (it.type) {
      case Item::Type::Dom:
        ++cursor;
        break;
      case Item::Type::Box: {
        const auto & box = w.boxes[it.index];
        d.then(cursor, Generator::word(box.label, box.out));
        for (std::size_t k = 0; k < box.out.size(); ++k) {
          cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(cursor + k), box.first + k);
        }
        cursor += box.out.size();
        break;
      }
      case Item::Type::Leg: {
        const std::size_t t = w.cod_first() + it.index;
        const std::size_t p = w.partner[t];
        if (p > t) {
          d.then(cursor, Generator::cap(w.type[p].base, w.type[p].z));
          cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(cursor), {t, p});
        }
        ++cursor;
        break;
      }
    }
  }
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = cur.size(); i-- > 1;) {
      if (!w.is_cod(cur[i - 1]) && w.partner[cur[i - 1]] == cur[i]) {
        --i;
        d.then(i, Generator::cup(w.type[cur[i]].base, w.type[cur[i]].z));
        cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(i), cur.begin() + static_cast<std::ptrdiff_t>(i + 2));
        again = true;
        break;
      }
    }
  }
  if (!(d.cod == w.cod)) throw DiagramError("internal: planar emission produced " + str(d.cod));
  return d;
}

void swap_at(Diagram & d, std::vector<std::size_t> & cur, std::size_t p)
{
  d.then(p, Generator::swap(d.cod[p], d.cod[p + 1]));
  std::swap(cur[p], cur[p + 1]);
}

Diagram emit_crossed(const Wiring & w)
{
  Diagram d = Diagram::identity(w.dom);
  std::vector<std::size_t> cur;
  for (std::size_t i = 0; i < w.dom.size(); ++i) cur.push_back(i);
  for (const auto & box : w.boxes) {
    d.then(cur.size(), Generator::word(box.label, box.out));
    for (std::size_t k = 0; k < box.out.size(); ++k) cur.push_back(box.first + k);
  }
  for (std::size_t t = w.cod_first(); t < w.type.size(); ++t) {
    const std::size_t p = w.partner[t];
    if (!w.is_cod(p) || p < t) continue;
    const bool t_left = w.type[t].z == w.type[p].z + 1;
    const std::size_t l = t_left ? t : p;
    const std::size_t r = t_left ? p : t;
    d.then(cur.size(), Generator::cap(w.type[r].base, w.type[r].z));
    cur.push_back(l);
    cur.push_back(r);
  }

  // Wires whose two ends differ by a multiple of two windings get curls.
  for (std::size_t i = 0; i < cur.size(); ++i) {
    const std::size_t t = cur[i];
    const std::size_t p = w.partner[t];
    int target = d.cod[i].z;
    if (w.is_cod(t)) {
      target = w.type[t].z;
    } else if (w.is_cod(p)) {
      target = w.type[p].z;
    } else {
      const auto j = static_cast<std::size_t>(std::find(cur.begin(), cur.end(), p) - cur.begin());
      if (j < i) {
        target = d.cod[i].z - d.cod[j].z == -1 ? d.cod[i].z : d.cod[j].z + 1;
      }
    }
    if ((target - d.cod[i].z) % 2 != 0) throw DiagramError("internal: wire with odd winding");
    while (d.cod[i].z > target) {
      const Wire x = d.cod[i];
      d.then(i, Generator::cap(x.base, x.z - 2));
      d.then(i + 1, Generator::swap(d.cod[i + 1], d.cod[i + 2]));
      d.then(i, Generator::cup(x.base, x.z - 1));
    }
    while (d.cod[i].z < target) {
      const Wire x = d.cod[i];
      d.then(i + 1, Generator::cap(x.base, x.z + 1));
      d.then(i + 1, Generator::swap(d.cod[i + 1], d.cod[i + 2]));
      d.then(i, Generator::cup(x.base, x.z));
    }
  }

  auto is_top = [&](std::size_t t) { return !w.is_cod(t); };
  auto oriented = [&](std::size_t i, std::size_t j) { return d.cod[i].z + 1 == d.cod[j].z; };
  for (;;) {
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    std::size_t best_gap = std::numeric_limits<std::size_t>::max();
    bool found = false;
    for (std::size_t i = 0; i < cur.size() && best_gap > 1; ++i) {
      if (!is_top(cur[i])) continue;
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (cur[j] != w.partner[cur[i]]) continue;
        const std::size_t gap = (j - i == 1 && !oriented(i, j)) ? 2 : j - i;
        if (gap < best_gap) {
          best_gap = gap;
          best_i = i;
          best_j = j;
          found = true;
        }
        break;
      }
    }
    if (!found) break;
    for (std::size_t p = best_j; p > best_i + 1; --p) swap_at(d, cur, p - 1);
    if (!oriented(best_i, best_i + 1)) swap_at(d, cur, best_i);
    d.then(best_i, Generator::cup(d.cod[best_i].base, d.cod[best_i].z));
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(best_i), cur.begin() + static_cast<std::ptrdiff_t>(best_i + 2));
  }

  auto cod_slot = [&](std::size_t t) { return (w.is_cod(t) ? t : w.partner[t]) - w.cod_first(); };
  for (std::size_t k = 0; k < cur.size(); ++k) {
    std::size_t p = k;
    while (cod_slot(cur[p]) != k) ++p;
    for (; p > k; --p) swap_at(d, cur, p - 1);
  }
  for (const auto & loop : w.loops) {
    const std::size_t at = d.cod.size();
    d.then(at, Generator::cap(loop.base, loop.z));
    d.then(at, Generator::swap(d.cod[at], d.cod[at + 1]));
    d.then(at, Generator::cup(loop.base, loop.z));
  }
  if (!(d.cod == w.cod)) throw DiagramError("internal: emission produced " + str(d.cod));
  return d;
}

}  // namespace

Diagram normalize(const Diagram & d)
{
  const Wiring w = extract_wiring(d);
  if (auto row = RowSearch(w, false).run()) return emit_planar(w, *row);
  if (d.count(Kind::Swap) == 0) {
    if (auto row = RowSearch(w, true).run()) return emit_planar(w, *row);
  }
  return emit_crossed(w);
}

PlanarizeResult planarize_report(const Diagram & d)
{
  if (d.count(Kind::Swap) == 0) return {d, true, {}};
  const Wiring w = extract_wiring(d);
  if (auto row = RowSearch(w, true).run()) return {emit_planar(w, *row), true, {}};
  return {d, false, "no planar arrangement of the word states exists"};
}

Diagram planarize(const Diagram & d) { return planarize_report(d).diagram; }

bool diagrams_equal(const Diagram & d1, const Diagram & d2)
{
  if (!(d1.dom == d2.dom) || !(d1.cod == d2.cod)) {
    throw DiagramError("diagrams_equal: boundaries differ (" + str(d1.dom) + " → " + str(d1.cod) + " vs " +
                       str(d2.dom) + " → " + str(d2.cod) + ")");
  }
  return normalize(planarize(d1)) == normalize(planarize(d2));
}

}  // namespace ccgdisco
