// ccgdisco/diagram.cpp
#include "ccgdisco/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace ccgdisco
{

std::string Wire::str() const
{
  std::string s = base;
  for (int i = 0; i < z; ++i) s += "ʳ";
  for (int i = 0; i > z; --i) s += "ˡ";
  return s;
}

RObject right_adjoint(const RObject & a)
{
  RObject out(a.rbegin(), a.rend());
  for (auto & w : out) ++w.z;
  return out;
}

RObject left_adjoint(const RObject & a)
{
  RObject out(a.rbegin(), a.rend());
  for (auto & w : out) --w.z;
  return out;
}

RObject concat(const RObject & a, const RObject & b)
{
  RObject out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string str(const RObject & a)
{
  if (a.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != 0) s += "·";
    s += a[i].str();
  }
  return s;
}

AtomMap default_atom_map()
{
  return {{"NP", "n"}, {"S", "s"}, {"PP", "p"}, {"N", "N"}};
}

std::string atom_image(const std::string & atom, const AtomMap & atoms)
{
  if (auto it = atoms.find(atom); it != atoms.end()) return it->second;
  std::string s = atom;
  for (auto & c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

namespace
{

void check_winding(const RObject & r)
{
  for (const auto & w : r) {
    if (w.z > kMaxWinding || w.z < -kMaxWinding) {
      throw DiagramError("winding overflow on wire " + w.str());
    }
  }
}

}  // namespace

RObject f_object(const CcgType & t, const AtomMap & atoms)
{
  return f_object(to_bobject(t), atoms);
}

RObject f_object(const BObject & o, const AtomMap & atoms)
{
  RObject out;
  switch (o.kind()) {
    case BObject::Kind::Unit:
      break;
    case BObject::Kind::Base:
      out.push_back(Wire{atom_image(o.name(), atoms), 0});
      break;
    case BObject::Kind::Tensor:
      for (const auto & f : o.factors()) out = concat(out, f_object(f, atoms));
      break;
    case BObject::Kind::LeftHom:
      out = concat(right_adjoint(f_object(o.left(), atoms)), f_object(o.right(), atoms));
      break;
    case BObject::Kind::RightHom:
      out = concat(f_object(o.left(), atoms), left_adjoint(f_object(o.right(), atoms)));
      break;
  }
  check_winding(out);
  return out;
}

// ---------------------------------------------------------------------------

Generator Generator::word(std::string label, RObject cod)
{
  Generator g;
  g.kind = Kind::Word;
  g.label = std::move(label);
  g.out = std::move(cod);
  return g;
}

Generator Generator::cup(std::string base, int z)
{
  Generator g;
  g.kind = Kind::Cup;
  g.base = std::move(base);
  g.z = z;
  return g;
}

Generator Generator::cap(std::string base, int z)
{
  Generator g;
  g.kind = Kind::Cap;
  g.base = std::move(base);
  g.z = z;
  return g;
}

Generator Generator::swap(Wire left, Wire right)
{
  Generator g;
  g.kind = Kind::Swap;
  g.left = std::move(left);
  g.right = std::move(right);
  return g;
}

RObject Generator::dom() const
{
  switch (kind) {
    case Kind::Word: return {};
    case Kind::Cup: return {Wire{base, z}, Wire{base, z + 1}};
    case Kind::Cap: return {};
    case Kind::Swap: return {left, right};
  }
  return {};
}

RObject Generator::cod() const
{
  switch (kind) {
    case Kind::Word: return out;
    case Kind::Cup: return {};
    case Kind::Cap: return {Wire{base, z + 1}, Wire{base, z}};
    case Kind::Swap: return {right, left};
  }
  return {};
}

std::string Generator::str() const
{
  switch (kind) {
    case Kind::Word: return "word(" + label + ": " + ccgdisco::str(out) + ")";
    case Kind::Cup: return "cup(" + Wire{base, z}.str() + ")";
    case Kind::Cap: return "cap(" + Wire{base, z}.str() + ")";
    case Kind::Swap: return "swap(" + left.str() + ", " + right.str() + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------

Diagram Diagram::identity(RObject a)
{
  Diagram d;
  d.dom = a;
  d.cod = std::move(a);
  return d;
}

Diagram Diagram::state(std::string label, RObject cod)
{
  Diagram d;
  d.then(0, Generator::word(std::move(label), std::move(cod)));
  return d;
}

namespace
{

// Applies g at offset to boundary b; returns an error message or "".
std::string apply_layer(RObject & b, std::size_t offset, const Generator & g)
{
  const RObject in = g.dom();
  if (offset + in.size() > b.size()) {
    return "offset " + std::to_string(offset) + " with " + std::to_string(in.size()) +
           " input wires exceeds boundary " + str(b);
  }
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!(b[offset + i] == in[i])) {
      RObject actual(b.begin() + static_cast<std::ptrdiff_t>(offset),
                     b.begin() + static_cast<std::ptrdiff_t>(offset + in.size()));
      return g.str() + " expects " + str(in) + " at offset " + std::to_string(offset) + ", found " +
             str(actual);
    }
  }
  const RObject out = g.cod();
  for (const auto & w : out) {
    if (w.z > kMaxWinding || w.z < -kMaxWinding) return "winding overflow on wire " + w.str();
  }
  if (g.kind == Generator::Kind::Word && g.label.empty()) return "word box with empty label";
  auto pos = b.begin() + static_cast<std::ptrdiff_t>(offset);
  pos = b.erase(pos, pos + static_cast<std::ptrdiff_t>(in.size()));
  b.insert(pos, out.begin(), out.end());
  return {};
}

}  // namespace

Diagram & Diagram::then(std::size_t offset, Generator g)
{
  RObject b = cod;
  if (auto err = apply_layer(b, offset, g); !err.empty()) {
    throw DiagramError("layer " + std::to_string(layers.size()) + ": " + err);
  }
  cod = std::move(b);
  layers.push_back(Layer{offset, std::move(g)});
  return *this;
}

std::size_t Diagram::count(Generator::Kind k) const
{
  return static_cast<std::size_t>(
    std::count_if(layers.begin(), layers.end(), [k](const Layer & l) { return l.gen.kind == k; }));
}

std::vector<DiagramViolation> well_formed(const Diagram & d)
{
  std::vector<DiagramViolation> out;
  RObject b = d.dom;
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const auto & l = d.layers[i];
    if (auto err = apply_layer(b, l.offset, l.gen); !err.empty()) {
      out.push_back({i, err});
      // Continue from the layer's intended output so later errors stay local.
      RObject in = l.gen.dom();
      std::size_t start = std::min(l.offset, b.size());
      std::size_t stop = std::min(l.offset + in.size(), b.size());
      b.erase(b.begin() + static_cast<std::ptrdiff_t>(start), b.begin() + static_cast<std::ptrdiff_t>(stop));
      RObject cod = l.gen.cod();
      b.insert(b.begin() + static_cast<std::ptrdiff_t>(start), cod.begin(), cod.end());
    }
  }
  if (!(b == d.cod)) {
    out.push_back({d.layers.size(), "declared cod " + str(d.cod) + " but layers produce " + str(b)});
  }
  return out;
}

bool conserves_wires(const Diagram & d)
{
  std::size_t box_wires = 0;
  for (const auto & l : d.layers) {
    if (l.gen.kind == Generator::Kind::Word) box_wires += l.gen.out.size();
  }
  return 2 * d.count(Generator::Kind::Cup) + d.cod.size() ==
         box_wires + 2 * d.count(Generator::Kind::Cap) + d.dom.size();
}

std::vector<RObject> boundaries(const Diagram & d)
{
  std::vector<RObject> out;
  out.reserve(d.layers.size() + 1);
  RObject b = d.dom;
  out.push_back(b);
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    if (auto err = apply_layer(b, d.layers[i].offset, d.layers[i].gen); !err.empty()) {
      throw DiagramError("layer " + std::to_string(i) + ": " + err);
    }
    out.push_back(b);
  }
  if (!(b == d.cod)) throw DiagramError("declared cod " + str(d.cod) + " but layers produce " + str(b));
  return out;
}

Diagram compose(const Diagram & d1, const Diagram & d2)
{
  if (!(d1.cod == d2.dom)) {
    throw DiagramError("cannot compose: cod " + str(d1.cod) + " does not match dom " + str(d2.dom));
  }
  Diagram out = d1;
  out.layers.insert(out.layers.end(), d2.layers.begin(), d2.layers.end());
  out.cod = d2.cod;
  return out;
}

Diagram tensor(const Diagram & d1, const Diagram & d2)
{
  Diagram out;
  out.dom = concat(d1.dom, d2.dom);
  out.cod = concat(d1.cod, d2.cod);
  out.layers = d1.layers;
  for (const auto & l : d2.layers) out.layers.push_back(Layer{l.offset + d1.cod.size(), l.gen});
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace
{

using nlohmann::json;

json wire_json(const Wire & w) { return json{{"base", w.base}, {"z", w.z}}; }

json robject_json(const RObject & r)
{
  json a = json::array();
  for (const auto & w : r) a.push_back(wire_json(w));
  return a;
}

json gen_json(const Generator & g)
{
  switch (g.kind) {
    case Generator::Kind::Word:
      return json{{"kind", "word"}, {"label", g.label}, {"cod", robject_json(g.out)}};
    case Generator::Kind::Cup:
      return json{{"kind", "cup"}, {"base", g.base}, {"z", g.z}};
    case Generator::Kind::Cap:
      return json{{"kind", "cap"}, {"base", g.base}, {"z", g.z}};
    case Generator::Kind::Swap:
      return json{{"kind", "swap"}, {"left", wire_json(g.left)}, {"right", wire_json(g.right)}};
  }
  return {};
}

const json & field(const json & j, const char * key, const std::string & where)
{
  if (!j.is_object() || !j.contains(key)) throw DiagramError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Wire wire_from(const json & j, const std::string & where)
{
  const auto & b = field(j, "base", where);
  const auto & z = field(j, "z", where);
  if (!b.is_string() || !z.is_number_integer()) throw DiagramError(where + ": malformed wire");
  return Wire{b.get<std::string>(), z.get<int>()};
}

RObject robject_from(const json & j, const std::string & where)
{
  if (!j.is_array()) throw DiagramError(where + ": expected an array of wires");
  RObject r;
  for (std::size_t i = 0; i < j.size(); ++i) r.push_back(wire_from(j[i], where + "/" + std::to_string(i)));
  return r;
}

Generator gen_from(const json & j, const std::string & where)
{
  const auto kind = field(j, "kind", where).get<std::string>();
  if (kind == "word") {
    return Generator::word(field(j, "label", where).get<std::string>(),
                           robject_from(field(j, "cod", where), where + "/cod"));
  }
  if (kind == "cup" || kind == "cap") {
    auto base = field(j, "base", where).get<std::string>();
    int z = field(j, "z", where).get<int>();
    return kind == "cup" ? Generator::cup(base, z) : Generator::cap(base, z);
  }
  if (kind == "swap") {
    return Generator::swap(wire_from(field(j, "left", where), where + "/left"),
                           wire_from(field(j, "right", where), where + "/right"));
  }
  throw DiagramError(where + ": unknown generator kind '" + kind + "'");
}

}  // namespace

std::string to_json(const Diagram & d, int indent)
{
  json layers = json::array();
  for (const auto & l : d.layers) layers.push_back(json{{"offset", l.offset}, {"gen", gen_json(l.gen)}});
  json j{{"dom", robject_json(d.dom)}, {"cod", robject_json(d.cod)}, {"layers", layers}};
  return j.dump(indent);
}

Diagram diagram_from_json(std::string_view text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error & e) {
    throw DiagramError(std::string("invalid JSON: ") + e.what());
  }
  try {
    Diagram d;
    d.dom = robject_from(field(j, "dom", ""), "/dom");
    d.cod = robject_from(field(j, "cod", ""), "/cod");
    const auto & ls = field(j, "layers", "");
    if (!ls.is_array()) throw DiagramError("/layers: expected an array");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const std::string where = "/layers/" + std::to_string(i);
      const auto & off = field(ls[i], "offset", where);
      if (!off.is_number_unsigned() && !(off.is_number_integer() && off.get<long long>() >= 0)) {
        throw DiagramError(where + ": offset must be a nonnegative integer");
      }
      d.layers.push_back(Layer{off.get<std::size_t>(), gen_from(field(ls[i], "gen", where), where + "/gen")});
    }
    return d;
  } catch (const json::exception & e) {
    throw DiagramError(std::string("malformed diagram JSON: ") + e.what());
  }
}

}  // namespace ccgdisco
