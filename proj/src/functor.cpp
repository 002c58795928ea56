// ccgdisco/functor.cpp
#include "ccgdisco/functor.hpp"

#include <optional>
#include <set>

#include "ccgdisco/rewrite.hpp"

namespace ccgdisco
{

LoweringContext LoweringContext::with_overrides(
  const std::vector<std::pair<std::string, std::string>> & kv)
{
  LoweringContext ctx;
  for (const auto & [k, v] : kv) {
    if (k.empty() || v.empty()) throw DiagramError("atom map entry needs both sides: '" + k + "=" + v + "'");
    ctx.atoms[normalize_atom(k)] = v;
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Building blocks

void append_cup_block(Diagram & d, std::size_t offset, const RObject & left)
{
  const std::size_t m = left.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Wire & w = left[m - 1 - i];
    d.then(offset + m - 1 - i, Generator::cup(w.base, w.z));
  }
}

void append_cap_block(Diagram & d, std::size_t offset, const RObject & left)
{
  for (std::size_t i = 0; i < left.size(); ++i) {
    d.then(offset + i, Generator::cap(left[i].base, left[i].z - 1));
  }
}

void append_swap_block(Diagram & d, std::size_t offset, std::size_t a, std::size_t b)
{
  for (std::size_t j = 0; j < b; ++j) {
    for (std::size_t p = offset + a + j; p > offset + j; --p) {
      d.then(p - 1, Generator::swap(d.cod[p - 1], d.cod[p]));
    }
  }
}

namespace
{

bool has_prefix(const RObject & whole, const RObject & head)
{
  return head.size() <= whole.size() && std::equal(head.begin(), head.end(), whole.begin());
}

bool has_suffix(const RObject & whole, const RObject & tail)
{
  return tail.size() <= whole.size() && std::equal(tail.begin(), tail.end(), whole.end() - static_cast<std::ptrdiff_t>(tail.size()));
}

RObject take(const RObject & r, std::size_t from, std::size_t to)
{
  return RObject(r.begin() + static_cast<std::ptrdiff_t>(from), r.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace

Diagram curry_right(const Diagram & f, const RObject & b)
{
  if (!has_suffix(f.dom, b)) throw DiagramError("curry_right: " + str(b) + " is not a suffix of " + str(f.dom));
  Diagram d = Diagram::identity(take(f.dom, 0, f.dom.size() - b.size()));
  append_cap_block(d, d.cod.size(), b);
  return compose(d, tensor(f, Diagram::identity(left_adjoint(b))));
}

Diagram curry_left(const Diagram & f, const RObject & a)
{
  if (!has_prefix(f.dom, a)) throw DiagramError("curry_left: " + str(a) + " is not a prefix of " + str(f.dom));
  Diagram d = Diagram::identity(take(f.dom, a.size(), f.dom.size()));
  append_cap_block(d, 0, right_adjoint(a));
  return compose(d, tensor(Diagram::identity(right_adjoint(a)), f));
}

Diagram uncurry_right(const Diagram & g, const RObject & b)
{
  const RObject bl = left_adjoint(b);
  if (!has_suffix(g.cod, bl)) throw DiagramError("uncurry_right: " + str(bl) + " is not a suffix of " + str(g.cod));
  Diagram d = tensor(g, Diagram::identity(b));
  append_cup_block(d, g.cod.size() - bl.size(), bl);
  return d;
}

Diagram uncurry_left(const Diagram & g, const RObject & a)
{
  const RObject ar = right_adjoint(a);
  if (!has_prefix(g.cod, ar)) throw DiagramError("uncurry_left: " + str(ar) + " is not a prefix of " + str(g.cod));
  Diagram d = tensor(Diagram::identity(a), g);
  append_cup_block(d, 0, a);
  return d;
}

// ---------------------------------------------------------------------------
// Direct images of rule terms

namespace
{

bool is_id(const BTerm & t) { return t.kind() == BTerm::Kind::Id; }

// UncurryR^n(Id W) / UncurryL^n(Id W): returns W.
std::optional<BObject> uncurry_chain(const BTerm & t, BTerm::Kind kind, int n)
{
  const BTerm * cur = &t;
  for (int i = 0; i < n; ++i) {
    if (cur->kind() != kind) return std::nullopt;
    cur = &cur->children()[0];
  }
  if (!is_id(*cur)) return std::nullopt;
  return cur->object();
}

// FTR: CurryR(UncurryL(Id R), R) with R = X ⤚ T.
std::optional<Diagram> match_raise(const BTerm & t, const LoweringContext & ctx)
{
  const bool fwd = t.kind() == BTerm::Kind::CurryR;
  if (!fwd && t.kind() != BTerm::Kind::CurryL) return std::nullopt;
  const BTerm & u = t.children()[0];
  if (u.kind() != (fwd ? BTerm::Kind::UncurryL : BTerm::Kind::UncurryR)) return std::nullopt;
  const BTerm & id = u.children()[0];
  if (!is_id(id) || !(id.object() == t.object())) return std::nullopt;
  const BObject & r = id.object();
  if (fwd) {
    // X → T ⤙ (X ⤚ T): caps t·tˡ in front of x.
    Diagram d = Diagram::identity(f_object(r.left(), ctx.atoms));
    append_cap_block(d, 0, f_object(r.right(), ctx.atoms));
    return d;
  }
  // X → (T ⤙ X) ⤚ T: caps tʳ·t after x.
  const RObject x = f_object(r.right(), ctx.atoms);
  Diagram d = Diagram::identity(x);
  append_cap_block(d, x.size(), right_adjoint(f_object(r.left(), ctx.atoms)));
  return d;
}

// FC/GFC: CurryR^c(Compose(UncurryR(Id A), Tensor(Id A, UncurryR^c(Id W)))); BC/GBC mirrored.
std::optional<Diagram> match_composition(const BTerm & t, const LoweringContext & ctx)
{
  const bool fwd = t.kind() == BTerm::Kind::CurryR;
  if (!fwd && t.kind() != BTerm::Kind::CurryL) return std::nullopt;
  const auto curry = t.kind();
  const auto uncurry = fwd ? BTerm::Kind::UncurryR : BTerm::Kind::UncurryL;
  int c = 0;
  const BTerm * cur = &t;
  while (cur->kind() == curry) {
    ++c;
    cur = &cur->children()[0];
  }
  if (cur->kind() != BTerm::Kind::Compose) return std::nullopt;
  const BTerm & g = cur->children()[0];
  const BTerm & f = cur->children()[1];
  auto functor_obj = uncurry_chain(g, uncurry, 1);
  if (!functor_obj || f.kind() != BTerm::Kind::Tensor) return std::nullopt;
  const BTerm & fl = f.children()[0];
  const BTerm & fr = f.children()[1];
  const BTerm & fixed = fwd ? fl : fr;
  const BTerm & chain = fwd ? fr : fl;
  if (!is_id(fixed) || !(fixed.object() == *functor_obj)) return std::nullopt;
  auto w = uncurry_chain(chain, uncurry, c);
  if (!w) return std::nullopt;

  const RObject fa = f_object(*functor_obj, ctx.atoms);
  const RObject fw = f_object(*w, ctx.atoms);
  Diagram d = Diagram::identity(fwd ? concat(fa, fw) : concat(fw, fa));
  if (fwd) {
    // x·yˡ ⊗ y·zˡ·$ˡ…: close yˡ against y.
    const RObject yl = left_adjoint(f_object(functor_obj->right(), ctx.atoms));
    append_cup_block(d, fa.size() - yl.size(), yl);
  } else {
    // …$ʳ·zʳ·y ⊗ yʳ·x: close y against yʳ.
    const RObject y = f_object(functor_obj->left(), ctx.atoms);
    append_cup_block(d, fw.size() - y.size(), y);
  }
  return d;
}

Diagram lower_cross(const BTerm & t, const LoweringContext & ctx)
{
  const auto parts = t.dom().factors();
  const RObject x = f_object(t.cross_x(), ctx.atoms);
  const RObject y = f_object(t.cross_y(), ctx.atoms);
  const RObject left = f_object(parts.at(0), ctx.atoms);
  const RObject right = f_object(parts.at(1), ctx.atoms);
  Diagram d = Diagram::identity(concat(left, right));
  switch (t.cross_direction()) {
    case RuleKind::FCX:
    case RuleKind::GFCX: {
      // x·yˡ ⊗ D·y, D = $ʳ…·zʳ
      const RObject yl = left_adjoint(y);
      const std::size_t dn = right.size() - y.size();
      append_swap_block(d, x.size(), yl.size(), dn);
      append_cup_block(d, x.size() + dn, yl);
      append_swap_block(d, 0, x.size(), dn);
      break;
    }
    case RuleKind::BCX:
    case RuleKind::GBCX: {
      // y·D ⊗ yʳ·x, D = zˡ·$ˡ…
      const std::size_t dn = left.size() - y.size();
      append_swap_block(d, y.size(), dn, y.size());
      append_cup_block(d, 0, y);
      append_swap_block(d, 0, dn, x.size());
      break;
    }
    default:
      throw DiagramError("cross box with non-crossed direction");
  }
  return d;
}

Diagram lower_rec(const BTerm & t, const LoweringContext & ctx)
{
  switch (t.kind()) {
    case BTerm::Kind::Id:
      return Diagram::identity(f_object(t.object(), ctx.atoms));
    case BTerm::Kind::Word:
      return Diagram::state(t.label(), f_object(t.object(), ctx.atoms));
    case BTerm::Kind::Compose:
      return compose(lower_rec(t.children()[1], ctx), lower_rec(t.children()[0], ctx));
    case BTerm::Kind::Tensor:
      return tensor(lower_rec(t.children()[0], ctx), lower_rec(t.children()[1], ctx));
    case BTerm::Kind::CurryR:
    case BTerm::Kind::CurryL: {
      if (auto d = match_raise(t, ctx)) return *d;
      if (auto d = match_composition(t, ctx)) return *d;
      Diagram f = lower_rec(t.children()[0], ctx);
      const RObject split = f_object(t.object(), ctx.atoms);
      return t.kind() == BTerm::Kind::CurryR ? curry_right(f, split) : curry_left(f, split);
    }
    case BTerm::Kind::UncurryR: {
      Diagram g = lower_rec(t.children()[0], ctx);
      return uncurry_right(g, f_object(t.children()[0].cod().right(), ctx.atoms));
    }
    case BTerm::Kind::UncurryL: {
      Diagram g = lower_rec(t.children()[0], ctx);
      return uncurry_left(g, f_object(t.children()[0].cod().left(), ctx.atoms));
    }
    case BTerm::Kind::Cross:
      return lower_cross(t, ctx);
  }
  throw DiagramError("unknown term kind");
}

void collect_atoms(const BObject & o, std::set<std::string> & out)
{
  switch (o.kind()) {
    case BObject::Kind::Unit:
      return;
    case BObject::Kind::Base:
      out.insert(o.name());
      return;
    case BObject::Kind::Tensor:
      for (const auto & f : o.factors()) collect_atoms(f, out);
      return;
    default:
      collect_atoms(o.left(), out);
      collect_atoms(o.right(), out);
  }
}

void collect_atoms(const BTerm & t, std::set<std::string> & out)
{
  collect_atoms(t.dom(), out);
  collect_atoms(t.cod(), out);
  for (const auto & c : t.children()) collect_atoms(c, out);
}

}  // namespace

Diagram lower(const BTerm & term, const LoweringContext & ctx)
{
  std::set<std::string> used;
  collect_atoms(term, used);
  std::map<std::string, std::string> seen;
  for (const auto & a : used) {
    const std::string img = atom_image(a, ctx.atoms);
    auto [it, fresh] = seen.emplace(img, a);
    if (!fresh) throw DiagramError("atom map sends both " + it->second + " and " + a + " to " + img);
  }
  Diagram d = lower_rec(term, ctx);
  if (!(d.dom == f_object(term.dom(), ctx.atoms)) || !(d.cod == f_object(term.cod(), ctx.atoms))) {
    throw DiagramError("lowering produced " + str(d.dom) + " → " + str(d.cod) + " for term of type " +
                       term.dom().str() + " → " + term.cod().str());
  }
  return d;
}

// ---------------------------------------------------------------------------

namespace
{

void check_term(const BTerm & t, const LoweringContext & ctx, FunctorLawReport & rep)
{
  for (const auto & c : t.children()) check_term(c, ctx, rep);
  ++rep.checked;
  auto fail = [&](const std::string & law) { rep.failures.push_back(law + " fails on " + t.sexpr()); };
  try {
    const Diagram whole = lower(t, ctx);
    switch (t.kind()) {
      case BTerm::Kind::Compose:
        if (!(whole == compose(lower(t.children()[1], ctx), lower(t.children()[0], ctx)))) fail("F(g∘f) = F(g)∘F(f)");
        break;
      case BTerm::Kind::Tensor:
        if (!(whole == tensor(lower(t.children()[0], ctx), lower(t.children()[1], ctx)))) fail("F(f⊗g) = F(f)⊗F(g)");
        break;
      case BTerm::Kind::CurryR:
      case BTerm::Kind::CurryL: {
        const Diagram f = lower(t.children()[0], ctx);
        const RObject split = f_object(t.object(), ctx.atoms);
        const bool r = t.kind() == BTerm::Kind::CurryR;
        const Diagram bent = r ? curry_right(f, split) : curry_left(f, split);
        if (!(normalize(whole) == normalize(bent))) fail(r ? "F(κR f) = kR F(f)" : "F(κL f) = kL F(f)");
        const Diagram back = r ? uncurry_right(whole, split) : uncurry_left(whole, split);
        if (!(normalize(back) == normalize(f))) fail("uncurry ∘ curry = id");
        break;
      }
      case BTerm::Kind::UncurryR:
      case BTerm::Kind::UncurryL: {
        const Diagram g = lower(t.children()[0], ctx);
        const bool r = t.kind() == BTerm::Kind::UncurryR;
        const BObject & hom = t.children()[0].cod();
        const RObject split = f_object(r ? hom.right() : hom.left(), ctx.atoms);
        const Diagram flat = r ? uncurry_right(g, split) : uncurry_left(g, split);
        if (!(normalize(whole) == normalize(flat))) fail(r ? "F(κR⁻¹ g) = kR⁻¹ F(g)" : "F(κL⁻¹ g) = kL⁻¹ F(g)");
        const Diagram back = r ? curry_right(whole, split) : curry_left(whole, split);
        if (!(normalize(back) == normalize(g))) fail("curry ∘ uncurry = id");
        break;
      }
      default:
        break;
    }
  } catch (const Error & e) {
    rep.failures.push_back(std::string("lowering error on ") + t.sexpr() + ": " + e.what());
  }
}

}  // namespace

FunctorLawReport verify_functor_laws(const std::vector<BTerm> & samples, const LoweringContext & ctx)
{
  FunctorLawReport rep;
  for (const auto & t : samples) check_term(t, ctx, rep);
  return rep;
}

}  // namespace ccgdisco
