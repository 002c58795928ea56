// ccgdisco/semantics.cpp
#include "ccgdisco/semantics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace ccgdisco
{

namespace
{

std::size_t product(const std::vector<std::size_t> & v, std::size_t from, std::size_t to)
{
  std::size_t p = 1;
  for (std::size_t i = from; i < to; ++i) p *= v[i];
  return p;
}

}  // namespace

template <class T>
const T & BasicTensor<T>::at(const std::vector<std::size_t> & idx) const
{
  if (idx.size() != dims.size()) throw SemanticsError("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= dims[i]) throw SemanticsError("index out of range");
    flat = flat * dims[i] + idx[i];
  }
  return data.at(flat);
}

// ---------------------------------------------------------------------------

DimAssignment DimAssignment::defaults()
{
  DimAssignment d;
  d.set("n", 2).set("s", 2).set("p", 2).set("N", 2).set_fallback(2);
  return d;
}

DimAssignment DimAssignment::parse(std::string_view spec, DimAssignment base)
{
  DimAssignment d = std::move(base);
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view item = spec.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw SemanticsError("dimension entry '" + std::string(item) + "' is not base=k");
      }
      std::string_view num = item.substr(eq + 1);
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
      if (ec != std::errc() || ptr != num.data() + num.size() || k == 0) {
        throw SemanticsError("dimension for '" + std::string(item.substr(0, eq)) + "' must be a positive integer");
      }
      const std::string base(item.substr(0, eq));
      if (base == "*") {
        d.set_fallback(k);
      } else {
        d.set(base, k);
      }
    }
    start = comma + 1;
  }
  return d;
}

DimAssignment & DimAssignment::set(const std::string & base, std::size_t dim)
{
  if (dim == 0) throw SemanticsError("dimension of " + base + " must be positive");
  dims_[base] = dim;
  return *this;
}

DimAssignment & DimAssignment::set_fallback(std::size_t dim)
{
  if (dim == 0) throw SemanticsError("fallback dimension must be positive");
  fallback_ = dim;
  return *this;
}

std::size_t DimAssignment::dim(const std::string & base) const
{
  if (auto it = dims_.find(base); it != dims_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw SemanticsError("no dimension assigned to wire base '" + base + "'");
}

// ---------------------------------------------------------------------------

std::uint64_t SplitMix64::next()
{
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0; }

std::uint64_t fnv1a64(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string wire_key(const RObject & cod)
{
  std::string s;
  for (std::size_t i = 0; i < cod.size(); ++i) {
    if (i != 0) s += ',';
    s += cod[i].base + ":" + std::to_string(cod[i].z);
  }
  return s;
}

namespace
{

template <class T>
T draw(SplitMix64 & rng)
{
  if constexpr (std::is_same_v<T, double>) {
    return rng.uniform();
  } else {
    const double re = rng.uniform();
    const double im = rng.uniform();
    return T(re, im);
  }
}

template <class T>
BasicTensor<T> shaped(const RObject & wires, const DimAssignment & dims)
{
  BasicTensor<T> t;
  t.wires = wires;
  for (const auto & w : wires) t.dims.push_back(dims.dim(w.base));
  t.data.assign(product(t.dims, 0, t.dims.size()), T{});
  return t;
}

}  // namespace

template <class T>
BasicTensor<T> random_word_tensor(std::uint64_t seed, const std::string & label, const RObject & cod,
                                  const DimAssignment & dims)
{
  BasicTensor<T> t = shaped<T>(cod, dims);
  SplitMix64 rng(seed ^ fnv1a64(label + '\x1f' + wire_key(cod)));
  for (auto & x : t.data) x = draw<T>(rng);
  return t;
}

Lexicon Lexicon::seeded(std::uint64_t seed)
{
  Lexicon l;
  l.seed_ = seed;
  return l;
}

Lexicon & Lexicon::add(const std::string & label, Tensor t)
{
  if (t.data.size() != product(t.dims, 0, t.dims.size()) || t.dims.size() != t.wires.size()) {
    throw SemanticsError("lexicon entry for '" + label + "' has inconsistent shape");
  }
  RObject key = t.wires;
  entries_[{label, std::move(key)}] = std::move(t);
  return *this;
}

template <class T>
BasicTensor<T> Lexicon::lookup(const std::string & label, const RObject & cod, const DimAssignment & dims) const
{
  if (auto it = entries_.find({label, cod}); it != entries_.end()) {
    const Tensor & e = it->second;
    for (std::size_t i = 0; i < cod.size(); ++i) {
      if (e.dims[i] != dims.dim(cod[i].base)) {
        throw SemanticsError("lexicon entry for '" + label + "' does not match the dimension of " + cod[i].str());
      }
    }
    BasicTensor<T> out;
    out.wires = e.wires;
    out.dims = e.dims;
    out.data.assign(e.data.begin(), e.data.end());
    return out;
  }
  if (!seed_) throw SemanticsError("missing lexicon entry for '" + label + "' : " + str(cod));
  return random_word_tensor<T>(*seed_, label, cod, dims);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace
{

template <class T>
BasicTensor<T> insert_state(const BasicTensor<T> & s, std::size_t o, const BasicTensor<T> & box)
{
  BasicTensor<T> out;
  out.wires = s.wires;
  out.wires.insert(out.wires.begin() + static_cast<std::ptrdiff_t>(o), box.wires.begin(), box.wires.end());
  out.dims = s.dims;
  out.dims.insert(out.dims.begin() + static_cast<std::ptrdiff_t>(o), box.dims.begin(), box.dims.end());
  const std::size_t L = product(s.dims, 0, o);
  const std::size_t R = product(s.dims, o, s.dims.size());
  const std::size_t B = box.data.size();
  out.data.resize(L * B * R);
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t r = 0; r < R; ++r) out.data[(l * B + b) * R + r] = s.data[l * R + r] * box.data[b];
    }
  }
  return out;
}

template <class T>
BasicTensor<T> contract(const BasicTensor<T> & s, std::size_t o)
{
  BasicTensor<T> out;
  out.wires = s.wires;
  out.wires.erase(out.wires.begin() + static_cast<std::ptrdiff_t>(o), out.wires.begin() + static_cast<std::ptrdiff_t>(o + 2));
  out.dims = s.dims;
  out.dims.erase(out.dims.begin() + static_cast<std::ptrdiff_t>(o), out.dims.begin() + static_cast<std::ptrdiff_t>(o + 2));
  const std::size_t L = product(s.dims, 0, o);
  const std::size_t k = s.dims[o];
  const std::size_t R = product(s.dims, o + 2, s.dims.size());
  out.data.assign(L * R, T{});
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t r = 0; r < R; ++r) out.data[l * R + r] += s.data[((l * k + i) * k + i) * R + r];
    }
  }
  return out;
}

template <class T>
BasicTensor<T> transpose(const BasicTensor<T> & s, std::size_t o)
{
  BasicTensor<T> out = s;
  std::swap(out.wires[o], out.wires[o + 1]);
  std::swap(out.dims[o], out.dims[o + 1]);
  const std::size_t L = product(s.dims, 0, o);
  const std::size_t a = s.dims[o];
  const std::size_t b = s.dims[o + 1];
  const std::size_t R = product(s.dims, o + 2, s.dims.size());
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        for (std::size_t r = 0; r < R; ++r) out.data[((l * b + j) * a + i) * R + r] = s.data[((l * a + i) * b + j) * R + r];
      }
    }
  }
  return out;
}

template <class T>
BasicTensor<T> identity_state(const Wire & left, const Wire & right, std::size_t k)
{
  BasicTensor<T> id;
  id.wires = {left, right};
  id.dims = {k, k};
  id.data.assign(k * k, T{});
  for (std::size_t i = 0; i < k; ++i) id.data[i * k + i] = T{1};
  return id;
}

}  // namespace

template <class T>
BasicTensor<T> evaluate_as(const Diagram & d, const DimAssignment & dims, const Lexicon & lex)
{
  if (!d.dom.empty()) throw SemanticsError("evaluate needs a state; dom is " + str(d.dom));
  boundaries(d);
  BasicTensor<T> s;
  s.data = {T{1}};
  for (const auto & l : d.layers) {
    const auto & g = l.gen;
    switch (g.kind) {
      case Generator::Kind::Word:
        s = insert_state(s, l.offset, lex.lookup<T>(g.label, g.out, dims));
        break;
      case Generator::Kind::Cap: {
        const RObject c = g.cod();
        s = insert_state(s, l.offset, identity_state<T>(c[0], c[1], dims.dim(g.base)));
        break;
      }
      case Generator::Kind::Cup:
        s = contract(s, l.offset);
        break;
      case Generator::Kind::Swap:
        s = transpose(s, l.offset);
        break;
    }
  }
  return s;
}

Tensor evaluate(const Diagram & d, const DimAssignment & dims, const Lexicon & lex)
{
  return evaluate_as<double>(d, dims, lex);
}

template <class T>
bool approx_equal(const BasicTensor<T> & a, const BasicTensor<T> & b, double rel)
{
  if (a.dims != b.dims || a.data.size() != b.data.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a.data[i]), std::abs(b.data[i])});
    if (std::abs(a.data[i] - b.data[i]) > rel * scale) return false;
  }
  return true;
}

bool semantically_equal(const Diagram & d1, const Diagram & d2, const DimAssignment & dims,
                        const std::vector<std::uint64_t> & seeds, double rel)
{
  if (!(d1.cod == d2.cod)) throw SemanticsError("semantically_equal: codomains differ");
  for (auto seed : seeds) {
    const Lexicon lex = Lexicon::seeded(seed);
    if (!approx_equal(evaluate(d1, dims, lex), evaluate(d2, dims, lex), rel)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// JSON

template <class T>
std::string tensor_to_json(const BasicTensor<T> & t)
{
  using nlohmann::json;
  json shape = json::array();
  for (std::size_t i = 0; i < t.dims.size(); ++i) {
    shape.push_back(json{{"base", t.wires[i].base}, {"z", t.wires[i].z}, {"dim", t.dims[i]}});
  }
  json data = json::array();
  for (const auto & x : t.data) {
    if constexpr (std::is_same_v<T, double>) {
      data.push_back(x);
    } else {
      data.push_back(json::array({x.real(), x.imag()}));
    }
  }
  return json{{"shape", shape}, {"data", data}}.dump();
}

Tensor tensor_from_json(std::string_view text)
{
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    Tensor t;
    for (const auto & s : j.at("shape")) {
      t.wires.push_back(Wire{s.at("base").get<std::string>(), s.at("z").get<int>()});
      t.dims.push_back(s.at("dim").get<std::size_t>());
    }
    for (const auto & x : j.at("data")) t.data.push_back(x.get<double>());
    if (t.data.size() != product(t.dims, 0, t.dims.size())) throw SemanticsError("tensor JSON: data length does not match shape");
    return t;
  } catch (const json::exception & e) {
    throw SemanticsError(std::string("tensor JSON: ") + e.what());
  }
}

template struct BasicTensor<double>;
template struct BasicTensor<std::complex<double>>;
template Tensor random_word_tensor<double>(std::uint64_t, const std::string &, const RObject &, const DimAssignment &);
template ComplexTensor random_word_tensor<std::complex<double>>(std::uint64_t, const std::string &, const RObject &,
                                                                const DimAssignment &);
template Tensor Lexicon::lookup<double>(const std::string &, const RObject &, const DimAssignment &) const;
template ComplexTensor Lexicon::lookup<std::complex<double>>(const std::string &, const RObject &,
                                                             const DimAssignment &) const;
template Tensor evaluate_as<double>(const Diagram &, const DimAssignment &, const Lexicon &);
template ComplexTensor evaluate_as<std::complex<double>>(const Diagram &, const DimAssignment &, const Lexicon &);
template bool approx_equal<double>(const Tensor &, const Tensor &, double);
template bool approx_equal<std::complex<double>>(const ComplexTensor &, const ComplexTensor &, double);
template std::string tensor_to_json<double>(const Tensor &);
template std::string tensor_to_json<std::complex<double>>(const ComplexTensor &);

}  // namespace ccgdisco
