// ccgdisco/semantics.hpp - dense tensor evaluation of diagrams
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccgdisco/diagram.hpp"

namespace ccgdisco
{

class SemanticsError : public Error
{
public:
  using Error::Error;
};

/// Dense tensor; axis i carries wires[i] with dimension dims[i]. Row-major.
template <class T>
struct BasicTensor
{
  RObject wires;
  std::vector<std::size_t> dims;
  std::vector<T> data;

  [[nodiscard]] std::size_t rank() const { return dims.size(); }
  /// Element at a full multi-index.
  [[nodiscard]] const T & at(const std::vector<std::size_t> & idx) const;
};

using Tensor = BasicTensor<double>;
using ComplexTensor = BasicTensor<std::complex<double>>;

/// Wire base → dimension. Adjoints share their base's dimension.
class DimAssignment
{
public:
  DimAssignment() = default;
  /// n=2, s=2, p=2, N=2, anything else 2.
  static DimAssignment defaults();
  /// "n=3,s=2"; "*=k" sets the dimension of unlisted bases. Entries are
  /// applied on top of `base`.
  static DimAssignment parse(std::string_view spec, DimAssignment base = {});

  DimAssignment & set(const std::string & base, std::size_t dim);
  DimAssignment & set_fallback(std::size_t dim);
  /// Throws SemanticsError when the base is unassigned.
  [[nodiscard]] std::size_t dim(const std::string & base) const;

private:
  std::map<std::string, std::size_t> dims_;
  std::optional<std::size_t> fallback_;
};

/// SplitMix64 (Steele, Lea, Flood 2014); constants 0x9e3779b97f4a7c15,
/// 0xbf58476d1ce4e5b9, 0x94d049bb133111eb.
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [-1, 1): 2·((x >> 11)·2⁻⁵³) − 1.
  double uniform();

private:
  std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// "n:1,s:0,n:-1"; part of the per-word seed.
std::string wire_key(const RObject & cod);

/// Seeded word tensor: entries drawn in row-major order from
/// SplitMix64(seed ^ fnv1a64(label + '\x1f' + wire_key(cod))). Complex
/// entries take the real part first.
template <class T>
BasicTensor<T> random_word_tensor(std::uint64_t seed, const std::string & label, const RObject & cod,
                                  const DimAssignment & dims);

/// Word meanings keyed by (label, cod). Explicit entries win; otherwise
/// seeded lexicons generate tensors on demand.
class Lexicon
{
public:
  Lexicon() = default;
  static Lexicon seeded(std::uint64_t seed);

  Lexicon & add(const std::string & label, Tensor t);

  template <class T>
  [[nodiscard]] BasicTensor<T> lookup(const std::string & label, const RObject & cod,
                                      const DimAssignment & dims) const;

private:
  std::map<std::pair<std::string, RObject>, Tensor> entries_;
  std::optional<std::uint64_t> seed_;
};

/// Contracts the diagram layer by layer. Requires an empty dom.
template <class T>
BasicTensor<T> evaluate_as(const Diagram & d, const DimAssignment & dims, const Lexicon & lex);

Tensor evaluate(const Diagram & d, const DimAssignment & dims, const Lexicon & lex);

/// |a − b| ≤ rel·max(1, |a|, |b|) for every entry, same shape.
template <class T>
bool approx_equal(const BasicTensor<T> & a, const BasicTensor<T> & b, double rel = 1e-9);

/// Evaluates both diagrams with Lexicon::seeded(seed) for every seed.
bool semantically_equal(const Diagram & d1, const Diagram & d2, const DimAssignment & dims,
                        const std::vector<std::uint64_t> & seeds, double rel = 1e-9);

/// {"shape":[{"base","z","dim"}...],"data":[...]}; complex data as [re, im].
template <class T>
std::string tensor_to_json(const BasicTensor<T> & t);
Tensor tensor_from_json(std::string_view text);

}  // namespace ccgdisco
