#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ccgdisco/biclosed.hpp"
#include "ccgdisco/functor.hpp"
#include "ccgdisco/rewrite.hpp"
#include "ccgdisco/semantics.hpp"
#include "json.hpp"

using namespace ccgdisco;

namespace support
{

std::string corpus_path() { return std::string(CCGDISCO_CORPUS_DIR) + "/corpus.json"; }

std::vector<RawRecord> load_corpus()
{
  static const std::vector<RawRecord> records = [] {
    std::ifstream in(corpus_path());
    if (!in) throw std::runtime_error("cannot open " + corpus_path());
    std::stringstream ss;
    ss << in.rdbuf();
    auto batch = read_json_records(ss.str(), "corpus-");
    if (!batch.failures.empty()) throw std::runtime_error("corpus schema error: " + batch.failures[0].second);
    return batch.records;
  }();
  return records;
}

const RawRecord & corpus_record(const std::string & id)
{
  static const std::vector<RawRecord> records = load_corpus();
  for (const auto & r : records) {
    if (r.id == id) return r;
  }
  throw std::runtime_error("no corpus record " + id);
}

Diagram corpus_image(const std::string & id)
{
  return lower(lower_derivation(ingest(corpus_record(id).tree)));
}

bool uses_rule(const RawTree & t, const std::vector<std::string> & rules)
{
  if (!t.is_leaf()) {
    const std::string head = t.rule.substr(0, t.rule.find(':'));
    for (const auto & r : rules) {
      if (head == r) return true;
    }
  }
  for (const auto & c : t.children) {
    if (uses_rule(c, rules)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Generators

namespace
{

std::size_t pick(Rng & rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng & rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

CcgType fwd(CcgType r, CcgType a) { return CcgType::forward(std::move(r), std::move(a)); }
// X\Y: result X, argument Y.
CcgType bwd(CcgType x, CcgType y) { return CcgType::backward(std::move(y), std::move(x)); }

RawTree leaf(const CcgType & t, int & counter)
{
  RawTree r;
  r.word = "w" + std::to_string(counter++);
  r.type = t.str();
  return r;
}

RawTree node(const std::string & rule, const CcgType & t, std::vector<RawTree> kids)
{
  RawTree r;
  r.rule = rule;
  r.type = t.str();
  r.children = std::move(kids);
  return r;
}

class TreeGen
{
public:
  explicit TreeGen(Rng & rng) : rng_(rng) {}

  RawTree gen(const CcgType & t, int depth)
  {
    if (depth <= 0 || coin(rng_, 0.15)) return leaf(t, counter_);
    std::vector<std::function<RawTree()>> options;
    const int d = depth - 1;
    options.push_back([&] {
      const CcgType y = random_type(rng_, 1);
      return node("FA", t, {gen(fwd(t, y), d), gen(y, d)});
    });
    options.push_back([&] {
      const CcgType y = random_type(rng_, 1);
      return node("BA", t, {gen(y, d), gen(bwd(t, y), d)});
    });
    if (t.is_forward()) {
      const CcgType x = t.result();
      const CcgType z = t.argument();
      options.push_back([&, x, z] {
        const CcgType y = random_type(rng_, 0);
        return node("FC", t, {gen(fwd(x, y), d), gen(fwd(y, z), d)});
      });
      options.push_back([&, x, z] {
        const CcgType y = random_type(rng_, 0);
        return node("BCX", t, {gen(fwd(y, z), d), gen(bwd(x, y), d)});
      });
      options.push_back([&, x, z] {
        // FC with a raised subject: x/(x\s) composed with (x\s)/z.
        const CcgType s = random_type(rng_, 0);
        RawTree raised = node("FTR:" + x.str(), fwd(x, bwd(x, s)), {gen(s, d - 1)});
        return node("FC", t, {std::move(raised), gen(fwd(bwd(x, s), z), d)});
      });
      if (t.result().is_forward()) {
        const CcgType dollar = t.argument();
        const CcgType xz = t.result();
        options.push_back([&, dollar, xz] {
          const CcgType y = random_type(rng_, 0);
          return node("GFC:2", t,
                      {gen(fwd(xz.result(), y), d), gen(fwd(fwd(y, xz.argument()), dollar), d)});
        });
      }
    }
    if (t.is_backward()) {
      const CcgType x = t.result();
      const CcgType z = t.argument();
      options.push_back([&, x, z] {
        const CcgType y = random_type(rng_, 0);
        return node("BC", t, {gen(bwd(y, z), d), gen(bwd(x, y), d)});
      });
      options.push_back([&, x, z] {
        const CcgType y = random_type(rng_, 0);
        return node("FCX", t, {gen(fwd(x, y), d), gen(bwd(y, z), d)});
      });
      if (t.result().is_backward()) {
        const CcgType dollar = t.argument();
        const CcgType xz = t.result();
        options.push_back([&, dollar, xz] {
          const CcgType y = random_type(rng_, 0);
          return node("GBC:2", t,
                      {gen(bwd(bwd(y, xz.argument()), dollar), d), gen(bwd(xz.result(), y), d)});
        });
      }
    }
    options.push_back([&] {
      // FA with a raised functor.
      const CcgType s = random_type(rng_, 0);
      RawTree raised = node(coin(rng_) ? "FTR" : "FTR:" + t.str(), fwd(t, bwd(t, s)), {gen(s, d - 1)});
      return node("FA", t, {std::move(raised), gen(bwd(t, s), d)});
    });
    options.push_back([&] {
      const CcgType s = random_type(rng_, 0);
      RawTree raised = node("BTR", bwd(t, fwd(t, s)), {gen(s, d - 1)});
      return node("BA", t, {gen(fwd(t, s), d), std::move(raised)});
    });
    options.push_back([&] {
      CcgType u = random_type(rng_, 1);
      while (u == t) u = random_type(rng_, 1);
      RawTree child;
      switch (pick(rng_, 3)) {
        case 0:
          child = leaf(u, counter_);
          break;
        case 1: {
          const CcgType y = random_type(rng_, 0);
          child = node("FA", u, {leaf(fwd(u, y), counter_), gen(y, d - 1)});
          break;
        }
        default: {
          const CcgType y = random_type(rng_, 0);
          child = node("BA", u, {gen(y, d - 1), leaf(bwd(u, y), counter_)});
          break;
        }
      }
      return node("UNARY", t, {std::move(child)});
    });
    options.push_back([&] {
      RawTree conj;
      conj.word = "and";
      conj.type = "conj";
      RawTree right = node("CONJ", bwd(t, t), {std::move(conj), gen(t, d - 1)});
      return node("BA", t, {gen(t, d - 1), std::move(right)});
    });
    return options[pick(rng_, options.size())]();
  }

private:
  Rng & rng_;
  int counter_ = 0;
};

}  // namespace

CcgType random_type(Rng & rng, int depth)
{
  static const char * const names[] = {"S", "NP", "N", "PP"};
  if (depth <= 0 || coin(rng, 0.6)) return CcgType::atom(names[pick(rng, 4)]);
  CcgType a = random_type(rng, depth - 1);
  CcgType b = random_type(rng, depth - 1);
  return coin(rng) ? fwd(a, b) : bwd(a, b);
}

RawTree random_tree(Rng & rng, const CcgType & root, int depth)
{
  TreeGen g(rng);
  return g.gen(root, depth);
}

void append_random_tail(Rng & rng, Diagram & d, int ops)
{
  static const char * const bases[] = {"n", "s"};
  auto random_wire = [&] { return Wire{bases[pick(rng, 2)], static_cast<int>(pick(rng, 3)) - 1}; };
  int label = 0;
  for (int i = 0; i < ops; ++i) {
    const std::size_t w = d.cod.size();
    switch (pick(rng, 7)) {
      case 0:
        if (w < 6) {
          RObject cod;
          for (std::size_t k = 0, m = 1 + pick(rng, 2); k < m; ++k) cod.push_back(random_wire());
          d.then(pick(rng, w + 1), Generator::word("t" + std::to_string(label++), cod));
        }
        break;
      case 1:
        if (w >= 2) {
          const std::size_t p = pick(rng, w - 1);
          d.then(p, Generator::swap(d.cod[p], d.cod[p + 1]));
        }
        break;
      case 2:
        if (w >= 2) {
          const std::size_t p = pick(rng, w - 1);
          d.then(p, Generator::swap(d.cod[p], d.cod[p + 1]));
          d.then(p, Generator::swap(d.cod[p], d.cod[p + 1]));
        }
        break;
      case 3:
        if (w < 6) {
          const Wire c = random_wire();
          d.then(pick(rng, w + 1), Generator::cap(c.base, c.z));
        }
        break;
      case 4: {
        std::vector<std::size_t> at;
        for (std::size_t p = 0; p + 1 < w; ++p) {
          if (d.cod[p].base == d.cod[p + 1].base && d.cod[p + 1].z == d.cod[p].z + 1) at.push_back(p);
        }
        if (!at.empty()) {
          const std::size_t p = at[pick(rng, at.size())];
          d.then(p, Generator::cup(d.cod[p].base, d.cod[p].z));
        }
        break;
      }
      case 5:
        if (w >= 1) {
          const std::size_t p = pick(rng, w);
          const Wire x = d.cod[p];
          if (coin(rng)) {
            d.then(p + 1, Generator::cap(x.base, x.z));
            d.then(p, Generator::cup(x.base, x.z));
          } else {
            d.then(p, Generator::cap(x.base, x.z - 1));
            d.then(p + 1, Generator::cup(x.base, x.z - 1));
          }
        }
        break;
      default:
        if (w >= 1 && w < 6) {
          const std::size_t m = 1 + pick(rng, 2);
          RObject cod;
          for (std::size_t k = 0; k < m; ++k) cod.push_back(random_wire());
          const std::size_t p = pick(rng, w + 1);
          d.then(p, Generator::word("t" + std::to_string(label++), cod));
          if (p < w) {
            for (std::size_t k = 0; k < m; ++k) {
              const std::size_t q = p + m - 1 - k;
              d.then(q, Generator::swap(d.cod[q], d.cod[q + 1]));
            }
          } else {
            for (std::size_t k = 0; k < m; ++k) {
              const std::size_t q = p - 1 + k;
              d.then(q, Generator::swap(d.cod[q], d.cod[q + 1]));
            }
          }
        }
        break;
    }
  }
}

// ---------------------------------------------------------------------------
// Property suites

namespace
{

template <class F>
PropertyResult run_property(const std::string & name, std::size_t cases, F && body)
{
  PropertyResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < cases; ++i) {
    std::string why;
    try {
      why = body(i);
    } catch (const std::exception & e) {
      why = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (!why.empty()) {
      if (r.failures++ == 0) r.first_failure = "case " + std::to_string(i) + ": " + why;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

bool exactly_equal(const Tensor & a, const Tensor & b)
{
  return a.wires == b.wires && a.dims == b.dims && a.data == b.data;
}

bool abs_close(const Tensor & a, const Tensor & b, double tol)
{
  if (a.wires != b.wires || a.dims != b.dims || a.data.size() != b.data.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    if (std::abs(a.data[i] - b.data[i]) > tol) return false;
  }
  return true;
}

std::size_t total_word_wires(const Diagram & d)
{
  std::size_t n = d.dom.size();
  for (const auto & l : d.layers) {
    if (l.gen.kind == Generator::Kind::Word) n += l.gen.out.size();
  }
  return n;
}

nlohmann::json tree_json(const RawTree & t)
{
  nlohmann::json j;
  j["type"] = t.type;
  if (t.is_leaf()) {
    j["word"] = t.word;
  } else {
    j["rule"] = t.rule;
    j["children"] = nlohmann::json::array();
    for (const auto & c : t.children) j["children"].push_back(tree_json(c));
  }
  return j;
}

}  // namespace

PropertyResult property_snake_yanking(std::uint64_t seed, std::size_t cases)
{
  Rng rng(seed);
  static const char * const bases[] = {"n", "s", "p"};
  return run_property("snake yanking is the identity", cases, [&](std::size_t i) -> std::string {
    DimAssignment dims;
    for (const char * b : bases) dims.set(b, 1 + pick(rng, 3));
    RObject cod;
    for (std::size_t k = 0, m = 1 + pick(rng, 3); k < m; ++k) {
      cod.push_back(Wire{bases[pick(rng, 3)], static_cast<int>(pick(rng, 5)) - 2});
    }
    const Diagram plain = Diagram::state("x", cod);
    Diagram snake = plain;
    const std::size_t p = pick(rng, cod.size());
    const Wire x = cod[p];
    const bool left = coin(rng);
    if (left) {
      snake.then(p + 1, Generator::cap(x.base, x.z));
      snake.then(p, Generator::cup(x.base, x.z));
    } else {
      snake.then(p, Generator::cap(x.base, x.z - 1));
      snake.then(p + 1, Generator::cup(x.base, x.z - 1));
    }
    const Lexicon lex = Lexicon::seeded(seed + i);
    if (!exactly_equal(evaluate(plain, dims, lex), evaluate(snake, dims, lex))) return "evaluation differs";
    const StepKind kind = left ? StepKind::SnakeLeft : StepKind::SnakeRight;
    const RewriteStep step{kind, 1, snake.layers[1].offset};
    const auto steps = find_steps(snake);
    if (std::find(steps.begin(), steps.end(), step) == steps.end()) return "snake redex not found";
    if (!(apply_step(snake, step) == plain)) return "snake step does not yield the plain state";
    if (!(normalize(snake) == normalize(plain))) return "normal forms differ";
    return {};
  });
}

PropertyResult property_rewrite_steps(std::uint64_t seed, std::size_t cases)
{
  Rng rng(seed);
  const auto corpus = load_corpus();
  const DimAssignment dims = DimAssignment::defaults();
  std::size_t steps_checked = 0;
  auto r = run_property("rewrite steps preserve evaluation", cases, [&](std::size_t i) -> std::string {
    Diagram d;
    for (int attempt = 0;; ++attempt) {
      if (coin(rng)) {
        d = lower(lower_derivation(ingest(corpus[pick(rng, corpus.size())].tree)));
      } else {
        d = lower(lower_derivation(ingest(random_tree(rng, CcgType::atom("S"), 2))));
      }
      if (total_word_wires(d) <= 12 || attempt > 20) break;
    }
    append_random_tail(rng, d, 2 + static_cast<int>(pick(rng, 5)));
    if (auto v = well_formed(d); !v.empty()) return "generator produced an ill-formed diagram: " + v[0].message;

    const Lexicon lex = Lexicon::seeded(seed ^ (i * 0x9e37));
    const Tensor before = evaluate(d, dims, lex);
    for (const auto & step : find_steps(d)) {
      const Diagram after = apply_step(d, step);
      if (!well_formed(after).empty()) return step_name(step.kind) + " produced an ill-formed diagram";
      if (!(after.dom == d.dom) || !(after.cod == d.cod)) return step_name(step.kind) + " changed the boundary";
      const Tensor t = evaluate(after, dims, lex);
      const bool exact = step.kind == StepKind::SwapCancel || step.kind == StepKind::SlideBoxThroughSwap;
      if (exact ? !exactly_equal(before, t) : !abs_close(before, t, 1e-12)) {
        return step_name(step.kind) + " at layer " + std::to_string(step.layer) + " changed the evaluation";
      }
      ++steps_checked;
    }
    const Diagram n = normalize(d);
    if (!(n.cod == d.cod) || !approx_equal(before, evaluate(n, dims, lex), 1e-12)) {
      return "normalize changed the evaluation";
    }
    return {};
  });
  if (steps_checked < cases) {
    ++r.failures;
    if (r.first_failure.empty()) r.first_failure = "too few redexes generated";
  }
  return r;
}

PropertyResult property_functor_laws(std::uint64_t seed, std::size_t cases)
{
  Rng rng(seed);
  return run_property("functor laws hold up to normal form", cases, [&](std::size_t) -> std::string {
    const CcgType root = coin(rng) ? CcgType::atom("S") : random_type(rng, 1);
    const BTerm term = lower_derivation(ingest(random_tree(rng, root, 3)));
    const auto report = verify_functor_laws({term});
    if (!report.ok()) return report.failures.front();
    if (report.checked == 0) return "no law instances checked";
    const Diagram d = lower(term);
    if (!well_formed(d).empty()) return "ill-formed image";
    if (!(d.cod == f_object(root))) return "image codomain is not F(root)";
    return {};
  });
}

PropertyResult property_round_trips(std::uint64_t seed, std::size_t cases)
{
  Rng rng(seed);
  return run_property("parse/print round trips", cases, [&](std::size_t i) -> std::string {
    const CcgType t = random_type(rng, 4);
    if (!(parse_type(t.str()) == t)) return "slash round trip failed for " + t.str();
    if (!(parse_type(t.arrow_str()) == t)) return "arrow round trip failed for " + t.arrow_str();

    static const char * const rules[] = {"FA", "BA", "FC", "BC", "GFC:2", "GBC:3", "FCX", "BCX", "GFCX:2", "GBCX:2"};
    const std::string rule = rules[pick(rng, std::size(rules))];
    if (parse_rule(rule, t).str() != rule) return "rule round trip failed for " + rule;
    const RuleLabel raise = RuleLabel::raise(RuleKind::FTR, t);
    if (!(parse_rule(raise.str(), t) == raise)) return "rule round trip failed for " + raise.str();

    Diagram d = lower(lower_derivation(ingest(random_tree(rng, CcgType::atom("S"), 2))));
    append_random_tail(rng, d, 3);
    if (!(diagram_from_json(to_json(d)) == d)) return "diagram JSON round trip failed";
    if (!(diagram_from_json(to_json(d, -1)) == d)) return "compact diagram JSON round trip failed";

    const Tensor w = random_word_tensor<double>(seed + i, "x", RObject{{"n", 1}, {"s", 0}}, DimAssignment::defaults());
    const Tensor back = tensor_from_json(tensor_to_json(w));
    if (!exactly_equal(w, back)) return "tensor JSON round trip failed";
    return {};
  });
}

PropertyResult property_validate_after_ingest(std::uint64_t seed, std::size_t cases)
{
  Rng rng(seed);
  return run_property("validate after ingest is empty", cases, [&](std::size_t) -> std::string {
    const CcgType root = coin(rng, 0.7) ? CcgType::atom("S") : random_type(rng, 2);
    const RawTree raw = random_tree(rng, root, 1 + static_cast<int>(pick(rng, 5)));
    const Derivation d = ingest(raw);
    if (auto v = validate(d); !v.empty()) return v[0].path + ": " + v[0].message;
    if (!(d.type == root)) return "root type changed";
    const Derivation again = ingest(read_json(tree_json(raw).dump()));
    if (!(again == d)) return "JSON serialization changed the derivation";
    return {};
  });
}

std::vector<PropertyResult> run_all_properties(std::uint64_t seed, std::size_t cases)
{
  return {
    property_snake_yanking(seed, cases),
    property_rewrite_steps(seed + 1, cases),
    property_functor_laws(seed + 2, cases),
    property_round_trips(seed + 3, cases),
    property_validate_after_ingest(seed + 4, cases),
  };
}

}  // namespace support
