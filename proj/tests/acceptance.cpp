// Acceptance runner: one PASS/FAIL line per criterion, detail lines indented.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "ccgdisco/biclosed.hpp"
#include "ccgdisco/functor.hpp"
#include "ccgdisco/pipeline.hpp"
#include "ccgdisco/rewrite.hpp"
#include "ccgdisco/semantics.hpp"
#include "support.hpp"

using namespace ccgdisco;

namespace
{

const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

struct Outcome
{
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string & what)
  {
    if (!cond) ok = false;
    notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
};

int failures = 0;

void criterion(const std::string & name, const std::function<void(Outcome &)> & body)
{
  Outcome o;
  try {
    body(o);
  } catch (const std::exception & e) {
    o.ok = false;
    o.notes.push_back(std::string("exception: ") + e.what());
  }
  std::cout << (o.ok ? "PASS " : "FAIL ") << name << "\n";
  for (const auto & n : o.notes) std::cout << "    " << n << "\n";
  if (!o.ok) ++failures;
}

DimAssignment small_dims() { return DimAssignment::parse("n=2,s=2"); }

void corpus_conversion(Outcome & o)
{
  JobConfig cfg;
  cfg.inputs = {support::corpus_path()};
  cfg.out_dir = (std::filesystem::temp_directory_path() / "ccgdisco-acceptance").string();
  cfg.emit = EmitSet::parse("biclosed,diagram,tikz,svg,stats");
  cfg.planarize = true;
  cfg.normalize = true;
  std::ostringstream log;
  const auto t0 = std::chrono::steady_clock::now();
  const RunReport rep = run(cfg, log);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::size_t violations = 0;
  std::set<std::string> rules;
  for (const auto & s : rep.sentences) {
    violations += well_formed(s.monoidal).size() + well_formed(s.discocat).size();
    violations += (conserves_wires(s.monoidal) ? 0 : 1) + (conserves_wires(s.discocat) ? 0 : 1);
    for (const auto & [r, n] : s.rules) rules.insert(r.substr(0, r.find(':')) + (r.rfind("GFC:2", 0) == 0 || r.rfind("GBC:2", 0) == 0 ? "(2)" : ""));
  }
  o.require(rep.total >= 25, "corpus has " + std::to_string(rep.total) + " derivations");
  o.require(rep.converted == rep.total && rep.failed == 0, rep.summary());
  o.require(violations == 0, std::to_string(violations) + " well-formedness or cup-count violations");
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  for (const char * r : {"FA", "BA", "FC", "BC", "GFC(2)", "GBC(2)", "FTR", "BTR", "FCX", "BCX", "UNARY", "CONJ"}) {
    o.require(rules.count(r) == 1, std::string("rule ") + r + " exercised");
  }
}

void transitive_verb_image(Outcome & o)
{
  const RObject img = f_object(parse_type("(S\\NP)/NP"));
  const RObject want{{"n", 1}, {"s", 0}, {"n", -1}};
  o.require(img == want, "F((S\\NP)/NP) = " + str(img));
}

void type_raising_equivalence(Outcome & o)
{
  const Diagram raised = support::corpus_image("alice-likes-bob-raised");
  const Diagram plain = support::corpus_image("alice-likes-bob");
  o.require(normalize(raised) == plain, "normalize(type-raised) equals the non-raised diagram");
  o.require(semantically_equal(raised, plain, small_dims(), kSeeds, 1e-9), "semantically equal, 5 seeds");
}

void big_bad_wolf(Outcome & o)
{
  const Diagram a = support::corpus_image("big-bad-wolf-1");
  const Diagram b = support::corpus_image("big-bad-wolf-2");
  o.require(normalize(a) == normalize(b), "identical normal forms");
  o.require(semantically_equal(a, b, DimAssignment::parse("N=2"), kSeeds, 1e-9), "semantically equal, 5 seeds");
}

// External wires of the puts/on pair, in left-to-right port order, must be a
// rotation of nʳ·s·nˡ, and every word between the two boxes may only connect
// back into the pair.
bool verb_block(const Diagram & planar, const std::string & verb, const std::string & particle, std::string & shape)
{
  const Wiring w = extract_wiring(planar);
  const Wiring::Box * v = nullptr;
  const Wiring::Box * p = nullptr;
  for (const auto & b : w.boxes) {
    if (b.label == verb) v = &b;
    if (b.label == particle) p = &b;
  }
  if (v == nullptr || p == nullptr) return false;
  auto in_block = [&](std::size_t t) {
    return (t >= v->first && t < v->first + v->out.size()) || (t >= p->first && t < p->first + p->out.size());
  };
  const std::size_t lo = std::min(v->first, p->first);
  const std::size_t hi = std::max(v->first + v->out.size(), p->first + p->out.size());
  RObject open;
  for (std::size_t t = lo; t < hi; ++t) {
    if (in_block(t)) {
      if (!in_block(w.partner[t])) open.push_back(w.type[t]);
    } else {
      const std::size_t q = w.partner[t];
      if (!in_block(q) && (q < lo || q >= hi)) return false;
    }
  }
  shape = str(open);
  const RObject want{{"n", 1}, {"s", 0}, {"n", -1}};
  if (open.size() != want.size()) return false;
  for (std::size_t r = 0; r < open.size(); ++r) {
    RObject rot(open.begin() + static_cast<std::ptrdiff_t>(r), open.end());
    rot.insert(rot.end(), open.begin(), open.begin() + static_cast<std::ptrdiff_t>(r));
    if (rot == want) return true;
  }
  return false;
}

void planarization(Outcome & o)
{
  std::size_t crossed = 0;
  for (const auto & rec : support::load_corpus()) {
    if (!support::uses_rule(rec.tree, {"FCX", "BCX", "GFCX", "GBCX"})) continue;
    ++crossed;
    const Diagram before = lower(lower_derivation(ingest(rec.tree)));
    const PlanarizeResult p = planarize_report(before);
    const bool ok = p.ok && p.diagram.count(Generator::Kind::Swap) == 0 && p.diagram.cod == before.cod &&
                    well_formed(p.diagram).empty() &&
                    semantically_equal(before, p.diagram, DimAssignment::defaults(), kSeeds, 1e-9);
    o.require(ok, rec.id + ": " + std::to_string(before.count(Generator::Kind::Swap)) + " swaps -> " +
                    std::to_string(p.diagram.count(Generator::Kind::Swap)) + ", cod and semantics preserved");
  }
  o.require(crossed >= 3, std::to_string(crossed) + " crossed derivations in the corpus");

  const Diagram bruce = planarize(support::corpus_image("bruce-puts-on-his-hat"));
  std::string shape;
  const bool block = verb_block(bruce, "puts", "on", shape);
  o.require(block, "\"Bruce puts on his hat\": puts/on form a contiguous verb block with open wires " + shape);
}

void swap_transpose(Outcome & o)
{
  const DimAssignment dims = DimAssignment::parse("n=2,s=3");
  const Lexicon lex = Lexicon::seeded(7);
  Diagram d = Diagram::state("v", RObject{{"n", 0}, {"s", 0}});
  const Tensor state = evaluate(d, dims, lex);
  d.then(0, Generator::swap({"n", 0}, {"s", 0}));
  const Tensor swapped = evaluate(d, dims, lex);
  bool exact = swapped.dims == std::vector<std::size_t>{3, 2} && state.dims == std::vector<std::size_t>{2, 3};
  for (std::size_t i = 0; exact && i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (swapped.data[j * 2 + i] != state.data[i * 3 + j]) exact = false;
    }
  }
  o.require(exact, "swap of a seeded 2x3 state equals its transpose exactly");
}

void property_suites(Outcome & o)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = support::run_all_properties(20240611, 200);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto & r : results) {
    std::ostringstream os;
    os << r.name << ": " << r.cases << " cases, " << r.failures << " failures";
    if (!r.first_failure.empty()) os << " (" << r.first_failure << ")";
    o.require(r.ok() && r.cases >= 200, os.str());
  }
  o.require(secs < 30.0, "total " + std::to_string(secs) + " s");
}

}  // namespace

int main()
{
  criterion("corpus conversion: all derivations convert with no violations in under 1 s", corpus_conversion);
  criterion("functor image of (S\\NP)/NP is n^r.s.n^l", transitive_verb_image);
  criterion("type-raised Alice likes Bob normalizes to the plain diagram", type_raising_equivalence);
  criterion("big bad wolf: both derivations share a normal form", big_bad_wolf);
  criterion("planarization removes every swap from crossed derivations", planarization);
  criterion("swap evaluates as transpose", swap_transpose);
  criterion("randomized property suites", property_suites);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
