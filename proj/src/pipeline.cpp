// ccgdisco/pipeline.cpp
#include "ccgdisco/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccgdisco/biclosed.hpp"
#include "ccgdisco/functor.hpp"
#include "ccgdisco/render.hpp"
#include "ccgdisco/rewrite.hpp"
#include "ccgdisco/semantics.hpp"

namespace ccgdisco
{

namespace fs = std::filesystem;

EmitSet EmitSet::parse(const std::string & list)
{
  EmitSet e;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "biclosed") {
      e.biclosed = true;
    } else if (item == "diagram") {
      e.diagram = true;
    } else if (item == "tikz") {
      e.tikz = true;
    } else if (item == "svg") {
      e.svg = true;
    } else if (item == "stats") {
      e.stats = true;
    } else if (!item.empty()) {
      throw ConfigError("unknown output format '" + item + "' (expected biclosed, diagram, tikz, svg, stats)");
    }
  }
  return e;
}

void JobConfig::validate() const
{
  if (inputs.empty()) throw ConfigError("no input files given");
  if (!emit.any()) throw ConfigError("no output format selected");
  if (check_semantics) {
    try {
      DimAssignment::parse(*check_semantics);
    } catch (const SemanticsError & e) {
      throw ConfigError(std::string("--check-semantics: ") + e.what());
    }
  }
  try {
    LoweringContext::with_overrides(atom_map);
  } catch (const Error & e) {
    throw ConfigError(std::string("--atom-map: ") + e.what());
  }
}

namespace
{

void count_rules(const Derivation & d, std::map<std::string, std::size_t> & out)
{
  if (d.kind != Derivation::Kind::Leaf) ++out[d.rule.str()];
  for (const auto & c : d.children) count_rules(c, out);
}

void count_raw_rules(const RawTree & t, std::map<std::string, std::size_t> & out)
{
  if (!t.is_leaf()) {
    // Unary and conjunction nodes vanish during ingest; keep them visible.
    std::string r = t.rule;
    for (auto & c : r) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (r == "UNARY" || r.rfind("UNARY:", 0) == 0) ++out["UNARY"];
    if (r == "CONJ") ++out["CONJ"];
  }
  for (const auto & c : t.children) count_raw_rules(c, out);
}

}  // namespace

SentenceResult convert(const RawRecord & record, const JobConfig & cfg)
{
  SentenceResult r;
  r.id = record.id;
  try {
    const Derivation d = ingest(record.tree);
    r.words = d.words().size();
    count_rules(d, r.rules);
    count_raw_rules(record.tree, r.rules);
    const BTerm term = lower_derivation(d);
    r.biclosed = term.sexpr();
    const LoweringContext ctx = LoweringContext::with_overrides(cfg.atom_map);
    r.monoidal = lower(term, ctx);
    r.swaps_before = r.monoidal.count(Generator::Kind::Swap);
    if (!conserves_wires(r.monoidal)) throw DiagramError("functor image fails the cup-count conservation check");

    Diagram out = r.monoidal;
    if (cfg.planarize) {
      auto p = planarize_report(out);
      if (!p.ok) throw DiagramError("planarize: " + p.message);
      out = std::move(p.diagram);
    }
    if (cfg.normalize) out = normalize(out);
    if (auto v = well_formed(out); !v.empty()) {
      throw DiagramError("rewritten diagram is ill-formed at layer " + std::to_string(v[0].layer) + ": " + v[0].message);
    }
    if (!conserves_wires(out)) throw DiagramError("rewritten diagram fails the cup-count conservation check");
    r.discocat = std::move(out);
    r.swaps_after = r.discocat.count(Generator::Kind::Swap);

    if (cfg.check_semantics) {
      const DimAssignment dims = DimAssignment::parse(*cfg.check_semantics, DimAssignment::defaults());
      if (!semantically_equal(r.monoidal, r.discocat, dims, {cfg.seed})) {
        throw SemanticsError("rewritten diagram evaluates differently from the functor image");
      }
      r.semantics_checked = true;
    }
    r.ok = true;
  } catch (const std::exception & e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

std::string stats_header() { return "id\twords\trule-histogram\tcups\tcaps\tswaps_before\tswaps_after\tlayers"; }

std::string stats_row(const SentenceResult & r)
{
  std::string hist;
  for (const auto & [rule, n] : r.rules) {
    if (!hist.empty()) hist += ',';
    hist += rule + ":" + std::to_string(n);
  }
  if (hist.empty()) hist = "-";
  std::ostringstream os;
  os << r.id << '\t' << r.words << '\t' << hist << '\t' << r.discocat.count(Generator::Kind::Cup) << '\t'
     << r.discocat.count(Generator::Kind::Cap) << '\t' << r.swaps_before << '\t' << r.swaps_after << '\t'
     << r.discocat.layers.size();
  return os.str();
}

std::string RunReport::summary() const
{
  return "total=" + std::to_string(total) + " converted=" + std::to_string(converted) +
         " failed=" + std::to_string(failed);
}

namespace
{

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

RunReport run(const JobConfig & cfg, std::ostream & log)
{
  cfg.validate();
  RunReport rep;
  std::vector<RawRecord> records;
  std::vector<std::pair<std::string, std::string>> schema_failures;

  for (const auto & path : cfg.inputs) {
    const std::string text = read_file(path);
    const std::string stem = fs::path(path).stem().string() + "-";
    if (cfg.format == InputFormat::Json) {
      RecordBatch batch;
      try {
        batch = read_json_records(text, stem);
      } catch (const SchemaError & e) {
        throw ConfigError("'" + path + "': " + e.what());
      }
      rep.total += batch.total;
      for (auto & r : batch.records) records.push_back(std::move(r));
      for (auto & f : batch.failures) schema_failures.push_back(std::move(f));
    } else {
      std::vector<RawTree> trees;
      try {
        trees = read_ccgbank(text);
      } catch (const SchemaError & e) {
        throw ConfigError("'" + path + "': " + e.what());
      }
      rep.total += trees.size();
      for (std::size_t i = 0; i < trees.size(); ++i) records.push_back({stem + std::to_string(i), std::move(trees[i])});
    }
  }

  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  const fs::path dir(cfg.out_dir);

  for (const auto & [id, msg] : schema_failures) {
    SentenceResult r;
    r.id = id;
    r.error = msg;
    rep.sentences.push_back(std::move(r));
  }
  for (const auto & rec : records) rep.sentences.push_back(convert(rec, cfg));

  std::string stats = stats_header() + "\n";
  for (const auto & r : rep.sentences) {
    if (!r.ok) {
      ++rep.failed;
      log << "FAILED " << r.id << ": " << r.error << "\n";
      continue;
    }
    ++rep.converted;
    if (cfg.emit.biclosed) write_file(dir / (r.id + ".biclosed.txt"), r.biclosed + "\n");
    if (cfg.emit.diagram) {
      write_file(dir / (r.id + ".monoidal.json"), to_json(r.monoidal) + "\n");
      write_file(dir / (r.id + ".discocat.json"), to_json(r.discocat) + "\n");
    }
    if (cfg.emit.tikz) write_file(dir / (r.id + ".tex"), render_tikz(r.discocat));
    if (cfg.emit.svg) write_file(dir / (r.id + ".svg"), render_svg(r.discocat));
    if (cfg.emit.stats) stats += stats_row(r) + "\n";
  }
  if (cfg.emit.stats) write_file(dir / "stats.tsv", stats);

  rep.exit_code = (cfg.strict && rep.failed > 0) ? 1 : 0;
  return rep;
}

}  // namespace ccgdisco
