// ccgdisco - batch conversion of CCG derivations to string diagrams
#include <iostream>

#include "CLI11.hpp"
#include "ccgdisco/pipeline.hpp"

int main(int argc, char ** argv)
{
  ccgdisco::JobConfig cfg;
  std::string format = "json";
  std::string emit = "biclosed,diagram,stats";
  std::vector<std::string> atom_map;
  std::string dims;

  CLI::App app{"Convert CCG derivations into DisCoCat string diagrams"};
  app.add_option("--in", cfg.inputs, "Input file(s)")->required()->check(CLI::ExistingFile);
  app.add_option("--format", format, "Input format: json or ccgbank")
    ->check(CLI::IsMember({"json", "ccgbank"}));
  app.add_option("--out-dir", cfg.out_dir, "Output directory");
  app.add_option("--emit", emit, "Outputs: biclosed,diagram,tikz,svg,stats");
  app.add_flag("--normalize", cfg.normalize, "Remove snakes and bring the diagram to normal form");
  app.add_flag("--planarize", cfg.planarize, "Remove swaps by relocating word states");
  app.add_option("--check-semantics", dims, "Compare rewritten and original diagrams at these dims, e.g. n=2,s=2");
  app.add_option("--seed", cfg.seed, "Lexicon seed for --check-semantics");
  app.add_flag("--strict", cfg.strict, "Exit nonzero if any sentence fails");
  app.add_option("--atom-map", atom_map, "Atom to wire base override, e.g. N=n")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  try {
    cfg.format = format == "json" ? ccgdisco::InputFormat::Json : ccgdisco::InputFormat::Ccgbank;
    cfg.emit = ccgdisco::EmitSet::parse(emit);
    if (!dims.empty()) cfg.check_semantics = dims;
    for (const auto & kv : atom_map) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ccgdisco::ConfigError("--atom-map expects k=v, got '" + kv + "'");
      cfg.atom_map.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    const auto report = ccgdisco::run(cfg, std::cerr);
    std::cout << report.summary() << "\n";
    return report.exit_code;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
