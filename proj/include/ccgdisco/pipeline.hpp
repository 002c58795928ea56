// ccgdisco/pipeline.hpp - batch conversion driving every stage
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ccgdisco/diagram.hpp"
#include "ccgdisco/ingest.hpp"

namespace ccgdisco
{

class ConfigError : public Error
{
public:
  using Error::Error;
};

enum class InputFormat { Json, Ccgbank };

struct EmitSet
{
  bool biclosed = false;
  bool diagram = false;
  bool tikz = false;
  bool svg = false;
  bool stats = false;

  /// Comma-separated subset of biclosed,diagram,tikz,svg,stats.
  static EmitSet parse(const std::string & list);
  [[nodiscard]] bool any() const { return biclosed || diagram || tikz || svg || stats; }
};

struct JobConfig
{
  std::vector<std::string> inputs;
  InputFormat format = InputFormat::Json;
  std::string out_dir = ".";
  EmitSet emit{true, true, false, false, true};
  bool normalize = false;
  bool planarize = false;
  /// Dimension spec for --check-semantics ("n=2,s=2"); unset disables it.
  std::optional<std::string> check_semantics;
  std::uint64_t seed = 0;
  bool strict = false;
  std::vector<std::pair<std::string, std::string>> atom_map;

  /// Throws ConfigError.
  void validate() const;
};

struct SentenceResult
{
  std::string id;
  bool ok = false;
  std::string error;

  std::size_t words = 0;
  std::map<std::string, std::size_t> rules;
  std::string biclosed;
  Diagram monoidal;  // functor image
  Diagram discocat;  // after the requested rewrites
  std::size_t swaps_before = 0;
  std::size_t swaps_after = 0;
  bool semantics_checked = false;
};

/// Runs one record through ingest, lowering, the functor and rewrites.
/// Never throws; failures are reported in the result.
SentenceResult convert(const RawRecord & record, const JobConfig & cfg);

struct RunReport
{
  std::size_t total = 0;
  std::size_t converted = 0;
  std::size_t failed = 0;
  std::vector<SentenceResult> sentences;
  int exit_code = 0;

  /// "total=25 converted=25 failed=0"
  [[nodiscard]] std::string summary() const;
};

/// Reads every input, converts each sentence and writes the requested
/// outputs into cfg.out_dir. Input and config errors throw; per-sentence
/// failures are collected. Progress and failures go to `log`.
RunReport run(const JobConfig & cfg, std::ostream & log);

/// id, words, rule-histogram, cups, caps, swaps_before, swaps_after, layers
std::string stats_header();
std::string stats_row(const SentenceResult & r);

}  // namespace ccgdisco
