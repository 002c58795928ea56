// Shared fixtures for the unit tests and the acceptance runner: corpus
// access, random generators and the randomized property suites.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ccgdisco/ccg.hpp"
#include "ccgdisco/diagram.hpp"
#include "ccgdisco/ingest.hpp"

namespace support
{

std::string corpus_path();
std::vector<ccgdisco::RawRecord> load_corpus();
const ccgdisco::RawRecord & corpus_record(const std::string & id);

/// Functor image of a corpus record.
ccgdisco::Diagram corpus_image(const std::string & id);

/// True if any node of the raw tree uses one of the given rule names.
bool uses_rule(const ccgdisco::RawTree & t, const std::vector<std::string> & rules);

using Rng = std::mt19937_64;

/// Random type over S, NP, N, PP with at most `depth` nested slashes.
ccgdisco::CcgType random_type(Rng & rng, int depth);

/// Random valid raw derivation rooted at `root`, using every rule family
/// including UNARY and CONJ nodes.
ccgdisco::RawTree random_tree(Rng & rng, const ccgdisco::CcgType & root, int depth);

/// Appends random generators (boxes, swaps, caps, cups, snakes, swap pairs,
/// box slides) to the end of `d`. The result is well formed.
void append_random_tail(Rng & rng, ccgdisco::Diagram & d, int ops);

struct PropertyResult
{
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;

  [[nodiscard]] bool ok() const { return failures == 0 && cases > 0; }
};

PropertyResult property_snake_yanking(std::uint64_t seed, std::size_t cases);
PropertyResult property_rewrite_steps(std::uint64_t seed, std::size_t cases);
PropertyResult property_functor_laws(std::uint64_t seed, std::size_t cases);
PropertyResult property_round_trips(std::uint64_t seed, std::size_t cases);
PropertyResult property_validate_after_ingest(std::uint64_t seed, std::size_t cases);

std::vector<PropertyResult> run_all_properties(std::uint64_t seed, std::size_t cases);

}  // namespace support
