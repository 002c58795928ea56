#include "doctest.h"
#include "support.hpp"

namespace
{

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kCases = 200;

void check(const support::PropertyResult & r)
{
  INFO(r.name << ": " << r.first_failure);
  CHECK(r.cases >= kCases);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("property: snake yanking") { check(support::property_snake_yanking(kSeed, kCases)); }
TEST_CASE("property: rewrite steps preserve evaluation") { check(support::property_rewrite_steps(kSeed, kCases)); }
TEST_CASE("property: functor laws") { check(support::property_functor_laws(kSeed, kCases)); }
TEST_CASE("property: round trips") { check(support::property_round_trips(kSeed, kCases)); }
TEST_CASE("property: validate after ingest") { check(support::property_validate_after_ingest(kSeed, kCases)); }
