#include "ccgdisco/ingest.hpp"

#include <functional>

#include "doctest.h"
#include "support.hpp"

using namespace ccgdisco;

namespace
{

CcgType T(const char * s) { return parse_type(s); }

std::vector<std::pair<std::string, std::string>> leaves(const Derivation & d)
{
  if (d.kind == Derivation::Kind::Leaf) return {{d.word, d.type.str()}};
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto & c : d.children) {
    auto sub = leaves(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

template <class E>
std::string error_of(const std::function<void()> & f)
{
  try {
    f();
  } catch (const E & e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("read_json accepts leaf and rule nodes")
{
  const RawTree t = read_json(R"({"rule":"BA","type":"S","children":[
      {"word":"Alice","type":"NP"},{"word":"sleeps","type":"S\\NP"}]})");
  CHECK_FALSE(t.is_leaf());
  CHECK(t.rule == "BA");
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[1].word == "sleeps");
  CHECK(t.children[1].type == "S\\NP");
  CHECK(t.children[1].pointer == "/children/1");
}

TEST_CASE("schema errors carry a JSON pointer")
{
  auto pointer_of = [](const char * doc) {
    try {
      read_json(doc);
    } catch (const SchemaError & e) {
      return e.pointer() + " | " + e.what();
    }
    return std::string("no error");
  };
  CHECK(pointer_of(R"({"word":"x"})") == " | (document): missing field \"type\"");
  CHECK(pointer_of(R"({"rule":"FA","type":"S","children":[{"word":"","type":"NP"},{"word":"b","type":"S\\NP"}]})") ==
        "/children/0/word | /children/0/word: word must be non-empty");
  CHECK(pointer_of(R"({"rule":"FA","type":"S","children":[]})") ==
        "/children | /children: rule nodes take one or two children");
  CHECK(pointer_of(R"({"word":"x","type":"NP","extra":1})") == "/extra | /extra: unknown field in leaf node");
  CHECK(pointer_of("[1,") .rfind(" | (document): invalid JSON", 0) == 0);
}

TEST_CASE("record batches keep going past bad records")
{
  const auto batch = read_json_records(R"([
      {"id":"a","text":"Alice sleeps","tree":{"rule":"BA","type":"S","children":[
        {"word":"Alice","type":"NP"},{"word":"sleeps","type":"S\\NP"}]}},
      {"word":"dogs","type":"N"},
      {"id":"broken","tree":{"word":"x"}}])",
                                       "file-");
  CHECK(batch.total == 3);
  REQUIRE(batch.records.size() == 2);
  CHECK(batch.records[0].id == "a");
  CHECK(batch.records[1].id == "file-1");
  REQUIRE(batch.failures.size() == 1);
  CHECK(batch.failures[0].first == "broken");
  CHECK(batch.failures[0].second == "/2/tree: missing field \"type\"");
}

TEST_CASE("bracketed text input")
{
  const auto trees = read_ccgbank(R"(# comment
(BA S (LEX NP Alice) (FA S\NP (LEX (S\NP)/NP likes) (LEX NP Bob)))
(LEX N dogs))");
  REQUIRE(trees.size() == 2);
  const Derivation d = ingest(trees[0]);
  CHECK(d.type == T("S"));
  CHECK(d.words() == std::vector<std::string>{"Alice", "likes", "Bob"});
  CHECK(trees[1].word == "dogs");
  CHECK(error_of<SchemaError>([] { read_ccgbank("(BA S (LEX NP Alice)"); }) ==
        "/0: unbalanced parentheses (byte 20)");
}

TEST_CASE("rule strings")
{
  CHECK(parse_rule("fa", T("S")) == RuleLabel::of(RuleKind::FA));
  CHECK(parse_rule("GFC:2", T("S")) == RuleLabel::generalized(RuleKind::GFC, 2));
  CHECK(parse_rule("FTR:S", T("S/(S\\NP)")) == RuleLabel::raise(RuleKind::FTR, T("S")));
  CHECK(parse_rule("FTR", T("S/(S\\NP)")) == RuleLabel::raise(RuleKind::FTR, T("S")));
  CHECK(parse_rule("BTR", T("(S\\NP)\\((S\\NP)/NP)")) == RuleLabel::raise(RuleKind::BTR, T("S\\NP")));
  CHECK(parse_rule("UNARY", T("NP")) == RuleLabel::unary(T("NP")));
  CHECK(error_of<Error>([] { parse_rule("GFC", T("S")); }) == "rule GFC requires a degree, e.g. GFC:2");
  CHECK(error_of<Error>([] { parse_rule("FA:2", T("S")); }) == "rule FA takes no parameter");
  CHECK(error_of<Error>([] { parse_rule("XYZ", T("S")); }) == "unknown rule 'XYZ'");
}

TEST_CASE("unary nodes are resolved by substitution")
{
  const Derivation d = ingest(support::corpus_record("not-much-to-say").tree);
  CHECK(validate(d).empty());
  CHECK(d.type == T("NP"));
  const auto l = leaves(d);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == std::pair<std::string, std::string>{"not", "NP/N"});
  CHECK(l[1] == std::pair<std::string, std::string>{"much", "N"});
  CHECK(l[2] == std::pair<std::string, std::string>{"to", "(NP\\NP)/(S\\NP)"});
  CHECK(l[3] == std::pair<std::string, std::string>{"say", "S\\NP"});

  const Derivation dogs = ingest(support::corpus_record("dogs-bark").tree);
  CHECK(leaves(dogs)[0] == std::pair<std::string, std::string>{"dogs", "NP"});
}

TEST_CASE("conj leaves are retyped to (X\\X)/X")
{
  const Derivation d = ingest(support::corpus_record("apples-and-oranges").tree);
  CHECK(validate(d).empty());
  const auto l = leaves(d);
  CHECK(l[1] == std::pair<std::string, std::string>{"and", "(NP\\NP)/NP"});
  REQUIRE(d.children.size() == 2);
  CHECK(d.children[1].rule == RuleLabel::of(RuleKind::FA));

  const Derivation vp = ingest(support::corpus_record("john-runs-and-jumps").tree);
  CHECK(leaves(vp)[2].second == "((S\\NP)\\(S\\NP))/(S\\NP)");
}

TEST_CASE("ingest rejects inconsistent trees with a node path")
{
  const RawTree bad = read_json(R"({"rule":"BA","type":"S","children":[
      {"word":"Alice","type":"NP"},{"rule":"FA","type":"S\\NP","children":[
        {"word":"likes","type":"(S\\NP)/NP"},{"word":"Bob","type":"N"}]}]})");
  try {
    ingest(bad);
    FAIL("expected IngestError");
  } catch (const IngestError & e) {
    CHECK(e.path() == "/children/1");
    CHECK(std::string(e.what()) == "/children/1: FA expects (X/Y, Y); got ((S\\NP)/NP, N)");
  }
  const RawTree wrong = read_json(R"({"rule":"BA","type":"NP","children":[
      {"word":"Alice","type":"NP"},{"word":"sleeps","type":"S\\NP"}]})");
  CHECK(error_of<IngestError>([&] { ingest(wrong); }) == "/: node declares NP but BA produces S");

  const RawTree stray = read_json(R"({"rule":"FA","type":"NP","children":[
      {"word":"and","type":"conj"},{"word":"Bob","type":"NP"}]})");
  CHECK(error_of<Error>([&] { ingest(stray); }).find("FA expects") != std::string::npos);
}

TEST_CASE("every corpus record ingests to a valid derivation")
{
  const auto corpus = support::load_corpus();
  CHECK(corpus.size() == 25);
  for (const auto & r : corpus) {
    INFO(r.id);
    const Derivation d = ingest(r.tree);
    CHECK(validate(d).empty());
  }
}
