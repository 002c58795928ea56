// ccgdisco/ingest.hpp - reading serialized derivations, unary and conj passes
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ccgdisco/ccg.hpp"

namespace ccgdisco
{

/// Input that violates the derivation schema. `pointer` is a JSON pointer
/// (or the equivalent child path for bracketed text) to the offending node.
class SchemaError : public Error
{
public:
  SchemaError(const std::string & pointer, const std::string & what);
  [[nodiscard]] const std::string & pointer() const { return pointer_; }

private:
  std::string pointer_;
};

/// Failure of the unary or conjunction pass, located by node path.
class IngestError : public Error
{
public:
  IngestError(const std::string & path, const std::string & what);
  [[nodiscard]] const std::string & path() const { return path_; }

private:
  std::string path_;
};

/// Untyped tree exactly as read; strings are validated later.
struct RawTree
{
  std::string word;  // leaves only
  std::string rule;  // internal nodes only
  std::string type;
  std::vector<RawTree> children;
  /// Location in the source document, used in error messages.
  std::string pointer;

  [[nodiscard]] bool is_leaf() const { return children.empty(); }
};

struct RawRecord
{
  std::string id;
  RawTree tree;
};

/// Parses one node document: {"word","type"} or {"rule","type","children"}.
RawTree read_json(std::string_view bytes);

/// Parses a corpus file: a single node, or an array whose items are nodes or
/// {"id", "text"?, "tree"} wrappers. Per-record schema errors do not abort:
/// the failing record is reported in `failures` with its pointer.
struct RecordBatch
{
  std::vector<RawRecord> records;
  std::vector<std::pair<std::string, std::string>> failures;  // (id, message)
  std::size_t total = 0;
};
RecordBatch read_json_records(std::string_view bytes, const std::string & default_prefix);

/// Reads bracketed text: `(<rule> <type> <child>...)`, leaves `(LEX <type> <word>)`.
/// Several trees may follow each other; lines starting with '#' are comments.
std::vector<RawTree> read_ccgbank(std::string_view text);

/// Case-insensitive rule string ("fa", "GFC:2", "FTR:S", "UNARY", "CONJ").
/// `node_type` resolves the implicit targets of bare "FTR", "BTR", "UNARY".
RuleLabel parse_rule(std::string_view text, const CcgType & node_type);

/// Type expression with a link index on every subtype occurrence. Occurrences
/// that unify through the derivation share an index.
struct IndexedType
{
  CcgType type;
  int index = 0;
  std::vector<IndexedType> children;  // arrow-notation left, right
};

/// Leaf types of the raw tree after index linking, before any substitution.
std::vector<IndexedType> index_leaf_types(const RawTree & raw);

/// Removes UNARY nodes by substituting the destination type for every
/// occurrence linked to the unary node's input, bottom-up.
Derivation resolve_unary(const RawTree & raw);

/// Retypes each conj leaf to (X\X)/X and relabels its node FA.
Derivation expand_conj(const Derivation & d);

/// resolve_unary + expand_conj, throwing if the result does not validate.
Derivation ingest(const RawTree & raw);

}  // namespace ccgdisco
