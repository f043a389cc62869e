#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pasearch/corpus.hpp"

namespace pasearch {

using FamilyId = std::string;

struct FamilyPair {
  FamilyId family;
  DocKey doc;

  bool operator==(const FamilyPair&) const = default;
};

/// Partition of all known documents (corpus ids plus every id mentioned in
/// the family table) into patent families. Immutable once resolved.
class FamilyIndex {
 public:
  /// Family id and full member set for a known document.
  /// Throws NotFoundError for unknown ids.
  std::pair<FamilyId, std::span<const DocKey>> family_of(const DocKey& id) const;

  /// Family id only; nullptr when unknown.
  const FamilyId* find_family(const DocKey& id) const;

  /// Members of a family, ascending canonical order; empty span if unknown.
  std::span<const DocKey> members(const FamilyId& family) const;

  bool contains(const DocKey& id) const { return doc_to_family_.count(id) != 0; }
  std::size_t family_count() const { return family_members_.size(); }
  std::size_t doc_count() const { return doc_to_family_.size(); }

  /// Deterministic iteration: families ascending by id.
  const std::map<FamilyId, std::vector<DocKey>>& families() const { return family_members_; }

  friend FamilyIndex resolve_families(const Corpus&, const std::vector<FamilyPair>&);

 private:
  std::unordered_map<DocKey, FamilyId> doc_to_family_;
  std::map<FamilyId, std::vector<DocKey>> family_members_;
};

/// Parses the family table format: UTF-8 lines "family_id,doc_id" with
/// canonical doc ids; '#' comment lines and blank lines are ignored.
/// Throws ParseError (with line number) on malformed lines and DataError when
/// one doc id maps to two different family ids.
std::vector<FamilyPair> parse_family_table(std::istream& source);
std::vector<FamilyPair> parse_family_table_file(const std::string& path);

/// Families are the connected components over three edge kinds: explicit
/// table co-membership, shared priority (office, number, date) triples, and
/// shared (office, application number) references. Documents without edges
/// form singleton families. Components containing a table id adopt it (the
/// lexicographically smallest when several merged); the rest get synthesized
/// ids FAM<n>, numbered by ascending smallest member so the result is
/// independent of input order.
FamilyIndex resolve_families(const Corpus& corpus,
                             const std::vector<FamilyPair>& table = {});

/// Writes the index back out in the family table format, families ascending
/// by id, members ascending within each family.
void write_family_table(std::ostream& out, const FamilyIndex& index);
void write_family_table_file(const std::string& path, const FamilyIndex& index);

}  // namespace pasearch
