#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pasearch/corpus.hpp"
#include "pasearch/family.hpp"

namespace pasearch {

/// One cited family inside a cluster record: the family id, the cited
/// documents that resolved into it (ascending), and its full member set
/// (ascending). Unresolved citations that still carry a complete id become
/// singleton pseudo-families whose id is the canonical doc key itself.
struct CitedFamily {
  FamilyId family_id;
  std::vector<DocKey> cited;
  std::vector<DocKey> members;

  bool operator==(const CitedFamily&) const = default;
};

/// Semantic cluster of a base document: the base family plus the families of
/// every cited document, split by the cited document's office relative to the
/// base office. A family cited from both offices lands in the same-office
/// bucket. Citations resolving into the base family are excluded throughout.
struct SemanticCluster {
  DocKey base;
  FamilyId base_family_id;
  std::vector<DocKey> base_family;           // ascending, contains base
  std::vector<CitedFamily> same_office;      // ascending by family id
  std::vector<CitedFamily> other_office;     // ascending by family id
  std::uint32_t dropped_citations = 0;       // refs too incomplete to identify

  /// Resolved cited documents across both categories, ascending.
  std::vector<DocKey> cited_docs() const;
  /// base_family ∪ all cited-family members, ascending.
  std::vector<DocKey> member_union() const;
  /// Distinct cited docs with the given office parity vs the base office.
  std::size_t citation_count(bool same_office_side) const;

  bool operator==(const SemanticCluster&) const = default;
};

struct ClusterBuildOptions {
  bool examiner_only = false;
  /// Base documents are restricted to these kind codes; empty means all.
  std::vector<std::string> base_kinds;

  /// Stable fingerprint used for store metadata and rebuild checks.
  std::string fingerprint() const;
};

/// Resolves citation references against the corpus and the family index.
/// A reference matches the known documents sharing its (office, number),
/// narrowed by kind and date when present; ties resolve to the smallest
/// canonical id. A reference with no match but a complete identifier yields
/// an unresolved pseudo-document; anything less is dropped.
class CitationResolver {
 public:
  CitationResolver(const Corpus& corpus, const FamilyIndex& families);

  enum class Status { resolved, unresolved_pseudo, dropped };
  struct Result {
    Status status;
    DocKey key;  // empty when dropped
  };
  Result resolve(const CitationRef& ref) const;

 private:
  const Corpus& corpus_;
  std::unordered_map<std::string, std::vector<DocKey>> table_only_by_office_number_;
};

/// Builds the semantic cluster of one base document.
/// Throws NotFoundError when the base is not in the corpus.
SemanticCluster build_cluster(const DocKey& base, const Corpus& corpus,
                              const FamilyIndex& families,
                              const ClusterBuildOptions& opts = {});

SemanticCluster build_cluster(const DocKey& base, const Corpus& corpus,
                              const FamilyIndex& families,
                              const CitationResolver& resolver,
                              const ClusterBuildOptions& opts);

}  // namespace pasearch
