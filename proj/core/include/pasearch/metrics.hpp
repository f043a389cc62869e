#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pasearch/cluster.hpp"

namespace pasearch {

struct EvaluationConfig {
  int k = 10;
  /// When set, base-family documents are removed from the ranking before the
  /// top-K cut. Default keeps them: they occupy slots and count non-relevant.
  bool exclude_base_family_from_ranking = false;
};

/// A system-under-test ranking for one query, best first.
struct RankedResult {
  DocKey query;
  std::vector<DocKey> ranking;
};

/// Relevance data for one query: the base family C_x (never relevant) and
/// the deduplicated cited families C_Y (each family once, the unit of
/// relevance).
struct FamilyMembers {
  FamilyId id;
  std::vector<DocKey> members;

  bool operator==(const FamilyMembers&) const = default;
};

struct RelevanceSets {
  std::vector<DocKey> base_family;              // ascending
  std::vector<FamilyMembers> relevant_families;  // ascending by family id

  bool operator==(const RelevanceSets&) const = default;
};

/// Per-query outcome.
///   pi            1 iff top-K intersects any relevant family
///   rho           1 iff top-K hits min(K, |C_Y|) distinct relevant families
///   distinct_hits number of relevant families intersected by top-K
///   pf            distinct_hits / K
///   rf            distinct_hits / |C_Y|
struct PerQueryMetrics {
  DocKey query;
  int pi = 0;
  int rho = 0;
  int distinct_hits = 0;
  int cy_size = 0;
  int k = 0;
  double pf = 0.0;
  double rf = 0.0;
};

struct SkippedQuery {
  DocKey query;
  std::string reason;
};

/// Aggregated report. The four aggregates are arithmetic means of per-query
/// fields, accumulated in exact rational arithmetic; *_exact carries the
/// reduced fraction "p/q" for each.
struct MetricsReport {
  std::size_t n = 0;
  int k = 0;
  double s_at_k = 0.0;
  double h_at_k = 0.0;
  double mpf_at_k = 0.0;
  double mrf_at_k = 0.0;
  std::string s_exact, h_exact, mpf_exact, mrf_exact;
  std::vector<PerQueryMetrics> rows;
  std::vector<SkippedQuery> skipped;
};

/// Relevance data of a cluster: every cited family from both office
/// categories; any family equal to the base family is already excluded by
/// cluster construction and is asserted absent here.
RelevanceSets relevance_sets(const SemanticCluster& cluster);

/// Evaluates one ranking. Precondition: at least one relevant family
/// (queries with empty C_Y are skipped upstream); throws DataError on a
/// ranking with duplicate ids or on an empty C_Y.
PerQueryMetrics per_query_metrics(const RankedResult& result, const RelevanceSets& rel,
                                  const EvaluationConfig& cfg);

/// Means over the rows. Throws DataError on empty input (N = 0 undefined).
MetricsReport aggregate_metrics(std::vector<PerQueryMetrics> rows);

/// "query_id,K,pi,rho,distinct_hits,cy_size,pf,rf" per row.
void write_per_query_csv(std::ostream& out, const std::vector<PerQueryMetrics>& rows);

/// Structured report: the four aggregates, N, K, skip list.
void write_report_json(std::ostream& out, const MetricsReport& report);

}  // namespace pasearch
