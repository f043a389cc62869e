#include "pasearch/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

using nlohmann::json;

double indicator_average(std::uint64_t sum, std::uint64_t count) {
  if (count == 0) return 0.0;
  return static_cast<double>(sum) / static_cast<double>(count);
}

std::string format_indicator_average(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

namespace {

enum class Group { application, patent, other };

Group classify(const DocKey& base, const KindGroups& groups) {
  DocId id = parse_doc_id(base);
  if (std::find(groups.applications.begin(), groups.applications.end(), id.kind) !=
      groups.applications.end())
    return Group::application;
  if (std::find(groups.patents.begin(), groups.patents.end(), id.kind) != groups.patents.end())
    return Group::patent;
  return Group::other;
}

struct Accumulator {
  GroupIndicators g;
  std::unordered_set<DocKey> unique_docs;

  void add(const SemanticCluster& c, const std::vector<DocKey>& members,
           std::size_t cits_same, std::size_t cits_other) {
    ++g.cluster_count;
    g.nonunique_doc_count += members.size();
    for (const auto& m : members) unique_docs.insert(m);
    if (members.size() == 1) ++g.base_only_cluster_count;
    g.citations_same_office += cits_same;
    g.citations_other_office += cits_other;
    if (cits_same > 0) ++g.clusters_with_same_office;
    if (cits_same > 0 && cits_other == 0) ++g.clusters_with_only_same_office;
    if (cits_other > 0) ++g.clusters_with_other_office;
    if (cits_other > 0 && cits_same == 0) ++g.clusters_with_only_other_office;
    if (cits_same > 0 && cits_other > 0) ++g.clusters_with_both;
    if (cits_same == 0 && cits_other == 0 && c.base_family.size() >= 2)
      ++g.clusters_family_only_no_citations;
    g.base_family_size_sum += c.base_family.size();
  }

  GroupIndicators finish() {
    g.unique_doc_count = unique_docs.size();
    g.avg_citations_all =
        indicator_average(g.citations_same_office + g.citations_other_office, g.cluster_count);
    g.avg_citations_same = indicator_average(g.citations_same_office, g.cluster_count);
    g.avg_citations_other = indicator_average(g.citations_other_office, g.cluster_count);
    g.avg_base_family_size = indicator_average(g.base_family_size_sum, g.cluster_count);
    return g;
  }
};

void check_identities(const GroupIndicators& g) {
  bool ok = g.unique_doc_count <= g.nonunique_doc_count &&
            g.clusters_with_only_same_office + g.clusters_with_both == g.clusters_with_same_office &&
            g.clusters_with_only_other_office + g.clusters_with_both == g.clusters_with_other_office &&
            g.avg_citations_all ==
                indicator_average(g.citations_same_office + g.citations_other_office,
                                  g.cluster_count);
  if (!ok) throw DataError("indicator identities violated");
}

json group_to_json(const GroupIndicators& g) {
  return json{{"cluster_count", g.cluster_count},
              {"nonunique_doc_count", g.nonunique_doc_count},
              {"unique_doc_count", g.unique_doc_count},
              {"base_only_cluster_count", g.base_only_cluster_count},
              {"citations_same_office", g.citations_same_office},
              {"citations_other_office", g.citations_other_office},
              {"clusters_with_same_office", g.clusters_with_same_office},
              {"clusters_with_only_same_office", g.clusters_with_only_same_office},
              {"clusters_with_other_office", g.clusters_with_other_office},
              {"clusters_with_only_other_office", g.clusters_with_only_other_office},
              {"clusters_with_both", g.clusters_with_both},
              {"clusters_family_only_no_citations", g.clusters_family_only_no_citations},
              {"avg_citations_all", g.avg_citations_all},
              {"avg_citations_same", g.avg_citations_same},
              {"avg_citations_other", g.avg_citations_other},
              {"avg_base_family_size", g.avg_base_family_size}};
}

}  // namespace

IndicatorReport compute_indicators(const ClusterStore& store, const KindGroups& groups) {
  Accumulator apps, pats, total;
  store.for_each([&](const SemanticCluster& c) {
    std::vector<DocKey> members = c.member_union();
    std::size_t cits_same = c.citation_count(true);
    std::size_t cits_other = c.citation_count(false);
    total.add(c, members, cits_same, cits_other);
    switch (classify(c.base, groups)) {
      case Group::application: apps.add(c, members, cits_same, cits_other); break;
      case Group::patent: pats.add(c, members, cits_same, cits_other); break;
      case Group::other: break;
    }
  });
  IndicatorReport report;
  report.applications = apps.finish();
  report.patents = pats.finish();
  report.total = total.finish();
  check_identities(report.applications);
  check_identities(report.patents);
  check_identities(report.total);
  return report;
}

SizeHistogram size_histogram(const ClusterStore& store, const KindGroups& groups) {
  SizeHistogram hist;
  store.for_each([&](const SemanticCluster& c) {
    std::uint64_t size = c.member_union().size();
    ++hist.total[size];
    switch (classify(c.base, groups)) {
      case Group::application: ++hist.applications[size]; break;
      case Group::patent: ++hist.patents[size]; break;
      case Group::other: break;
    }
  });
  return hist;
}

void write_indicator_table(std::ostream& out, const IndicatorReport& r) {
  auto row = [&](const char* label, auto get) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-68s %16s %16s %16s\n", label,
                  get(r.applications).c_str(), get(r.patents).c_str(), get(r.total).c_str());
    out << buf;
  };
  auto count = [](std::uint64_t GroupIndicators::*field) {
    return [field](const GroupIndicators& g) { return std::to_string(g.*field); };
  };
  auto avg = [](double GroupIndicators::*field) {
    return [field](const GroupIndicators& g) { return format_indicator_average(g.*field); };
  };

  {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-68s %16s %16s %16s\n", "Indicator", "Applications",
                  "Patents", "Total");
    out << buf << std::string(68 + 3 * 17, '-') << '\n';
  }
  row("Number of clusters", count(&GroupIndicators::cluster_count));
  row("Number of non-unique documents in all clusters",
      count(&GroupIndicators::nonunique_doc_count));
  row("Number of unique documents in all clusters", count(&GroupIndicators::unique_doc_count));
  row("Number of clusters containing only the base document",
      count(&GroupIndicators::base_only_cluster_count));
  row("Number of citations from the base patent office",
      count(&GroupIndicators::citations_same_office));
  row("Number of citations from other patent offices",
      count(&GroupIndicators::citations_other_office));
  row("Clusters containing citations from the base patent office",
      count(&GroupIndicators::clusters_with_same_office));
  row("Clusters containing citations ONLY from the base patent office",
      count(&GroupIndicators::clusters_with_only_same_office));
  row("Clusters containing citations from NOT the base patent office",
      count(&GroupIndicators::clusters_with_other_office));
  row("Clusters containing citations ONLY NOT from the base patent office",
      count(&GroupIndicators::clusters_with_only_other_office));
  row("Clusters containing citations BOTH from the base office and non-base office",
      count(&GroupIndicators::clusters_with_both));
  row("Number of clusters with only patent family members of the base document",
      count(&GroupIndicators::clusters_family_only_no_citations));
  row("Average number of all citations", avg(&GroupIndicators::avg_citations_all));
  row("Average number of citations from the base patent office",
      avg(&GroupIndicators::avg_citations_same));
  row("Average number of citations from other patent offices",
      avg(&GroupIndicators::avg_citations_other));
  row("Average number of patent family members for the base document",
      avg(&GroupIndicators::avg_base_family_size));
}

void write_indicator_json(std::ostream& out, const IndicatorReport& r) {
  json j{{"applications", group_to_json(r.applications)},
         {"patents", group_to_json(r.patents)},
         {"total", group_to_json(r.total)},
         {"citation_counting", r.citation_counting}};
  out << j.dump(2) << '\n';
}

void write_histogram_csv(std::ostream& out, const SizeHistogram& hist) {
  out << "size,count_applications,count_patents\n";
  auto count_in = [](const std::map<std::uint64_t, std::uint64_t>& m, std::uint64_t size) {
    auto it = m.find(size);
    return it == m.end() ? std::uint64_t{0} : it->second;
  };
  for (const auto& [size, _] : hist.total)
    out << size << ',' << count_in(hist.applications, size) << ','
        << count_in(hist.patents, size) << '\n';
}

}  // namespace pasearch
