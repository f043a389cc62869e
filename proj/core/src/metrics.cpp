#include "pasearch/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

using nlohmann::json;
using Rational = boost::multiprecision::cpp_rational;

namespace {

std::string fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string shortest_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

}  // namespace

RelevanceSets relevance_sets(const SemanticCluster& cluster) {
  RelevanceSets rel;
  rel.base_family = cluster.base_family;
  for (const auto* cat : {&cluster.same_office, &cluster.other_office})
    for (const auto& f : *cat) {
      if (f.family_id == cluster.base_family_id)
        throw DataError("cluster lists its own base family as cited");
      rel.relevant_families.push_back({f.family_id, f.members});
    }
  std::sort(rel.relevant_families.begin(), rel.relevant_families.end(),
            [](const FamilyMembers& a, const FamilyMembers& b) { return a.id < b.id; });
  return rel;
}

PerQueryMetrics per_query_metrics(const RankedResult& result, const RelevanceSets& rel,
                                  const EvaluationConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("K must be >= 1");
  if (rel.relevant_families.empty())
    throw DataError("query '" + result.query + "' has no relevant families");

  {
    std::unordered_set<std::string_view> uniq;
    for (const auto& d : result.ranking)
      if (!uniq.insert(d).second)
        throw DataError("malformed run: duplicate id '" + d + "' in ranking for '" +
                        result.query + "'");
  }

  std::unordered_set<std::string_view> top_k;
  {
    std::size_t taken = 0;
    for (const auto& d : result.ranking) {
      if (taken == static_cast<std::size_t>(cfg.k)) break;
      if (cfg.exclude_base_family_from_ranking &&
          std::binary_search(rel.base_family.begin(), rel.base_family.end(), d))
        continue;
      top_k.insert(d);
      ++taken;
    }
  }

  PerQueryMetrics m;
  m.query = result.query;
  m.k = cfg.k;
  m.cy_size = static_cast<int>(rel.relevant_families.size());
  for (const auto& fam : rel.relevant_families) {
    bool hit = std::any_of(fam.members.begin(), fam.members.end(),
                           [&](const DocKey& d) { return top_k.count(d) != 0; });
    if (hit) ++m.distinct_hits;
  }
  m.pi = m.distinct_hits >= 1 ? 1 : 0;
  m.rho = m.distinct_hits >= std::min(cfg.k, m.cy_size) ? 1 : 0;
  m.pf = static_cast<double>(m.distinct_hits) / static_cast<double>(cfg.k);
  m.rf = static_cast<double>(m.distinct_hits) / static_cast<double>(m.cy_size);
  return m;
}

MetricsReport aggregate_metrics(std::vector<PerQueryMetrics> rows) {
  if (rows.empty()) throw DataError("cannot aggregate zero evaluated queries");

  Rational s = 0, h = 0, pf = 0, rf = 0;
  for (const auto& r : rows) {
    s += r.pi;
    h += r.rho;
    pf += Rational(r.distinct_hits, r.k);
    rf += Rational(r.distinct_hits, r.cy_size);
  }
  Rational n(rows.size());
  s /= n;
  h /= n;
  pf /= n;
  rf /= n;

  MetricsReport report;
  report.n = rows.size();
  report.k = rows.front().k;
  report.s_at_k = static_cast<double>(s);
  report.h_at_k = static_cast<double>(h);
  report.mpf_at_k = static_cast<double>(pf);
  report.mrf_at_k = static_cast<double>(rf);
  report.s_exact = fraction_string(s);
  report.h_exact = fraction_string(h);
  report.mpf_exact = fraction_string(pf);
  report.mrf_exact = fraction_string(rf);
  report.rows = std::move(rows);
  return report;
}

void write_per_query_csv(std::ostream& out, const std::vector<PerQueryMetrics>& rows) {
  out << "query_id,K,pi,rho,distinct_hits,cy_size,pf,rf\n";
  for (const auto& r : rows)
    out << r.query << ',' << r.k << ',' << r.pi << ',' << r.rho << ',' << r.distinct_hits
        << ',' << r.cy_size << ',' << shortest_double(r.pf) << ',' << shortest_double(r.rf)
        << '\n';
}

void write_report_json(std::ostream& out, const MetricsReport& r) {
  json skipped = json::array();
  for (const auto& s : r.skipped) skipped.push_back({{"query", s.query}, {"reason", s.reason}});
  json j{{"n", r.n},
         {"k", r.k},
         {"s_at_k", r.s_at_k},
         {"h_at_k", r.h_at_k},
         {"mpf_at_k", r.mpf_at_k},
         {"mrf_at_k", r.mrf_at_k},
         {"s_at_k_exact", r.s_exact},
         {"h_at_k_exact", r.h_exact},
         {"mpf_at_k_exact", r.mpf_exact},
         {"mrf_at_k_exact", r.mrf_exact},
         {"skipped", std::move(skipped)}};
  out << j.dump(2) << '\n';
}

}  // namespace pasearch
