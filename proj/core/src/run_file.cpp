#include "pasearch/run_file.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

using nlohmann::json;

const RankedResult* RunFile::find(const DocKey& query) const {
  auto it = index_.find(query);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

RunFile load_run(std::istream& in) {
  RunFile run;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("query") || !j.contains("results") ||
        !j["results"].is_array())
      throw ParseError(lineno, "malformed run record");

    RankedResult r;
    r.query = j["query"].get<std::string>();

    bool any_score = false, any_missing = false;
    double prev_score = 0.0;
    std::unordered_set<std::string> uniq;
    for (const auto& jr : j["results"]) {
      if (!jr.is_object() || !jr.contains("doc_id"))
        throw ParseError(lineno, "result entries need a doc_id");
      std::string doc = jr["doc_id"].get<std::string>();
      if (!uniq.insert(doc).second)
        throw DataError("duplicate doc id '" + doc + "' in ranking for query '" + r.query +
                        "' (line " + std::to_string(lineno) + ")");
      if (jr.contains("score") && !jr["score"].is_null()) {
        double score = jr["score"].get<double>();
        if (any_score && score > prev_score)
          throw DataError("non-monotone scores in ranking for query '" + r.query + "' (line " +
                          std::to_string(lineno) + ")");
        prev_score = score;
        any_score = true;
      } else {
        any_missing = true;
      }
      r.ranking.push_back(std::move(doc));
    }
    if (any_score && any_missing)
      throw DataError("ranking for query '" + r.query + "' mixes scored and unscored entries");

    if (!run.index_.emplace(r.query, run.entries_.size()).second)
      throw DataError("duplicate query id '" + r.query + "' (line " + std::to_string(lineno) +
                      ")");
    run.entries_.push_back(std::move(r));
  }
  return run;
}

RunFile load_run_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open run file '" + path + "'");
  return load_run(in);
}

void save_run(std::ostream& out, const std::vector<RankedResult>& entries) {
  for (const auto& e : entries) {
    json results = json::array();
    for (const auto& d : e.ranking) results.push_back({{"doc_id", d}});
    out << json{{"query", e.query}, {"results", std::move(results)}}.dump() << '\n';
  }
}

void save_run_file(const std::string& path, const std::vector<RankedResult>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write run file '" + path + "'");
  save_run(out, entries);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace pasearch
