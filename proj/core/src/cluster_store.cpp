#include "pasearch/cluster_store.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pasearch/errors.hpp"

namespace pasearch {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kDataFile = "clusters.jsonl";
constexpr const char* kMetaFile = "meta.json";
constexpr const char* kPartialFile = "clusters.jsonl.partial";
constexpr const char* kPartialMetaFile = "meta.partial.json";

json cited_family_to_json(const CitedFamily& f) {
  return json{{"family_id", f.family_id}, {"cited", f.cited}, {"members", f.members}};
}

CitedFamily cited_family_from_json(const json& j) {
  CitedFamily f;
  f.family_id = j.at("family_id").get<std::string>();
  f.cited = j.at("cited").get<std::vector<DocKey>>();
  f.members = j.at("members").get<std::vector<DocKey>>();
  return f;
}

json meta_to_json(const ClusterStore::Meta& m) {
  return json{{"format", "pasearch-cluster-store"},
              {"version", 1},
              {"corpus_hash", m.corpus_hash},
              {"build_options", m.build_options},
              {"cluster_count", m.cluster_count}};
}

ClusterStore::Meta meta_from_json(const json& j) {
  ClusterStore::Meta m;
  m.corpus_hash = j.at("corpus_hash").get<std::uint64_t>();
  m.build_options = j.at("build_options").get<std::string>();
  m.cluster_count = j.at("cluster_count").get<std::uint64_t>();
  return m;
}

}  // namespace

std::string cluster_to_json_line(const SemanticCluster& c) {
  json j;
  j["base"] = c.base;
  j["base_family_id"] = c.base_family_id;
  j["base_family"] = c.base_family;
  json same = json::array(), other = json::array();
  for (const auto& f : c.same_office) same.push_back(cited_family_to_json(f));
  for (const auto& f : c.other_office) other.push_back(cited_family_to_json(f));
  j["cited_same_office"] = std::move(same);
  j["cited_other_office"] = std::move(other);
  j["dropped_citations"] = c.dropped_citations;
  return j.dump();
}

SemanticCluster cluster_from_json_line(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("malformed cluster record");
  try {
    SemanticCluster c;
    c.base = j.at("base").get<std::string>();
    c.base_family_id = j.at("base_family_id").get<std::string>();
    c.base_family = j.at("base_family").get<std::vector<DocKey>>();
    for (const auto& f : j.at("cited_same_office")) c.same_office.push_back(cited_family_from_json(f));
    for (const auto& f : j.at("cited_other_office")) c.other_office.push_back(cited_family_from_json(f));
    c.dropped_citations = j.at("dropped_citations").get<std::uint32_t>();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed cluster record: ") + e.what());
  }
}

ClusterStore ClusterStore::open(const std::string& dir) {
  fs::path data = fs::path(dir) / kDataFile;
  fs::path metap = fs::path(dir) / kMetaFile;
  if (!fs::exists(data) || !fs::exists(metap))
    throw IoError("no cluster store at '" + dir + "' (run build first)");

  ClusterStore store;
  store.dir_ = dir;
  {
    std::ifstream in(metap);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw DataError("corrupt store metadata at '" + dir + "'");
    store.meta_ = meta_from_json(j);
  }
  std::ifstream in(data, std::ios::binary);
  if (!in) throw IoError("cannot open '" + data.string() + "'");
  std::string line;
  std::streamoff offset = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      // only the base is needed for the index; avoid full record parse
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("base"))
        throw DataError("corrupt cluster record in '" + data.string() + "'");
      DocKey base = j["base"].get<std::string>();
      store.offsets_.emplace(base, offset);
      store.ordered_bases_.push_back(std::move(base));
    }
    offset = in.tellg();
  }
  if (store.offsets_.size() != store.meta_.cluster_count)
    throw DataError("store record count does not match metadata");
  return store;
}

std::optional<SemanticCluster> ClusterStore::get(const DocKey& base) const {
  auto it = offsets_.find(base);
  if (it == offsets_.end()) return std::nullopt;
  std::ifstream in(fs::path(dir_) / kDataFile, std::ios::binary);
  if (!in) throw IoError("cannot open store data in '" + dir_ + "'");
  in.seekg(it->second);
  std::string line;
  if (!std::getline(in, line)) throw DataError("truncated store data in '" + dir_ + "'");
  return cluster_from_json_line(line);
}

void ClusterStore::for_each(const std::function<void(const SemanticCluster&)>& fn) const {
  std::ifstream in(fs::path(dir_) / kDataFile, std::ios::binary);
  if (!in) throw IoError("cannot open store data in '" + dir_ + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    fn(cluster_from_json_line(line));
  }
}

void ClusterStore::dump(std::ostream& out) const {
  for_each([&](const SemanticCluster& c) {
    out << c.base << '|';
    for (std::size_t i = 0; i < c.base_family.size(); ++i)
      out << (i ? " " : "") << c.base_family[i];
    for (const auto* cat : {&c.same_office, &c.other_office}) {
      out << '|';
      for (std::size_t i = 0; i < cat->size(); ++i) {
        const CitedFamily& f = (*cat)[i];
        out << (i ? " " : "") << f.family_id << ':';
        for (std::size_t m = 0; m < f.members.size(); ++m)
          out << (m ? "," : "") << f.members[m];
      }
    }
    out << '\n';
  });
}

ClusterStore build_all_clusters(const Corpus& corpus, const FamilyIndex& families,
                                const ClusterBuildOptions& opts, const std::string& store_dir) {
  fs::create_directories(store_dir);
  fs::path partial = fs::path(store_dir) / kPartialFile;
  fs::path partial_meta = fs::path(store_dir) / kPartialMetaFile;

  ClusterStore::Meta meta;
  meta.corpus_hash = corpus.content_hash();
  meta.build_options = opts.fingerprint();

  // Resume only when the leftover partial matches this corpus and options.
  // An interrupted write may leave a torn final line; it is cut off and the
  // build continues after the last complete record.
  DocKey resume_after;
  bool resume = false;
  if (fs::exists(partial) && fs::exists(partial_meta)) {
    std::ifstream min(partial_meta);
    json j = json::parse(min, nullptr, false);
    if (!j.is_discarded() && j.value("corpus_hash", std::uint64_t{0}) == meta.corpus_hash &&
        j.value("build_options", std::string()) == meta.build_options) {
      std::ifstream pin(partial, std::ios::binary);
      std::string content((std::istreambuf_iterator<char>(pin)),
                          std::istreambuf_iterator<char>());
      auto last_nl = content.rfind('\n');
      if (last_nl == std::string::npos) {
        fs::resize_file(partial, 0);
      } else {
        if (last_nl + 1 != content.size()) fs::resize_file(partial, last_nl + 1);
        auto prev_nl = content.rfind('\n', last_nl == 0 ? 0 : last_nl - 1);
        std::size_t start = (last_nl == 0 || prev_nl == std::string::npos) ? 0 : prev_nl + 1;
        json rec = json::parse(content.substr(start, last_nl - start), nullptr, false);
        if (!rec.is_discarded() && rec.contains("base")) {
          resume_after = rec["base"].get<std::string>();
          resume = true;
        }
      }
    }
  }

  std::vector<DocKey> bases;
  {
    std::vector<std::string> kinds = opts.base_kinds;
    std::sort(kinds.begin(), kinds.end());
    for (auto& key : corpus.sorted_keys()) {
      if (!kinds.empty()) {
        DocId id = parse_doc_id(key);
        if (!std::binary_search(kinds.begin(), kinds.end(), id.kind)) continue;
      }
      bases.push_back(std::move(key));
    }
  }

  if (!resume) {
    std::ofstream truncate_partial(partial, std::ios::trunc);
    std::ofstream meta_out(partial_meta, std::ios::trunc);
    meta_out << json{{"corpus_hash", meta.corpus_hash},
                     {"build_options", meta.build_options}}
                    .dump()
             << '\n';
  }

  CitationResolver resolver(corpus, families);
  std::uint64_t written = 0;
  {
    std::ofstream out(partial, std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot write '" + partial.string() + "'");
    for (const auto& base : bases) {
      if (resume && base <= resume_after) {
        ++written;
        continue;
      }
      SemanticCluster c = build_cluster(base, corpus, families, resolver, opts);
      out << cluster_to_json_line(c) << '\n';
      ++written;
    }
    out.flush();
    if (!out) throw IoError("write failed for '" + partial.string() + "'");
  }

  meta.cluster_count = written;
  {
    std::ofstream meta_out(fs::path(store_dir) / kMetaFile, std::ios::trunc);
    if (!meta_out) throw IoError("cannot write store metadata in '" + store_dir + "'");
    meta_out << meta_to_json(meta).dump(2) << '\n';
  }
  fs::rename(partial, fs::path(store_dir) / kDataFile);
  fs::remove(partial_meta);
  return ClusterStore::open(store_dir);
}

SemanticCluster get_cluster(const ClusterStore& store, const DocKey& base) {
  auto c = store.get(base);
  if (!c) throw NotFoundError("no cluster record for '" + base + "'");
  return *c;
}

}  // namespace pasearch
