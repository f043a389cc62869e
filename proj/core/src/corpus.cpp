#include "pasearch/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "pasearch/errors.hpp"

namespace pasearch {

namespace {
std::string office_number_key(std::string_view office, std::string_view number) {
  std::string k;
  k.reserve(office.size() + number.size() + 1);
  k.append(office);
  k.push_back('|');
  k.append(number);
  return k;
}
}  // namespace

bool Corpus::upsert(DocumentRecord rec) {
  DocKey key = rec.key();
  auto [it, inserted] = records_.insert_or_assign(std::move(key), std::move(rec));
  if (inserted) {
    auto& bucket = by_office_number_[office_number_key(it->second.id.office, it->second.id.number)];
    bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), it->first), it->first);
  }
  return !inserted;
}

const DocumentRecord* Corpus::find(const DocKey& key) const {
  auto it = records_.find(key);
  return it == records_.end() ? nullptr : &it->second;
}

std::vector<DocKey> Corpus::sorted_keys() const {
  std::vector<DocKey> keys;
  keys.reserve(records_.size());
  for (const auto& [k, _] : records_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

const std::vector<DocKey>* Corpus::find_by_office_number(std::string_view office,
                                                         std::string_view number) const {
  auto it = by_office_number_.find(office_number_key(office, number));
  return it == by_office_number_.end() ? nullptr : &it->second;
}

std::uint64_t Corpus::content_hash() const {
  // Sum of per-record hashes: invariant under record order.
  std::uint64_t h = 0;
  for (const auto& [_, rec] : records_) h += fnv1a64(serialize_document_record(rec));
  return h;
}

IngestStats ingest_corpus(std::istream& source, Corpus& corpus, IngestMode mode) {
  IngestStats stats;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      DocumentRecord rec = parse_document_record(line);
      ++stats.accepted;
      if (corpus.upsert(std::move(rec))) ++stats.duplicates;
    } catch (const ParseError& e) {
      if (mode == IngestMode::fail_fast) throw ParseError(lineno, e.what());
      ++stats.rejected;
      stats.rejections.emplace_back(lineno, e.what());
    }
  }
  return stats;
}

IngestStats ingest_corpus_file(const std::string& path, Corpus& corpus, IngestMode mode) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file '" + path + "'");
  return ingest_corpus(in, corpus, mode);
}

void write_corpus_file(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write corpus file '" + path + "'");
  for (const auto& key : corpus.sorted_keys())
    out << serialize_document_record(*corpus.find(key)) << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace pasearch
