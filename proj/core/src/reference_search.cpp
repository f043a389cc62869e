#include "pasearch/reference_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "pasearch/errors.hpp"

namespace pasearch {

namespace {

bool token_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

char fold(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

std::vector<std::string> lexical_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (token_byte(c)) {
      cur.push_back(fold(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

struct ReferenceSearcher::Index {
  struct Posting {
    std::uint32_t doc = 0;
    float weight = 0.0f;  // tf * idf / |doc vector|
  };

  std::vector<DocKey> docs;  // ascending canonical order
  std::unordered_map<std::string, std::uint32_t> term_ids;
  std::vector<std::vector<Posting>> postings;  // per term, ascending doc
  std::vector<double> idf;                     // per term
  std::size_t corpus_size = 0;
};

ReferenceSearcher::ReferenceSearcher(const Corpus& corpus) : index_(std::make_unique<Index>()) {
  Index& ix = *index_;
  ix.docs = corpus.sorted_keys();
  ix.corpus_size = ix.docs.size();

  // Pass 1: term frequencies per document, document frequencies per term.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> doc_terms(ix.docs.size());
  std::vector<std::uint32_t> df;
  for (std::uint32_t d = 0; d < ix.docs.size(); ++d) {
    const DocumentRecord* rec = corpus.find(ix.docs[d]);
    std::string text = rec->abstract;
    if (!rec->claims.empty()) {
      if (!text.empty()) text += ' ';
      text += rec->claims;
    }
    std::map<std::string, std::uint32_t> tf;
    for (auto& tok : lexical_tokens(text)) ++tf[tok];
    auto& out = doc_terms[d];
    out.reserve(tf.size());
    for (auto& [term, count] : tf) {
      auto [it, inserted] = ix.term_ids.emplace(term, static_cast<std::uint32_t>(df.size()));
      if (inserted) df.push_back(0);
      ++df[it->second];
      out.emplace_back(it->second, count);
    }
  }

  ix.idf.resize(df.size());
  for (std::size_t t = 0; t < df.size(); ++t)
    ix.idf[t] = std::log(1.0 + static_cast<double>(ix.corpus_size) / df[t]);

  // Pass 2: normalized document vectors into postings.
  ix.postings.resize(df.size());
  for (std::uint32_t d = 0; d < doc_terms.size(); ++d) {
    double norm_sq = 0.0;
    for (auto [t, count] : doc_terms[d]) {
      double w = count * ix.idf[t];
      norm_sq += w * w;
    }
    if (norm_sq == 0.0) continue;
    double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (auto [t, count] : doc_terms[d])
      ix.postings[t].push_back({d, static_cast<float>(count * ix.idf[t] * inv_norm)});
  }
}

ReferenceSearcher::~ReferenceSearcher() = default;
ReferenceSearcher::ReferenceSearcher(ReferenceSearcher&&) noexcept = default;
ReferenceSearcher& ReferenceSearcher::operator=(ReferenceSearcher&&) noexcept = default;

std::size_t ReferenceSearcher::indexed_documents() const { return index_->corpus_size; }

RankedResult ReferenceSearcher::search(const DocumentRecord& query, int k) const {
  if (!query.has_text()) throw DataError("query document '" + query.key() + "' has no text");
  const Index& ix = *index_;

  std::string text = query.abstract;
  if (!query.claims.empty()) {
    if (!text.empty()) text += ' ';
    text += query.claims;
  }

  std::map<std::string, std::uint32_t> tf;
  for (auto& tok : lexical_tokens(text)) ++tf[tok];

  // Cosine up to the (constant) query norm, which cannot change the order.
  std::vector<double> scores(ix.docs.size(), 0.0);
  for (const auto& [term, count] : tf) {  // std::map: deterministic term order
    auto it = ix.term_ids.find(term);
    if (it == ix.term_ids.end()) continue;
    double qw = count * ix.idf[it->second];
    for (const auto& p : ix.postings[it->second]) scores[p.doc] += qw * p.weight;
  }

  std::vector<std::uint32_t> order(ix.docs.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::uint32_t a, std::uint32_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;  // docs[] ascending, so index order = id order
                    });

  RankedResult result;
  result.query = query.key();
  result.ranking.reserve(take);
  for (std::size_t i = 0; i < take; ++i) result.ranking.push_back(ix.docs[order[i]]);
  return result;
}

}  // namespace pasearch
