#pragma once

#include <string>

#include "pasearch/corpus.hpp"
#include "pasearch/record.hpp"

namespace pasearch {

/// Parses a single-document XML in the ST.96-like subset into the same
/// DocumentRecord the canonical parser produces. Element names are matched by
/// local name (namespace prefixes are ignored). Required: a
/// PublicationReference with office, number, kind and date. Everything else
/// (application reference, priority claims, citations, abstract/description/
/// claims text, family identifier) is optional.
/// Throws ParseError on malformed XML or a missing publication reference.
DocumentRecord parse_st96_subset(const std::string& xml_text);

/// Ingests `path` (one .xml file, or a directory scanned for *.xml in name
/// order) into the corpus. Rejection line numbers are 0; the reason carries
/// the file name.
IngestStats ingest_st96_path(const std::string& path, Corpus& corpus,
                             IngestMode mode = IngestMode::skip_and_count);

}  // namespace pasearch
