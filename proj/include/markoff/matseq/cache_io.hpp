#pragma once

#include <iosfwd>
#include <string>

#include "markoff/matseq/sequence.hpp"

namespace markoff::matseq {

inline constexpr const char* kCacheHeader = "markoff-seq v1";

/// Writes the header line and one "k x0 x1 x2" line per materialized term.
void write_sequence_cache(const MarkoffSequence& seq, std::ostream& out);
/// Writes through a temporary file and renames it into place. Throws IoError.
void write_sequence_cache(const MarkoffSequence& seq, const std::string& path);

/// Reads a cache; the first two terms become the seed and every later term is
/// verified against the recurrence. Throws FormatError or OracleMismatch.
MarkoffSequence read_sequence_cache(std::istream& in, int cap = MarkoffSequence::kDefaultCap);
MarkoffSequence read_sequence_cache(const std::string& path, int cap = MarkoffSequence::kDefaultCap);

}  // namespace markoff::matseq
