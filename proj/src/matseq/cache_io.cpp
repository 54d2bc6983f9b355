#include "markoff/matseq/cache_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "markoff/error.hpp"
#include "markoff/matseq/seed_search.hpp"

namespace markoff::matseq {

void write_sequence_cache(const MarkoffSequence& seq, std::ostream& out) {
  out << kCacheHeader << '\n';
  const int n = seq.size();
  for (int k = 1; k <= n; ++k) {
    const SymMat2& m = seq.term(k);
    out << k << ' ' << m.x0 << ' ' << m.x1 << ' ' << m.x2 << '\n';
  }
}

void write_sequence_cache(const MarkoffSequence& seq, const std::string& path) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    write_sequence_cache(seq, out);
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

MarkoffSequence read_sequence_cache(std::istream& in, int cap) {
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) {
    throw FormatError("missing cache header '" + std::string(kCacheHeader) + "'");
  }
  std::vector<SymMat2> terms;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int k = 0;
    std::string a, b, c, extra;
    if (!(ls >> k >> a >> b >> c) || (ls >> extra)) {
      throw FormatError("malformed cache line " + std::to_string(line_no));
    }
    if (k != static_cast<int>(terms.size()) + 1) {
      throw FormatError("cache line " + std::to_string(line_no) + " has index " + std::to_string(k) + ", expected " +
                        std::to_string(terms.size() + 1));
    }
    BigInt x0, x1, x2;
    if (x0.set_str(a, 10) != 0 || x1.set_str(b, 10) != 0 || x2.set_str(c, 10) != 0) {
      throw FormatError("non-decimal entry on cache line " + std::to_string(line_no));
    }
    terms.emplace_back(std::move(x0), std::move(x1), std::move(x2));
  }
  if (terms.size() < 2) throw FormatError("cache holds fewer than two terms");

  MarkoffSequence seq(assess_seed(terms[0], terms[1]), std::max(cap, static_cast<int>(terms.size())));
  for (std::size_t i = 2; i < terms.size(); ++i) seq.append_verified(terms[i]);
  return seq;
}

MarkoffSequence read_sequence_cache(const std::string& path, int cap) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_sequence_cache(in, cap);
}

}  // namespace markoff::matseq
