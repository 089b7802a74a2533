#include "canonc/fingerprint.hpp"

#include <algorithm>

#include "canonc/emitter.hpp"
#include "canonc/errors.hpp"

namespace canonc {

namespace {

constexpr std::uint64_t kBase = 1000003;

std::uint64_t symbol_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::set<std::uint64_t> FingerprintSet::distinct() const {
  std::set<std::uint64_t> out;
  for (const Fingerprint& f : hashes) out.insert(f.hash);
  return out;
}

std::vector<std::string> token_classes(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    switch (t.kind) {
      case TokenKind::Identifier: out.emplace_back("ID"); break;
      case TokenKind::IntegerLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::StringLiteral: out.emplace_back("LIT"); break;
      default: out.push_back(t.lexeme); break;
    }
  }
  return out;
}

FingerprintSet winnow(std::span<const std::string> classes, int k, int w) {
  if (k < 1 || w < 1) throw ParameterError("InvalidParameter", "k and w must be at least 1");
  FingerprintSet out;
  out.k = k;
  out.w = w;
  const std::size_t n = classes.size();
  const auto uk = static_cast<std::size_t>(k);
  if (n < uk) return out;

  std::vector<std::uint64_t> sym(n);
  for (std::size_t i = 0; i < n; ++i) sym[i] = symbol_hash(classes[i]);
  std::uint64_t top = 1;  // kBase^(k-1)
  for (int i = 1; i < k; ++i) top *= kBase;

  const std::size_t grams = n - uk + 1;
  std::vector<std::uint64_t> h(grams);
  std::uint64_t cur = 0;
  for (std::size_t i = 0; i < uk; ++i) cur = cur * kBase + sym[i];
  h[0] = cur;
  for (std::size_t i = 1; i < grams; ++i) {
    cur = (cur - sym[i - 1] * top) * kBase + sym[i + uk - 1];
    h[i] = cur;
  }

  const std::size_t win = std::min(static_cast<std::size_t>(w), grams);
  std::size_t last = grams;  // position of the last recorded fingerprint
  for (std::size_t start = 0; start + win <= grams; ++start) {
    std::size_t best = start;
    for (std::size_t i = start + 1; i < start + win; ++i)
      if (h[i] <= h[best]) best = i;
    if (best != last) {
      out.hashes.push_back({h[best], best});
      last = best;
    }
  }
  return out;
}

SimilarityReport similarity(const FingerprintSet& a, const FingerprintSet& b) {
  if (a.k != b.k || a.w != b.w)
    throw ParameterError("ParameterMismatch", "fingerprint sets use different (k, w)");
  SimilarityReport r;
  const auto da = a.distinct();
  const auto db = b.distinct();
  r.total_a = da.size();
  r.total_b = db.size();
  for (std::uint64_t h : da) r.shared += db.count(h);
  if (da.empty() && db.empty()) {
    r.jaccard = r.containment_a = r.containment_b = 1.0;
    return r;
  }
  const double uni = static_cast<double>(r.total_a + r.total_b - r.shared);
  r.jaccard = static_cast<double>(r.shared) / uni;
  r.containment_a = da.empty() ? 0.0 : static_cast<double>(r.shared) / static_cast<double>(r.total_a);
  r.containment_b = db.empty() ? 0.0 : static_cast<double>(r.shared) / static_cast<double>(r.total_b);
  return r;
}

FingerprintSet fingerprint_source(std::string_view source, int k, int w) {
  const std::vector<Token> tokens = tokenize(source);
  const std::vector<std::string> classes = token_classes(tokens);
  return winnow(classes, k, w);
}

FingerprintSet fingerprint_unit(const TranslationUnit& unit, int k, int w) {
  return fingerprint_source(emit(unit), k, w);
}

}  // namespace canonc
