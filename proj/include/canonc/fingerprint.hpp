#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "canonc/ast.hpp"
#include "canonc/lexer.hpp"

namespace canonc {

inline constexpr int kDefaultK = 5;
inline constexpr int kDefaultW = 4;

struct Fingerprint {
  std::uint64_t hash = 0;
  std::size_t position = 0;  // index of the k-gram in the class sequence
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct FingerprintSet {
  int k = kDefaultK;
  int w = kDefaultW;
  std::vector<Fingerprint> hashes;

  std::set<std::uint64_t> distinct() const;
  bool empty() const { return hashes.empty(); }
};

struct SimilarityReport {
  double jaccard = 0;
  double containment_a = 0;
  double containment_b = 0;
  std::size_t shared = 0;
  std::size_t total_a = 0;
  std::size_t total_b = 0;
};

/// Identifiers become `ID`, literals `LIT`; everything else keeps its lexeme.
std::vector<std::string> token_classes(std::span<const Token> tokens);

/// Polynomial hash (base 1000003, wrapping) of every k-gram, then the
/// rightmost minimum of each window of w consecutive k-gram hashes.
/// Throws ParameterError for k < 1 or w < 1.
FingerprintSet winnow(std::span<const std::string> classes, int k = kDefaultK, int w = kDefaultW);

/// Scores over distinct hash values. Throws ParameterError (ParameterMismatch)
/// when the two sets were built with different (k, w).
SimilarityReport similarity(const FingerprintSet& a, const FingerprintSet& b);

FingerprintSet fingerprint_source(std::string_view source, int k = kDefaultK, int w = kDefaultW);
FingerprintSet fingerprint_unit(const TranslationUnit& unit, int k = kDefaultK, int w = kDefaultW);

}  // namespace canonc
