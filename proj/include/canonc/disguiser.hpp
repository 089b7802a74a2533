#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canonc/ast.hpp"

namespace canonc {

enum class Transform : int {
  RephraseControl,  // for -> while, if/else-if chain -> switch
  SwapIfElse,       // if (c) A else B -> if (!c) B else A
  RephraseExpr,     // X < Y -> !(X >= Y), ++X -> X = X + 1, X += Y <-> X = X + Y
  ReorderOperands,  // permute pure +/- and * chains
  Distribute,       // X * (Y + Z), X && (Y || Z)
  SplitMerge,       // comma/nested assignment splitting, x = E; y = F(x) merging
  ReorderStmts,     // dependence-respecting block shuffle
  Rename,           // identifiers from a seeded pool
  RespellTypes,     // long <-> signed long int, ...
  SplitDeclInit,    // T x = e; <-> T x; x = e;
};

inline constexpr int kTransformCount = 10;

std::string_view to_string(Transform t);
std::optional<Transform> transform_from_string(std::string_view name);

struct DisguiseConfig {
  std::uint64_t seed = 0;
  std::array<bool, kTransformCount> enabled{};
  double intensity = 1.0;  // chance that each applicable site is transformed

  DisguiseConfig() { enabled.fill(true); }

  static DisguiseConfig only(std::initializer_list<Transform> ts) {
    DisguiseConfig c;
    c.enabled.fill(false);
    for (Transform t : ts) c.enabled[static_cast<int>(t)] = true;
    return c;
  }

  bool has(Transform t) const { return enabled[static_cast<int>(t)]; }
  DisguiseConfig& set(Transform t, bool on) {
    enabled[static_cast<int>(t)] = on;
    return *this;
  }
};

struct TraceRecord {
  std::string transform;
  int line = 0;
};

struct DisguiseResult {
  TranslationUnit unit;
  std::vector<TraceRecord> trace;
};

/// Seeded, deterministic, semantics-preserving rewrite of `unit`.
/// Throws ParameterError when intensity is outside [0, 1].
TranslationUnit disguise(const TranslationUnit& unit, const DisguiseConfig& config);
DisguiseResult disguise_trace(const TranslationUnit& unit, const DisguiseConfig& config);

}  // namespace canonc
