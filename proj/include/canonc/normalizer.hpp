#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "canonc/ast.hpp"

namespace canonc {

/// Rewrite-rule families. 1-9 are the core rewrites; the rest are
/// canonicalizations the driver also applies.
enum class Rule : int {
  Loops = 1,             // while(true)+guarded break; switch -> if chain; braces
  LogicalOps = 2,        // || -> !(!X && !Y)
  BitwiseOps = 3,        // | and ^ -> ~ and &
  RelationalOps = 4,     // >, <=, >=, != -> < and ==
  SplitAssignments = 5,  // one assignment per statement
  MergeAssignments = 6,  // v = e1; v = f(v);  ->  v = f(e1);
  IfNegation = 7,        // if (!c) A else B  ->  if (c) B else A
  AssignmentOps = 8,     // op= and ++/-- -> =
  Distribute = 9,        // X * (Y + Z) -> X * Y + X * Z, also across division
  Declarations = 10,     // one declarator, no initializer, canonical type
  DoubleNegation = 11,   // !!e -> e in boolean context
  StatementOrder = 12,   // dependence-respecting sort of each block
  Rename = 13,           // p0.., v0.., g0..
  OperandOrder = 14,     // sorted operands of pure +/-, * and == chains
};

inline constexpr int kRuleCount = 14;

std::string_view to_string(Rule rule);

struct NormalizeConfig {
  std::array<bool, kRuleCount + 1> enabled{};  // index = rule number
  int max_iterations = 64;

  NormalizeConfig() { enabled.fill(true); }

  static NormalizeConfig only(std::initializer_list<Rule> rules) {
    NormalizeConfig c;
    c.enabled.fill(false);
    for (Rule r : rules) c.enabled[static_cast<int>(r)] = true;
    return c;
  }

  bool has(Rule r) const { return enabled[static_cast<int>(r)]; }
  NormalizeConfig& set(Rule r, bool on) {
    enabled[static_cast<int>(r)] = on;
    return *this;
  }
};

struct NormalizeStats {
  std::array<std::int64_t, kRuleCount + 1> applied{};  // index = rule number
  std::int64_t division_distributions = 0;  // rule 9 across `/` (not value-preserving)
  int iterations = 0;                       // structural fixpoint rounds

  std::int64_t count(Rule r) const { return applied[static_cast<int>(r)]; }
};

// Individual passes. Each is pure and leaves its input untouched.

TranslationUnit canonicalize_declarations(const TranslationUnit& unit,
                                          NormalizeStats* stats = nullptr);
TranslationUnit normalize_loops_and_branches(const TranslationUnit& unit,
                                             const NormalizeConfig& config = {},
                                             NormalizeStats* stats = nullptr);
TranslationUnit normalize_expressions(const TranslationUnit& unit,
                                      const NormalizeConfig& config = {},
                                      NormalizeStats* stats = nullptr);
TranslationUnit restructure_statements(const TranslationUnit& unit,
                                       const NormalizeConfig& config = {},
                                       NormalizeStats* stats = nullptr);
TranslationUnit canonical_statement_order(const TranslationUnit& unit,
                                          NormalizeStats* stats = nullptr);
TranslationUnit rename_identifiers(const TranslationUnit& unit, NormalizeStats* stats = nullptr);

/// Sort key used by canonical_statement_order: the emitted statement with
/// every identifier replaced by `ID`.
std::string statement_sort_key(const Stmt& stmt);

/// Full pipeline: declarations, then control/expression/statement rules to a
/// fixpoint, then statement order and renaming, repeated until stable.
/// Throws FixpointNotReached when `config.max_iterations` rounds do not
/// converge.
TranslationUnit normalize(const TranslationUnit& unit, const NormalizeConfig& config = {},
                          NormalizeStats* stats = nullptr);

}  // namespace canonc
