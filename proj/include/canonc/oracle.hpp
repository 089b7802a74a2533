#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "canonc/ast.hpp"

namespace canonc {

enum class TrapKind { DivideByZero, ModByZero, ShiftOutOfRange, FuelExhausted };

std::string_view to_string(TrapKind kind);

/// Result of running a function: a returned value or a trap. Every integer
/// type is treated as wrapping two's-complement 64-bit.
struct Outcome {
  bool trapped = false;
  std::int64_t value = 0;
  TrapKind trap = TrapKind::FuelExhausted;

  static Outcome returned(std::int64_t v) { return {false, v, TrapKind::FuelExhausted}; }
  static Outcome trapped_with(TrapKind k) { return {true, 0, k}; }

  std::string to_string() const;
  friend bool operator==(const Outcome& a, const Outcome& b) {
    return a.trapped == b.trapped && (a.trapped ? a.trap == b.trap : a.value == b.value);
  }
};

inline constexpr std::int64_t kDefaultFuel = 1'000'000;

/// Runs `entry` on `args`. Each statement and expression node costs one unit
/// of fuel. Throws EvalError (UnknownFunction, ArityMismatch,
/// UnsupportedForEvaluation).
Outcome evaluate(const TranslationUnit& unit, std::string_view entry,
                 std::span<const std::int64_t> args, std::int64_t fuel = kDefaultFuel);

struct Verdict {
  bool equivalent = true;
  std::vector<std::int64_t> args;  // counterexample when not equivalent
  Outcome a;
  Outcome b;
};

/// Compares `entry` in both units on `trials` seeded random argument vectors
/// (90% of components in [-16, 16], the rest anywhere in 64 bits).
Verdict equivalent(const TranslationUnit& a, const TranslationUnit& b, std::string_view entry,
                   int trials = 100, std::uint64_t seed = 0, std::int64_t fuel = kDefaultFuel);

/// The argument vectors `equivalent` draws, exposed for test reporting.
std::vector<std::vector<std::int64_t>> random_arguments(std::size_t arity, int trials,
                                                        std::uint64_t seed);

}  // namespace canonc
