#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace canonc {

inline const std::vector<std::size_t> kDefaultBenchSizes = {1000,   10000,  50000, 100000,
                                                            150000, 200000, 250000};

/// A terminating, integer-only C-mini program of exactly `lines` lines with
/// loops of every kind, switches, compound assignments, comma expressions and
/// calls between functions. Throws ParameterError when lines < 10.
std::string generate_synthetic(std::size_t lines, std::uint64_t seed);

struct BenchRow {
  std::size_t lines = 0;
  double pass1_seconds = 0;  // tokenize + parse
  double pass2_seconds = 0;  // normalize + emit
  double total_seconds = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // ascending by lines
  std::string environment;
};

/// Times both passes on in-memory generated sources, single-threaded.
BenchReport run_bench(std::span<const std::size_t> sizes, std::uint64_t seed);

std::string format_table(const BenchReport& report);

}  // namespace canonc
