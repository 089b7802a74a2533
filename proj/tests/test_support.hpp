#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canonc/ast.hpp"
#include "canonc/normalizer.hpp"

namespace canonc::testing {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
TranslationUnit load_fixture(const std::string& name);

struct CorpusProgram {
  std::string file;   // relative to the fixture directory
  std::string entry;  // function the oracle runs
};

const std::vector<CorpusProgram>& corpus();

// Name of the last function, which the generated programs use as entry.
std::string last_function(const TranslationUnit& unit);

struct RuleGolden {
  std::string name;
  Rule rule;
  std::string input;
  std::string expected;
};

// Small programs exercising one normalization rule each, with the exact
// text normalization produces when only that rule is enabled.
const std::vector<RuleGolden>& rule_goldens();

}  // namespace canonc::testing
