// canonc: normalize, disguise and compare C-mini sources.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "canonc/bench.hpp"
#include "canonc/disguiser.hpp"
#include "canonc/emitter.hpp"
#include "canonc/errors.hpp"
#include "canonc/fingerprint.hpp"
#include "canonc/normalizer.hpp"
#include "canonc/parser.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitFixpoint = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
}

canonc::TranslationUnit load(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<canonc::Diagnostic> warnings;
  try {
    canonc::TranslationUnit unit = canonc::parse_source(text, &warnings);
    for (const auto& w : warnings) std::cerr << w.format(path) << "\n";
    return unit;
  } catch (const canonc::Error& e) {
    throw InputError(e.diagnostic().format(path));
  }
}

canonc::NormalizeConfig rule_config(const std::vector<std::string>& only,
                                    const std::vector<std::string>& disabled, int max_iterations) {
  auto parse_rule = [](const std::string& name) {
    for (int i = 1; i <= canonc::kRuleCount; ++i) {
      auto r = static_cast<canonc::Rule>(i);
      if (canonc::to_string(r) == name || std::to_string(i) == name) return r;
    }
    throw UsageError("unknown rule '" + name + "'");
  };
  canonc::NormalizeConfig cfg;
  if (!only.empty()) {
    cfg.enabled.fill(false);
    for (const auto& n : only) cfg.set(parse_rule(n), true);
  }
  for (const auto& n : disabled) cfg.set(parse_rule(n), false);
  cfg.max_iterations = max_iterations;
  return cfg;
}

canonc::DisguiseConfig transform_config(const std::vector<std::string>& only,
                                        const std::vector<std::string>& disabled) {
  auto parse_transform = [](const std::string& name) {
    auto t = canonc::transform_from_string(name);
    if (!t) throw UsageError("unknown transform '" + name + "'");
    return *t;
  };
  canonc::DisguiseConfig cfg;
  if (!only.empty()) {
    cfg.enabled.fill(false);
    for (const auto& n : only) cfg.set(parse_transform(n), true);
  }
  for (const auto& n : disabled) cfg.set(parse_transform(n), false);
  return cfg;
}

double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

std::string rule_names() {
  std::string s;
  for (int i = 1; i <= canonc::kRuleCount; ++i) {
    if (i > 1) s += ", ";
    s += canonc::to_string(static_cast<canonc::Rule>(i));
  }
  return s;
}

std::string transform_names() {
  std::string s;
  for (int i = 0; i < canonc::kTransformCount; ++i) {
    if (i) s += ", ";
    s += canonc::to_string(static_cast<canonc::Transform>(i));
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonc: canonical-form normalizer, disguiser and similarity scorer for C-mini"};
  app.require_subcommand(1);

  // normalize
  auto* norm = app.add_subcommand("normalize", "Rewrite a file into canonical form");
  std::string norm_in, norm_out;
  std::vector<std::string> norm_only, norm_disable;
  int max_iterations = 64;
  bool norm_stats = false;
  norm->add_option("input", norm_in, "Source file")->required();
  norm->add_option("-o,--output", norm_out, "Output file (default: standard output)");
  norm->add_option("--only", norm_only, "Enable only these rules (" + rule_names() + ")");
  norm->add_option("--disable", norm_disable, "Disable these rules");
  norm->add_option("--max-iterations", max_iterations, "Fixpoint iteration limit")->check(CLI::PositiveNumber);
  norm->add_flag("--stats", norm_stats, "Print rule application counts to standard error");

  // disguise
  auto* dis = app.add_subcommand("disguise", "Apply seeded mechanical disguises");
  std::string dis_in, dis_out;
  std::uint64_t seed = 0;
  double intensity = 1.0;
  std::vector<std::string> dis_only, dis_disable;
  bool trace = false;
  dis->add_option("input", dis_in, "Source file")->required();
  dis->add_option("-o,--output", dis_out, "Output file (default: standard output)");
  dis->add_option("--seed", seed, "Random seed");
  dis->add_option("--intensity", intensity, "Probability of transforming each site")->check(CLI::Range(0.0, 1.0));
  dis->add_option("--only", dis_only, "Enable only these transforms (" + transform_names() + ")");
  dis->add_option("--disable", dis_disable, "Disable these transforms");
  dis->add_flag("--trace", trace, "Print applied transforms to standard error");

  // compare
  auto* cmp = app.add_subcommand("compare", "Fingerprint similarity of two files");
  std::string file_a, file_b;
  bool normalized = false, as_json = false;
  int k = canonc::kDefaultK, w = canonc::kDefaultW;
  cmp->add_option("a", file_a, "First file")->required();
  cmp->add_option("b", file_b, "Second file")->required();
  cmp->add_flag("--normalize", normalized, "Normalize both files before fingerprinting");
  cmp->add_option("--k", k, "k-gram length")->check(CLI::PositiveNumber);
  cmp->add_option("--w", w, "Winnowing window")->check(CLI::PositiveNumber);
  cmp->add_flag("--json", as_json, "Print one JSON object");

  // bench
  auto* bench = app.add_subcommand("bench", "Time both passes on generated programs");
  std::vector<std::size_t> sizes = canonc::kDefaultBenchSizes;
  std::uint64_t bench_seed = 1;
  bool bench_json = false;
  bench->add_option("--sizes", sizes, "Line counts")->delimiter(',')->check(CLI::Range(10, 100000000));
  bench->add_option("--seed", bench_seed, "Generator seed");
  bench->add_flag("--json", bench_json, "Print only the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*norm) {
      canonc::NormalizeConfig cfg = rule_config(norm_only, norm_disable, max_iterations);
      canonc::TranslationUnit unit = load(norm_in);
      canonc::NormalizeStats stats;
      std::string text = canonc::emit(canonc::normalize(unit, cfg, &stats));
      write_output(norm_out, text);
      if (norm_stats) {
        for (int i = 1; i <= canonc::kRuleCount; ++i)
          std::cerr << canonc::to_string(static_cast<canonc::Rule>(i)) << ": " << stats.applied[i] << "\n";
        std::cerr << "iterations: " << stats.iterations << "\n";
      }
      return 0;
    }
    if (*dis) {
      canonc::DisguiseConfig cfg = transform_config(dis_only, dis_disable);
      cfg.seed = seed;
      cfg.intensity = intensity;
      canonc::TranslationUnit unit = load(dis_in);
      canonc::DisguiseResult r = canonc::disguise_trace(unit, cfg);
      write_output(dis_out, canonc::emit(r.unit));
      if (trace)
        for (const auto& t : r.trace) std::cerr << "trace: " << t.transform << " line " << t.line << "\n";
      return 0;
    }
    if (*cmp) {
      canonc::TranslationUnit ua = load(file_a);
      canonc::TranslationUnit ub = load(file_b);
      if (normalized) {
        ua = canonc::normalize(ua);
        ub = canonc::normalize(ub);
      }
      canonc::SimilarityReport r =
          canonc::similarity(canonc::fingerprint_unit(ua, k, w), canonc::fingerprint_unit(ub, k, w));
      if (as_json) {
        nlohmann::ordered_json j;
        j["file_a"] = file_a;
        j["file_b"] = file_b;
        j["normalized"] = normalized;
        j["jaccard"] = round4(r.jaccard);
        j["containment_a"] = round4(r.containment_a);
        j["containment_b"] = round4(r.containment_b);
        j["shared"] = r.shared;
        j["total_a"] = r.total_a;
        j["total_b"] = r.total_b;
        j["k"] = k;
        j["w"] = w;
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("%-14s %s\n%-14s %s\n%-14s %s\n", "file_a", file_a.c_str(), "file_b", file_b.c_str(),
                    "normalized", normalized ? "yes" : "no");
        std::printf("%-14s %.4f\n%-14s %.4f\n%-14s %.4f\n", "jaccard", r.jaccard, "containment_a",
                    r.containment_a, "containment_b", r.containment_b);
        std::printf("%-14s %zu\n%-14s %zu\n%-14s %zu\n%-14s %d\n%-14s %d\n", "shared", r.shared, "total_a",
                    r.total_a, "total_b", r.total_b, "k", k, "w", w);
      }
      return 0;
    }
    if (*bench) {
      canonc::BenchReport report = canonc::run_bench(sizes, bench_seed);
      nlohmann::ordered_json j;
      j["environment"] = report.environment;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["lines"] = row.lines;
        r["pass1_seconds"] = row.pass1_seconds;
        r["pass2_seconds"] = row.pass2_seconds;
        r["total_seconds"] = row.total_seconds;
        j["rows"].push_back(r);
      }
      if (!bench_json) std::cout << canonc::format_table(report) << "\n";
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const canonc::FixpointNotReached& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kExitFixpoint;
  } catch (const canonc::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
