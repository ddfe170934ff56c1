#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "pspec/core.hpp"
#include "pspec/graphs.hpp"
#include "pspec/spectral.hpp"

namespace pspec {

struct RunConfig {
  std::string pattern_spec;
  int n_max = 16;
  int grid_N = 64;
  int top_k = 3;
  int krylov_dim = 24;
  double tol = 1e-10;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
};

void validate(const RunConfig& config, int m);

// "{123,231}" names the patterns directly; "d:aab" gives forbidden descent
// words, expanded to the matching pattern set.
struct ParsedSpec {
  PatternSet patterns;
  std::optional<std::vector<DescentWord>> descent_words;
};

ParsedSpec parse_pattern_spec(std::string_view text);

// Closed forms for the handled families; known=false JSON otherwise.
nlohmann::json closed_form_report(const PatternSet& s);

// Exact-count versus expansion table for the same families.
nlohmann::json asymptotics_report(const PatternSet& s, int n_max);

nlohmann::json spectrum_report(const PatternSet& s, const RunConfig& config);

nlohmann::json classification_report(const ParsedSpec& spec);

// Single document: counts, growth, spectrum, closed forms, classification,
// and the expansion error table.
nlohmann::json run_report(const RunConfig& config);

std::string counts_csv(const PatternSet& s, int n_max);
nlohmann::json counts_json(const PatternSet& s, int n_max);

}  // namespace pspec
