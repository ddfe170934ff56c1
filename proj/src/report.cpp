#include "pspec/report.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pspec/closedform.hpp"
#include "pspec/descent.hpp"
#include "pspec/enumerate.hpp"

namespace pspec {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

using Transform = Pattern (*)(const Pattern&);

Pattern transform_id(const Pattern& p) { return p; }
Pattern transform_rc(const Pattern& p) { return reverse(complement(p)); }

const std::pair<const char*, Transform> kTransforms[] = {
    {"", transform_id},
    {"complement", complement},
    {"reverse", reverse},
    {"reverse-complement", transform_rc},
};

PatternSet apply_transform(const PatternSet& s, Transform t) {
  std::vector<Pattern> members;
  for (const Pattern& p : s.members()) members.push_back(t(p));
  return PatternSet(s.m(), std::move(members));
}

// Canonical family of s under the count-preserving symmetries, if any.
struct KnownCase {
  std::string name;  // "123", "213", "123,231,312", "123,321", "132,231", "monotone"
  std::string via;
};

std::optional<KnownCase> match_known_case(const PatternSet& s) {
  if (s.members().size() == 1 && s.m() >= 2) {
    const Pattern& only = s.members().front();
    if (only == monotone_increasing(s.window()) || only == monotone_decreasing(s.window())) {
      if (s.m() == 2) {
        const char* via = only == monotone_increasing(3) ? "" : "complement";
        return KnownCase{"123", via};
      }
      return KnownCase{"monotone", ""};
    }
  }
  if (s.m() != 2) return std::nullopt;
  const PatternSet known213 = PatternSet::from_string("{213}");
  const PatternSet known_triple = PatternSet::from_string("{123,231,312}");
  const PatternSet known_alt = PatternSet::from_string("{123,321}");
  const PatternSet known_peakless = PatternSet::from_string("{132,231}");
  for (const auto& [name, t] : kTransforms) {
    const PatternSet img = apply_transform(s, t);
    if (img == known213) return KnownCase{"213", name};
    if (img == known_triple) return KnownCase{"123,231,312", name};
    if (img == known_alt) return KnownCase{"123,321", name};
    if (img == known_peakless) return KnownCase{"132,231", name};
  }
  return std::nullopt;
}

nlohmann::json term_json(const ExpansionTerm& term) {
  return {{"lambda_re", term.lambda.real()},
          {"lambda_im", term.lambda.imag()},
          {"c_re", term.c.real()},
          {"c_im", term.c.imag()},
          {"exponent", term.convention == ExponentConvention::pow_n_plus_1 ? "n+1" : "n-m"}};
}

}  // namespace

void validate(const RunConfig& config, int m) {
  if (config.n_max < m) throw OutOfRange("--n-max must be at least m");
  if (!power_of_two(config.grid_N) || config.grid_N < 4 || config.grid_N > 4096)
    throw OutOfRange("--grid must be a power of two between 4 and 4096");
  if (!(config.tol > 0)) throw OutOfRange("--tol must be positive");
  if (config.format != "json" && config.format != "csv")
    throw OutOfRange("--format must be json or csv");
}

ParsedSpec parse_pattern_spec(std::string_view text) {
  if (text.empty()) throw ParseError("empty pattern spec", 0);
  if (text.rfind("d:", 0) == 0) {
    const std::string_view body = text.substr(2);
    if (body.empty()) throw ParseError("empty descent word list", 2);
    std::vector<DescentWord> words;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = body.find(',', pos);
      const std::string_view tok =
          body.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
      try {
        words.emplace_back(std::string(tok));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), 2 + pos + e.position);
      }
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    try {
      return {patterns_of_descent_set(words), std::move(words)};
    } catch (const ArityMismatch& e) {
      throw ParseError(e.what(), 2);
    }
  }
  return {PatternSet::from_string(text), std::nullopt};
}

nlohmann::json closed_form_report(const PatternSet& s) {
  nlohmann::json j;
  const auto known = match_known_case(s);
  j["known"] = known.has_value();
  if (!known) return j;
  j["case"] = known->name;
  j["via"] = known->via;
  if (known->name == "123") {
    nlohmann::json ladder = nlohmann::json::array();
    for (int k = -5; k <= 5; ++k) ladder.push_back(eigenvalues_123(k));
    j["ladder"] = ladder;
    j["terms"] = nlohmann::json::array();
    for (const ExpansionTerm& term : expansion_terms_123(2)) j["terms"].push_back(term_json(term));
  } else if (known->name == "213") {
    const auto terms = expansion_terms_213(1e-12);
    j["terms"] = nlohmann::json::array();
    j["index_equation_residuals"] = nlohmann::json::array();
    nlohmann::json roots = nlohmann::json::array();
    for (const ExpansionTerm& term : terms) {
      roots.push_back({{"re", term.lambda.real()}, {"im", term.lambda.imag()}});
      j["terms"].push_back(term_json(term));
      j["index_equation_residuals"].push_back(index_residual_213(term.lambda));
    }
    j["roots"] = roots;
    const double l0 = terms.front().lambda.real();
    j["eigenvalue_equation_residual"] =
        std::abs(erf_real(1.0 / (std::numbers::sqrt2 * l0)) - std::sqrt(2.0 / std::numbers::pi));
  } else if (known->name == "123,231,312") {
    nlohmann::json ladder = nlohmann::json::array();
    for (int jj = 1; jj <= 9; jj += 2) ladder.push_back(eigenvalues_triple(jj));
    j["ladder"] = ladder;
    j["coefficient"] = triple_coefficient(eigenvalues_triple(1));
    nlohmann::json counts = nlohmann::json::array();
    for (int n = 2; n <= 12; ++n) counts.push_back(exact_count_triple(n).str());
    j["exact_counts"] = counts;
  } else if (known->name == "123,321") {
    nlohmann::json ladder = nlohmann::json::array();
    for (int jj = 1; jj <= 9; jj += 2) {
      ladder.push_back(2.0 / (std::numbers::pi * jj));
      ladder.push_back(-2.0 / (std::numbers::pi * jj));
    }
    j["ladder"] = ladder;
    const EulerTable e = euler_numbers(12);
    nlohmann::json counts = nlohmann::json::array();
    for (int n = 2; n <= 12; ++n) counts.push_back(BigInt(2 * e.at(n)).str());
    j["exact_counts"] = counts;
  } else if (known->name == "132,231") {
    j["note"] = "no non-zero eigenvalues; counts are 2^(n-1)";
    nlohmann::json counts = nlohmann::json::array();
    for (int n = 1; n <= 12; ++n) counts.push_back((BigInt(1) << (n - 1)).str());
    j["exact_counts"] = counts;
  } else if (known->name == "monotone") {
    j["note"] = "monotone singleton; reduces to descent-word avoidance of a constant word";
  }
  return j;
}

nlohmann::json asymptotics_report(const PatternSet& s, int n_max) {
  nlohmann::json j;
  const auto known = match_known_case(s);
  j["known"] = known.has_value() && known->name != "monotone";
  if (!j["known"].get<bool>()) return j;
  j["case"] = known->name;
  const CountTable t = pyramid_count(s, n_max);
  nlohmann::json rows = nlohmann::json::array();
  for (int n = 2; n <= n_max; ++n) {
    const double exact = t.alpha_over_nfact(n);
    double expansion = 0.0;
    if (known->name == "123") {
      expansion = asymptotic_123(n, 1);
    } else if (known->name == "213") {
      expansion = asymptotic_213(n) + next_term_213(n);
    } else if (known->name == "123,231,312") {
      expansion = triple_series(n, 999);
    } else if (known->name == "123,321") {
      expansion = 2.0 * euler_expansion(n, 99);
    } else {  // 132,231
      expansion = ratio_to_double(BigInt(1) << (n - 1), factorial(n));
    }
    rows.push_back({{"n", n},
                    {"alpha", t.alpha(n).str()},
                    {"exact", exact},
                    {"expansion", expansion},
                    {"rel_gap", exact == 0.0 ? 0.0 : std::abs(exact - expansion) / exact}});
  }
  j["rows"] = rows;
  return j;
}

nlohmann::json spectrum_report(const PatternSet& s, const RunConfig& config) {
  const GridSpec spec{s.m(), config.grid_N};
  const ArnoldiResult arnoldi =
      arnoldi_eigs(s, spec, config.top_k, std::min(config.krylov_dim, 64));
  std::optional<double> extrapolated;
  nlohmann::json extra;
  if (config.grid_N >= 8) {
    try {
      const EigenPair coarse =
          power_iteration(s, {s.m(), config.grid_N / 2}, config.tol, 10000, config.seed);
      const EigenPair fine = power_iteration(s, spec, config.tol, 10000, config.seed);
      extrapolated =
          richardson(coarse.eigenvalue.real(), fine.eigenvalue.real());
    } catch (const NotDominated& e) {
      extra["power_iteration_error"] = e.what();
    } catch (const DegenerateOperator& e) {
      extra["power_iteration_error"] = e.what();
    }
  }
  nlohmann::json j = eigen_report_json(s, spec, arnoldi.pairs, extrapolated);
  j["breakdown"] = arnoldi.breakdown;
  if (extra.contains("power_iteration_error"))
    j["power_iteration_error"] = extra["power_iteration_error"];
  return j;
}

nlohmann::json classification_report(const ParsedSpec& spec) {
  const Verdict v = spec.descent_words
                        ? classify_descent(spec.descent_words->front().size(), *spec.descent_words)
                        : classify(spec.patterns);
  return verdict_json(v);
}

nlohmann::json counts_json(const PatternSet& s, int n_max) {
  const CountTable t = pyramid_count(s, n_max);
  std::vector<GrowthEstimate> est;
  if (n_max >= s.m() + 2) est = growth_estimates(t);
  nlohmann::json rows = nlohmann::json::array();
  for (int n = 0; n <= n_max; ++n) {
    nlohmann::json row{{"n", n},
                       {"alpha", t.alpha(n).str()},
                       {"alpha_over_nfact", t.alpha_over_nfact(n)}};
    if (n >= 1 && n <= static_cast<int>(est.size())) {
      const GrowthEstimate& g = est[static_cast<std::size_t>(n - 1)];
      row["root_est"] = g.root_est;
      row["ratio_est"] = g.ratio_est ? nlohmann::json(*g.ratio_est) : nlohmann::json(nullptr);
    } else {
      row["root_est"] = nullptr;
      row["ratio_est"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  return {{"pattern_set", s.str()}, {"m", s.m()}, {"rows", rows}};
}

std::string counts_csv(const PatternSet& s, int n_max) {
  std::ostringstream os;
  write_counts_csv(os, pyramid_count(s, n_max));
  return os.str();
}

nlohmann::json run_report(const RunConfig& config) {
  const ParsedSpec spec = parse_pattern_spec(config.pattern_spec);
  const PatternSet& s = spec.patterns;
  validate(config, s.m());
  nlohmann::json j;
  j["config"] = {{"pattern_spec", config.pattern_spec}, {"n_max", config.n_max},
                 {"grid", config.grid_N},               {"top", config.top_k},
                 {"krylov", config.krylov_dim},         {"tol", config.tol},
                 {"seed", config.seed}};
  j["pattern_set"] = {{"patterns", nlohmann::json::array()}, {"m", s.m()}};
  for (const Pattern& p : s.members()) j["pattern_set"]["patterns"].push_back(p.str());
  if (spec.descent_words) {
    j["pattern_set"]["descent_words"] = nlohmann::json::array();
    for (const DescentWord& w : *spec.descent_words)
      j["pattern_set"]["descent_words"].push_back(w.letters());
  } else {
    j["pattern_set"]["descent_words"] = nullptr;
  }
  j["counts"] = counts_json(s, config.n_max);
  j["spectral"] = spectrum_report(s, config);
  j["closed_form"] = closed_form_report(s);
  j["classification"] = classification_report(spec);
  j["expansion_check"] = asymptotics_report(s, config.n_max);
  return j;
}

}  // namespace pspec
