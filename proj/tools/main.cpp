#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pspec/descent.hpp"
#include "pspec/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace pspec;

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open output file: " + path);
  os << content;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  if (const char* env = std::getenv("PATTERN_SPECTRA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif

  CLI::App app{
      "pattern-spectra: exact enumeration, transfer-operator spectra and "
      "dominance certificates for consecutive pattern avoidance"};
  app.require_subcommand(1);

  RunConfig config;
  std::string dump_phi, dot_overlap, dot_debruijn;

  const auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("spec", config.pattern_spec,
                    "pattern set \"{123,231}\" or descent words \"d:aab\"")
        ->required();
    cmd->add_option("--out", config.out_path, "write output to a file instead of stdout");
  };

  CLI::App* count = app.add_subcommand("count", "exact avoider counts with growth estimates");
  add_spec(count);
  count->add_option("--n-max", config.n_max, "largest permutation length");
  config.format = "csv";
  count->add_option("--format", config.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  int dump_level = 0;
  std::string level_out;
  count->add_option("--dump-level", dump_level, "also write one pyramid level as CSV");
  count->add_option("--level-out", level_out, "file for the pyramid level dump");

  CLI::App* spectrum = app.add_subcommand("spectrum", "leading eigenvalues of the operator");
  add_spec(spectrum);
  spectrum->add_option("--grid", config.grid_N, "nodes per axis (power of two, 4..4096)");
  spectrum->add_option("--top", config.top_k, "number of eigenvalues");
  spectrum->add_option("--krylov", config.krylov_dim, "Krylov space dimension (<= 64)");
  spectrum->add_option("--tol", config.tol, "solver tolerance");
  spectrum->add_option("--seed", config.seed, "solver start dither seed");
  spectrum->add_option("--dump-phi", dump_phi, "write the dominant eigenfunction (binary)");

  CLI::App* closed = app.add_subcommand("closed-form", "exact ladders and expansion terms");
  add_spec(closed);

  CLI::App* classify_cmd = app.add_subcommand("classify", "dominance certificate from graphs");
  add_spec(classify_cmd);
  classify_cmd->add_option("--dot-overlap", dot_overlap, "write the overlap graph as DOT");
  classify_cmd->add_option("--dot-debruijn", dot_debruijn, "write the de Bruijn graph as DOT");

  CLI::App* asym = app.add_subcommand("asymptotics", "expansion versus exact counts");
  add_spec(asym);
  asym->add_option("--n-max", config.n_max, "largest permutation length");

  CLI::App* report = app.add_subcommand("report", "full document combining every module");
  add_spec(report);
  report->add_option("--n-max", config.n_max, "largest permutation length");
  report->add_option("--grid", config.grid_N, "nodes per axis (power of two, 4..4096)");
  report->add_option("--top", config.top_k, "number of eigenvalues");
  report->add_option("--krylov", config.krylov_dim, "Krylov space dimension (<= 64)");
  report->add_option("--tol", config.tol, "solver tolerance");
  report->add_option("--seed", config.seed, "solver start dither seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    const ParsedSpec spec = parse_pattern_spec(config.pattern_spec);
    const PatternSet& s = spec.patterns;
    if (count->parsed()) {
      validate(config, s.m());
      write_output(config.out_path, config.format == "csv"
                                        ? counts_csv(s, config.n_max)
                                        : dump(counts_json(s, config.n_max)));
      if (dump_level > 0) {
        if (dump_level < s.m()) throw OutOfRange("--dump-level must be at least m");
        if (level_out.empty()) throw Error("--dump-level needs --level-out");
        PyramidLevel level = pyramid_base_level(s);
        while (level.n < dump_level) level = pyramid_next_level(s, level);
        std::ofstream os(level_out);
        if (!os) throw Error("cannot open output file: " + level_out);
        for (int a = 1; a <= s.m(); ++a) os << 'i' << a << ',';
        os << "count\n";
        std::vector<int> key(static_cast<std::size_t>(s.m()), 1);
        for (const BigInt& value : level.table) {
          if (value != 0) {
            for (int v : key) os << v << ',';
            os << value.str() << '\n';
          }
          for (std::size_t a = 0; a < key.size(); ++a) {
            if (++key[a] <= level.n) break;
            key[a] = 1;
          }
        }
      }
    } else if (spectrum->parsed()) {
      validate(config, s.m());
      write_output(config.out_path, dump(spectrum_report(s, config)));
      if (!dump_phi.empty()) {
        const EigenPair pair =
            power_iteration(s, {s.m(), config.grid_N}, config.tol, 10000, config.seed);
        std::ofstream os(dump_phi, std::ios::binary);
        if (!os) throw Error("cannot open output file: " + dump_phi);
        save_grid_function(os, pair.phi);
      }
    } else if (closed->parsed()) {
      write_output(config.out_path, dump(closed_form_report(s)));
    } else if (classify_cmd->parsed()) {
      write_output(config.out_path, dump(classification_report(spec)));
      if (!dot_overlap.empty()) {
        std::ofstream os(dot_overlap);
        os << to_dot(build_overlap_graph(s));
      }
      if (!dot_debruijn.empty()) {
        if (!spec.descent_words)
          throw Error("--dot-debruijn requires a descent-word spec (d:...)");
        std::ofstream os(dot_debruijn);
        os << to_dot(build_de_bruijn(spec.descent_words->front().size(), *spec.descent_words));
      }
    } else if (asym->parsed()) {
      validate(config, s.m());
      write_output(config.out_path, dump(asymptotics_report(s, config.n_max)));
    } else if (report->parsed()) {
      write_output(config.out_path, dump(run_report(config)));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const NotDominated& e) {
    std::cerr << "numeric: " << e.what() << "\n";
    return 3;
  } catch (const NoConvergence& e) {
    std::cerr << "numeric: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateOperator& e) {
    std::cerr << "numeric: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
