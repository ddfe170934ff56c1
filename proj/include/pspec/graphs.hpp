#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pspec/core.hpp"

namespace pspec {

struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit Digraph(int vertices = 0) : n(vertices), adj(static_cast<std::size_t>(vertices)) {}
  void add_edge(int from, int to) { adj[static_cast<std::size_t>(from)].push_back(to); }
};

bool strongly_connected(const Digraph& g);

// gcd of closed-walk lengths, from a BFS layering. Requires strong
// connectivity; returns 0 for a single vertex with no loop.
int period(const Digraph& g);

// Vertices S_m, one edge per allowed window tau sharing m entries.
struct OverlapGraph {
  struct Edge {
    int from, to;
    Pattern label;
  };
  int m = 0;
  std::vector<Pattern> vertices;  // lexicographic
  std::vector<Edge> edges;        // ordered by label

  Digraph digraph() const;
};

OverlapGraph build_overlap_graph(const PatternSet& s);

// Vertices {a,b}^(m-1), edge xu -> uy for every length-m word xuy outside U.
struct DeBruijnGraph {
  struct Edge {
    int from, to;
    DescentWord label;
  };
  int m = 0;
  std::vector<DescentWord> vertices;  // lexicographic
  std::vector<Edge> edges;            // ordered by label

  Digraph digraph() const;
};

DeBruijnGraph build_de_bruijn(int m, const std::vector<DescentWord>& u);

enum class Certificate { ErgodicViaG, IndecomposableSet, DescentErgodic, MonotoneReduced, None };

std::string certificate_name(Certificate c);

// Graph facts refer to the graph examined by the issuing route: the de Bruijn
// graph for descent routes, otherwise the overlap graph.
struct Verdict {
  bool strongly_connected = false;
  std::optional<int> period;
  Certificate certificate = Certificate::None;
  std::string implication;
  std::string via;  // symmetry transform behind the certificate, empty if none
};

Verdict classify(const PatternSet& s);
Verdict classify_descent(int m, const std::vector<DescentWord>& u);

std::string to_dot(const OverlapGraph& g);
std::string to_dot(const DeBruijnGraph& g);
nlohmann::json verdict_json(const Verdict& v);

}  // namespace pspec
