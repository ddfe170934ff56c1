#include "pspec/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace pspec {

bool strongly_connected(const Digraph& g) {
  if (g.n == 0) throw EmptyGraph("graph has no vertices");
  if (g.n == 1) return true;
  // Tarjan, counting components
  std::vector<int> dfn(static_cast<std::size_t>(g.n), -1), low(static_cast<std::size_t>(g.n));
  std::vector<char> on_stack(static_cast<std::size_t>(g.n), 0);
  std::vector<int> stack;
  int time = 0, comps = 0;
  std::function<void(int)> dfs = [&](int v) {
    dfn[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = time++;
    stack.push_back(v);
    on_stack[static_cast<std::size_t>(v)] = 1;
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      if (dfn[static_cast<std::size_t>(w)] < 0) {
        dfs(w);
        low[static_cast<std::size_t>(v)] =
            std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
      } else if (on_stack[static_cast<std::size_t>(w)]) {
        low[static_cast<std::size_t>(v)] =
            std::min(low[static_cast<std::size_t>(v)], dfn[static_cast<std::size_t>(w)]);
      }
    }
    if (low[static_cast<std::size_t>(v)] == dfn[static_cast<std::size_t>(v)]) {
      ++comps;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = 0;
      } while (w != v);
    }
  };
  for (int v = 0; v < g.n; ++v)
    if (dfn[static_cast<std::size_t>(v)] < 0) dfs(v);
  return comps == 1;
}

int period(const Digraph& g) {
  if (!strongly_connected(g)) throw NotStronglyConnected("period requires strong connectivity");
  std::vector<int> level(static_cast<std::size_t>(g.n), -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : g.adj[static_cast<std::size_t>(v)])
      if (level[static_cast<std::size_t>(w)] < 0) {
        level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
  }
  int d = 0;
  for (int v = 0; v < g.n; ++v)
    for (int w : g.adj[static_cast<std::size_t>(v)])
      d = std::gcd(d, std::abs(level[static_cast<std::size_t>(v)] + 1 -
                               level[static_cast<std::size_t>(w)]));
  return d;
}

Digraph OverlapGraph::digraph() const {
  Digraph g(static_cast<int>(vertices.size()));
  for (const Edge& e : edges) g.add_edge(e.from, e.to);
  return g;
}

Digraph DeBruijnGraph::digraph() const {
  Digraph g(static_cast<int>(vertices.size()));
  for (const Edge& e : edges) g.add_edge(e.from, e.to);
  return g;
}

OverlapGraph build_overlap_graph(const PatternSet& s) {
  const int m = s.m();
  OverlapGraph g;
  g.m = m;
  g.vertices = all_patterns(m);
  std::map<Pattern, int> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    index[g.vertices[i]] = static_cast<int>(i);
  for (const Pattern& tau : all_patterns(m + 1)) {
    if (s.contains(tau)) continue;
    const auto& e = tau.entries();
    const Pattern head = standardize_values({e.data(), static_cast<std::size_t>(m)});
    const Pattern tail = standardize_values({e.data() + 1, static_cast<std::size_t>(m)});
    g.edges.push_back({index.at(head), index.at(tail), tau});
  }
  return g;
}

namespace {

std::vector<DescentWord> all_words(int length) {
  std::vector<DescentWord> out;
  const int total = 1 << length;
  for (int idx = 0; idx < total; ++idx) {
    std::string w(static_cast<std::size_t>(length), 'a');
    for (int j = 0; j < length; ++j)
      if (idx & (1 << (length - 1 - j))) w[static_cast<std::size_t>(j)] = 'b';
    out.emplace_back(std::move(w));
  }
  return out;  // lexicographic
}

}  // namespace

DeBruijnGraph build_de_bruijn(int m, const std::vector<DescentWord>& u) {
  if (m < 2) throw ArityMismatch("de Bruijn graph needs word length m >= 2");
  for (const DescentWord& w : u)
    if (w.size() != m) throw ArityMismatch("descent words of mixed lengths");
  const std::set<DescentWord> forbidden(u.begin(), u.end());
  DeBruijnGraph g;
  g.m = m;
  g.vertices = all_words(m - 1);
  std::map<DescentWord, int> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    index[g.vertices[i]] = static_cast<int>(i);
  for (const DescentWord& w : all_words(m)) {
    if (forbidden.count(w)) continue;
    const DescentWord head(w.letters().substr(0, static_cast<std::size_t>(m - 1)));
    const DescentWord tail(w.letters().substr(1));
    g.edges.push_back({index.at(head), index.at(tail), w});
  }
  return g;
}

std::string certificate_name(Certificate c) {
  switch (c) {
    case Certificate::ErgodicViaG: return "ErgodicViaG";
    case Certificate::IndecomposableSet: return "IndecomposableSet";
    case Certificate::DescentErgodic: return "DescentErgodic";
    case Certificate::MonotoneReduced: return "MonotoneReduced";
    case Certificate::None: return "None";
  }
  return "None";
}

namespace {

const char* kSimpleDominant =
    "the dominant eigenvalue is simple, real and positive; "
    "alpha_n/n! = c*lambda^n + O(r^n) with 0 < r < lambda";

struct Transform {
  const char* name;
  Pattern (*apply)(const Pattern&);
};

Pattern transform_id(const Pattern& p) { return p; }
Pattern transform_rc(const Pattern& p) { return reverse(complement(p)); }

const Transform kTransforms[] = {
    {"", transform_id},
    {"complement", complement},
    {"reverse", reverse},
    {"reverse-complement", transform_rc},
};

PatternSet apply_transform(const PatternSet& s, const Transform& t) {
  std::vector<Pattern> members;
  for (const Pattern& p : s.members()) members.push_back(t.apply(p));
  return PatternSet(s.m(), std::move(members));
}

std::vector<DescentWord> descent_words_of(const PatternSet& s) {
  std::set<DescentWord> words;
  for (const Pattern& p : s.members()) words.insert(descent_word(p));
  return {words.begin(), words.end()};
}

Verdict descent_verdict(int m, const std::vector<DescentWord>& u, Certificate cert,
                        const std::string& via) {
  const DeBruijnGraph d = build_de_bruijn(m, u);
  const Digraph dg = d.digraph();
  Verdict v;
  v.via = via;
  v.strongly_connected = strongly_connected(dg);
  if (!v.strongly_connected) return v;  // certificate None
  v.period = period(dg);
  v.certificate = cert;
  if (*v.period == 1)
    v.implication = std::string("de Bruijn graph ergodic: the operator is positivity "
                                "improving; ") +
                    kSimpleDominant;
  else
    v.implication = "de Bruijn graph strongly connected with period " +
                    std::to_string(*v.period) +
                    ": r(T) is a simple positive eigenvalue and the spectrum is "
                    "invariant under rotation by exp(2*pi*i/" +
                    std::to_string(*v.period) + ")";
  return v;
}

}  // namespace

Verdict classify_descent(int m, const std::vector<DescentWord>& u) {
  Verdict v = descent_verdict(m, u, Certificate::DescentErgodic, "");
  if (v.certificate == Certificate::None) v.implication = "no finite certificate applies";
  return v;
}

Verdict classify(const PatternSet& s) {
  const int m = s.m();
  const int k = s.window();

  // Singleton monotone: reduce through its descent word.
  if (m >= 2 && s.members().size() == 1) {
    const Pattern& only = s.members().front();
    if (only == monotone_increasing(k) || only == monotone_decreasing(k)) {
      const char letter = only == monotone_increasing(k) ? 'a' : 'b';
      Verdict v = descent_verdict(m, {DescentWord(std::string(static_cast<std::size_t>(m), letter))},
                                  Certificate::MonotoneReduced, "");
      if (v.certificate != Certificate::None)
        v.implication = "monotone singleton reduced to descent avoidance; " + v.implication;
      return v;
    }
  }

  // Indecomposable route, trying the count-preserving symmetries.
  for (const Transform& t : kTransforms) {
    const PatternSet img = apply_transform(s, t);
    if (img.contains(monotone_decreasing(k))) continue;
    bool all_indecomposable = true;
    for (const Pattern& p : img.members())
      if (!is_indecomposable(p)) {
        all_indecomposable = false;
        break;
      }
    if (!all_indecomposable) continue;
    const Digraph g = build_overlap_graph(img).digraph();
    Verdict v;
    v.via = t.name;
    v.strongly_connected = strongly_connected(g);  // guaranteed by indecomposability
    if (v.strongly_connected) v.period = period(g);
    v.certificate = Certificate::IndecomposableSet;
    v.implication = std::string("all forbidden patterns indecomposable and the decreasing "
                                "monotone allowed: ") +
                    kSimpleDominant;
    return v;
  }

  // Direct route on the overlap graph.
  for (const Transform& t : kTransforms) {
    const PatternSet img = apply_transform(s, t);
    if (img.contains(monotone_increasing(k)) || img.contains(monotone_decreasing(k))) continue;
    const Digraph g = build_overlap_graph(img).digraph();
    if (!strongly_connected(g)) continue;
    Verdict v;
    v.via = t.name;
    v.strongly_connected = true;
    v.period = period(g);
    v.certificate = Certificate::ErgodicViaG;
    v.implication = std::string("overlap graph strongly connected and both monotone "
                                "patterns allowed: the operator is positivity improving; ") +
                    kSimpleDominant;
    return v;
  }

  // Descent-closed sets fall back to the de Bruijn route.
  if (m >= 2 && !s.empty()) {
    const std::vector<DescentWord> u = descent_words_of(s);
    if (patterns_of_descent_set(u) == s) {
      Verdict v = descent_verdict(m, u, Certificate::DescentErgodic, "");
      if (v.certificate != Certificate::None) return v;
    }
  }

  // No certificate; report the raw overlap-graph facts.
  Verdict v;
  const Digraph g = build_overlap_graph(s).digraph();
  v.strongly_connected = strongly_connected(g);
  if (v.strongly_connected) v.period = period(g);
  v.certificate = Certificate::None;
  v.implication = "no finite certificate applies";
  return v;
}

std::string to_dot(const OverlapGraph& g) {
  std::string out = "digraph overlap {\n";
  for (const OverlapGraph::Edge& e : g.edges)
    out += "  \"" + g.vertices[static_cast<std::size_t>(e.from)].str() + "\" -> \"" +
           g.vertices[static_cast<std::size_t>(e.to)].str() + "\" [label=\"" + e.label.str() +
           "\"];\n";
  out += "}\n";
  return out;
}

std::string to_dot(const DeBruijnGraph& g) {
  std::string out = "digraph debruijn {\n";
  for (const DeBruijnGraph::Edge& e : g.edges)
    out += "  \"" + g.vertices[static_cast<std::size_t>(e.from)].letters() + "\" -> \"" +
           g.vertices[static_cast<std::size_t>(e.to)].letters() + "\" [label=\"" +
           e.label.letters() + "\"];\n";
  out += "}\n";
  return out;
}

nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json j;
  j["strongly_connected"] = v.strongly_connected;
  j["period"] = v.period ? nlohmann::json(*v.period) : nlohmann::json(nullptr);
  j["certificate"] = certificate_name(v.certificate);
  j["implication"] = v.implication;
  j["via"] = v.via;
  return j;
}

}  // namespace pspec
