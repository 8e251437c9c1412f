#pragma once

// Test-only reference implementations. Everything here is deliberately
// brute force and shares no code path with the library beyond the graph
// container itself.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wfgroup/graph.hpp"
#include "wfgroup/workflow.hpp"

namespace oracle {

using wfgroup::WeightedDigraph;
using Matrix = std::vector<std::vector<double>>;

inline Matrix dense(const WeightedDigraph& g) {
  const auto n = g.vertex_count();
  Matrix a(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& [t, w] : g.out_edges(s)) a[s][t] = w;
  }
  return a;
}

inline Matrix multiply(const Matrix& x, const Matrix& y) {
  const auto n = x.size();
  Matrix out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i][j] += x[i][k] * y[k][j];
  return out;
}

inline Matrix transpose(const Matrix& x) {
  const auto n = x.size();
  Matrix out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j][i] = x[i][j];
  return out;
}

/// (A+I)(A+I)^T + (A+I)^T(A+I) by triple loops.
inline Matrix bibliometric_matrix(const WeightedDigraph& g) {
  auto a = dense(g);
  for (std::size_t i = 0; i < a.size(); ++i) a[i][i] += 1.0;
  const auto at = transpose(a);
  auto x = multiply(a, at);
  const auto y = multiply(at, a);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) x[i][j] += y[i][j];
  return x;
}

/// Bibliometric weights by counting shared neighbours: for u != v,
///   sum_k a'(u,k) a'(v,k) + sum_k a'(k,u) a'(k,v)  with a' = A + I.
inline Matrix bibliometric_by_shared_neighbors(const WeightedDigraph& g) {
  const auto n = g.vertex_count();
  auto ap = [&](std::size_t i, std::size_t j) { return g.weight(i, j) + (i == j ? 1.0 : 0.0); };
  Matrix out(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      double coupling = 0.0;
      double cocitation = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        coupling += ap(u, k) * ap(v, k);
        cocitation += ap(k, u) * ap(k, v);
      }
      out[u][v] = coupling + cocitation;
    }
  }
  return out;
}

/// Edge betweenness by enumerating every simple path of every ordered pair.
inline std::map<std::pair<std::size_t, std::size_t>, double> betweenness(const WeightedDigraph& g,
                                                                          bool hops = false) {
  const auto n = g.vertex_count();
  std::map<std::pair<std::size_t, std::size_t>, double> score;
  for (const auto& e : g.edges()) score[{e.source, e.target}] = 0.0;

  for (std::size_t s = 0; s < n; ++s) {
    // paths[t] = list of (length, vertex sequence)
    std::vector<std::vector<std::pair<double, std::vector<std::size_t>>>> paths(n);
    std::vector<std::size_t> stack{s};
    std::vector<char> on(n, 0);
    on[s] = 1;
    std::function<void(std::size_t, double)> dfs = [&](std::size_t v, double len) {
      for (const auto& [w, weight] : g.out_edges(v)) {
        if (on[w]) continue;
        const double l = len + (hops ? 1.0 : 1.0 / weight);
        stack.push_back(w);
        on[w] = 1;
        paths[w].emplace_back(l, stack);
        dfs(w, l);
        on[w] = 0;
        stack.pop_back();
      }
    };
    dfs(s, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s || paths[t].empty()) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : paths[t]) best = std::min(best, p.first);
      std::vector<const std::vector<std::size_t>*> shortest;
      for (const auto& p : paths[t]) {
        if (std::abs(p.first - best) <= 1e-12 * std::max(1.0, best)) shortest.push_back(&p.second);
      }
      const double share = 1.0 / static_cast<double>(shortest.size());
      for (const auto* seq : shortest) {
        for (std::size_t i = 0; i + 1 < seq->size(); ++i) score[{(*seq)[i], (*seq)[i + 1]}] += share;
      }
    }
  }
  return score;
}

/// Symmetric pair-weight matrix of the undirected view.
inline Matrix pair_weights(const WeightedDigraph& g) {
  const auto a = dense(g);
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] = a[i][j] + a[j][i];
  return out;
}

/// Q = 1/(2W) sum_ij [A_ij - k_i k_j / (2W)] delta(c_i, c_j).
inline double modularity_q(const WeightedDigraph& g, const std::vector<std::size_t>& labels) {
  const auto a = pair_weights(g);
  const auto n = a.size();
  std::vector<double> k(n, 0.0);
  double two_w = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      two_w += a[i][j];
    }
  if (two_w == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (labels[i] == labels[j]) q += a[i][j] - k[i] * k[j] / two_w;
  return q / two_w;
}

inline bool linked(const WeightedDigraph& g, std::size_t u, std::size_t v) {
  return g.has_edge(u, v) || g.has_edge(v, u);
}

/// Transitivity by enumerating unordered vertex triples.
inline double global_cc(const WeightedDigraph& g) {
  const auto n = g.vertex_count();
  double closed = 0.0;
  double open = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const int links = linked(g, a, b) + linked(g, b, c) + linked(g, a, c);
        if (links == 3) closed += 3.0;
        if (links == 2) open += 1.0;
      }
  return closed + open == 0.0 ? 0.0 : closed / (closed + open);
}

inline double local_cc(const WeightedDigraph& g) {
  const auto n = g.vertex_count();
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> nb;
    for (std::size_t u = 0; u < n; ++u)
      if (u != v && linked(g, u, v)) nb.push_back(u);
    if (nb.size() < 2) continue;
    double links = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) links += linked(g, nb[i], nb[j]);
    total += links / (nb.size() * (nb.size() - 1) / 2.0);
  }
  return total / static_cast<double>(n);
}

/// Every set partition of {0..n-1} as restricted growth strings.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> labels(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      f(labels);
      return;
    }
    for (std::size_t c = 0; c <= used && c < n; ++c) {
      labels[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  if (n == 0) {
    f(labels);
    return;
  }
  labels[0] = 0;
  rec(1, 1);
}

/// Minimum number of vertices that must change group to turn partition `a`
/// into partition `b` (partition-transfer distance), by exhaustive matching.
inline std::size_t transfer_distance(const std::vector<std::set<std::string>>& a,
                                     const std::vector<std::set<std::string>>& b) {
  std::size_t n = 0;
  for (const auto& g : a) n += g.size();
  std::vector<std::vector<std::size_t>> overlap(a.size(), std::vector<std::size_t>(b.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (const auto& x : a[i]) overlap[i][j] += b[j].count(x);
  std::size_t best = 0;
  std::vector<char> used(b.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t acc) {
    if (i == a.size()) {
      best = std::max(best, acc);
      return;
    }
    rec(i + 1, acc);  // leave group i unmatched
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      rec(i + 1, acc + overlap[i][j]);
      used[j] = 0;
    }
  };
  rec(0, 0);
  return n - best;
}

/// Seeded random digraph with n vertices named v0..v{n-1}.
inline WeightedDigraph random_digraph(std::mt19937_64& rng, std::size_t n, double p, double wmin = 0.1,
                                      double wmax = 100.0, bool integer_weights = false) {
  WeightedDigraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> weight(wmin, wmax);
  std::uniform_int_distribution<int> iweight(1, 5);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (s != t && coin(rng) < p) g.set_edge(s, t, integer_weights ? iweight(rng) : weight(rng));
  return g;
}

inline wfgroup::Workflow random_workflow(std::mt19937_64& rng, std::size_t n, double p) {
  wfgroup::Workflow wf;
  wf.name = "random";
  for (std::size_t i = 0; i < n; ++i) wf.instances.push_back({"t" + std::to_string(i), "Tool", std::nullopt});
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> dt(0, 8), cns(0, 3), hnd(0, 1), extra(0, 2);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (coin(rng) >= p) continue;  // s == t yields a self-loop connection, which must be tolerated
      const auto count = 1 + extra(rng);
      for (std::size_t k = 0; k < count; ++k) {
        wf.connections.push_back({wf.instances[s].id, wf.instances[t].id, wfgroup::kAllDataTypes[dt(rng)],
                                  wfgroup::kAllConstraints[cns(rng)], wfgroup::kAllHandlings[hnd(rng)]});
      }
    }
  return wf;
}

/// Recursive-descent check of the DOT language subset: graph header, node,
/// edge and attribute statements, `ID = ID`, nested subgraphs, attribute
/// lists. Returns an empty string when `text` parses, else a diagnostic.
class DotChecker {
 public:
  explicit DotChecker(std::string text) : src_(std::move(text)) {}

  std::string check() {
    try {
      tokenize();
      pos_ = 0;
      if (peek_keyword("strict")) ++pos_;
      if (!peek_keyword("graph") && !peek_keyword("digraph")) fail("expected graph or digraph");
      directed_ = peek_keyword("digraph");
      ++pos_;
      if (peek_id()) ++pos_;
      expect("{");
      stmt_list();
      expect("}");
      if (pos_ != toks_.size()) fail("trailing tokens");
    } catch (const std::string& e) {
      return e;
    }
    return {};
  }

 private:
  struct Tok {
    enum Kind { Id, Punct, Arrow } kind;
    std::string text;
  };

  [[noreturn]] void fail(const std::string& m) const {
    throw m + " at token " + std::to_string(pos_);
  }

  void tokenize() {
    std::size_t i = 0;
    while (i < src_.size()) {
      const char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '"') {
        std::string s;
        ++i;
        while (i < src_.size() && src_[i] != '"') {
          if (src_[i] == '\\' && i + 1 < src_.size()) ++i;
          s += src_[i++];
        }
        if (i >= src_.size()) fail("unterminated string");
        ++i;
        toks_.push_back({Tok::Id, s});
      } else if (c == '-' && i + 1 < src_.size() && (src_[i + 1] == '>' || src_[i + 1] == '-')) {
        toks_.push_back({Tok::Arrow, src_.substr(i, 2)});
        i += 2;
      } else if (std::string("{}[];,=").find(c) != std::string::npos) {
        toks_.push_back({Tok::Punct, std::string(1, c)});
        ++i;
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-') {
        std::string s;
        while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_' ||
                                   src_[i] == '.' || src_[i] == '-'))
          s += src_[i++];
        toks_.push_back({Tok::Id, s});
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
  }

  bool at(const char* punct) const {
    return pos_ < toks_.size() && toks_[pos_].kind == Tok::Punct && toks_[pos_].text == punct;
  }
  bool peek_id() const { return pos_ < toks_.size() && toks_[pos_].kind == Tok::Id; }
  bool peek_keyword(const char* k) const { return peek_id() && toks_[pos_].text == k; }
  void expect(const char* punct) {
    if (!at(punct)) fail(std::string("expected '") + punct + "'");
    ++pos_;
  }

  void stmt_list() {
    while (pos_ < toks_.size() && !at("}")) {
      stmt();
      if (at(";")) ++pos_;
    }
  }

  void attr_list() {
    while (at("[")) {
      ++pos_;
      while (!at("]")) {
        if (!peek_id()) fail("expected attribute name");
        ++pos_;
        expect("=");
        if (!peek_id()) fail("expected attribute value");
        ++pos_;
        if (at(",") || at(";")) ++pos_;
      }
      ++pos_;
    }
  }

  void subgraph() {
    if (peek_keyword("subgraph")) {
      ++pos_;
      if (peek_id()) ++pos_;
    }
    expect("{");
    stmt_list();
    expect("}");
  }

  void endpoint() {
    if (peek_keyword("subgraph") || at("{")) {
      subgraph();
    } else if (peek_id()) {
      ++pos_;
    } else {
      fail("expected node id");
    }
  }

  void stmt() {
    if (peek_keyword("graph") || peek_keyword("node") || peek_keyword("edge")) {
      ++pos_;
      if (!at("[")) fail("expected attribute list");
      attr_list();
      return;
    }
    if (peek_id() && pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Tok::Punct &&
        toks_[pos_ + 1].text == "=") {
      pos_ += 2;
      if (!peek_id()) fail("expected value");
      ++pos_;
      return;
    }
    endpoint();
    while (pos_ < toks_.size() && toks_[pos_].kind == Tok::Arrow) {
      if ((toks_[pos_].text == "->") != directed_) fail("edge operator does not match graph kind");
      ++pos_;
      endpoint();
    }
    attr_list();
  }

  std::string src_;
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  bool directed_ = false;
};

}  // namespace oracle
