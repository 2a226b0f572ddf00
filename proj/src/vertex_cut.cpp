#include "votecut/vertex_cut.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "combinations.hpp"
#include "text_util.hpp"
#include "votecut/election.hpp"
#include "votecut/error.hpp"
#include "votecut/guard.hpp"

namespace votecut {

DiGraph::DiGraph(std::vector<std::string> vertices) : names_(std::move(vertices)) {
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
    throw InvalidArgument("duplicate vertex '" + *dup + "'");
  for (const auto& n : names_)
    if (!is_valid_candidate_name(n)) throw InvalidArgument("invalid vertex name '" + n + "'");
  out_.resize(names_.size());
  adj_matrix_.assign(names_.size() * names_.size(), 0);
}

DiGraph::DiGraph(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  *this = DiGraph(std::move(names));
}

std::optional<int> DiGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int DiGraph::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InvalidArgument("unknown vertex '" + std::string(name) + "'");
}

void DiGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= size() || v >= size())
    throw InvalidArgument("edge endpoint out of range");
  if (u == v) throw InvalidArgument("self-loop on '" + name(u) + "'");
  auto& slot = adj_matrix_[static_cast<std::size_t>(u) * names_.size() +
                           static_cast<std::size_t>(v)];
  if (slot) return;
  slot = 1;
  out_[static_cast<std::size_t>(u)].push_back(v);
  ++edges_;
}

DiGraph parse_digraph(std::string_view text) {
  const auto lines = text::content_lines(text);
  if (lines.empty()) throw ParseError("empty graph file");
  const auto& head = lines.front();
  if (!text::starts_with_key(head.text, "vertices"))
    throw ParseError("expected 'vertices:' header", head.number);
  std::vector<std::string> names;
  auto body = text::trim(head.text.substr(head.text.find(':') + 1));
  if (!body.empty())
    for (auto tok : text::split(body, ',')) names.emplace_back(tok);
  DiGraph g;
  try {
    g = DiGraph(std::move(names));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), head.number);
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto toks = text::split_ws(lines[i].text);
    if (toks.size() != 2) throw ParseError("expected 'u v'", lines[i].number);
    auto u = g.find(toks[0]);
    auto v = g.find(toks[1]);
    if (!u) throw ParseError("unknown vertex '" + std::string(toks[0]) + "'", lines[i].number);
    if (!v) throw ParseError("unknown vertex '" + std::string(toks[1]) + "'", lines[i].number);
    if (*u == *v) throw ParseError("self-loop", lines[i].number);
    g.add_edge(*u, *v);
  }
  return g;
}

std::string serialize_digraph(const DiGraph& g) {
  std::string out = "vertices:";
  for (int v = 0; v < g.size(); ++v) {
    out += v == 0 ? " " : ", ";
    out += g.name(v);
  }
  out += '\n';
  for (int u = 0; u < g.size(); ++u)
    for (int v = 0; v < g.size(); ++v)
      if (g.has_edge(u, v)) out += g.name(u) + " " + g.name(v) + "\n";
  return out;
}

std::vector<char> reachable_from(const DiGraph& g, int from,
                                 const std::vector<char>& removed) {
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  if (!removed.empty() && removed[static_cast<std::size_t>(from)]) return seen;
  std::vector<int> stack{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : g.out(u)) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      if (!removed.empty() && removed[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      stack.push_back(v);
    }
  }
  return seen;
}

namespace {

void check_terminals(const DiGraph& g, int s, int t) {
  if (s < 0 || t < 0 || s >= g.size() || t >= g.size())
    throw InvalidArgument("terminal out of range");
  if (s == t) throw InvalidArgument("s and t must differ");
}

std::vector<char> reaching(const DiGraph& g, int to) {
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::vector<int> stack{to};
  seen[static_cast<std::size_t>(to)] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < g.size(); ++u) {
      if (!seen[static_cast<std::size_t>(u)] && g.has_edge(u, v)) {
        seen[static_cast<std::size_t>(u)] = 1;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

// Vertices other than s, t lying on some s -> t walk.
std::vector<int> st_relevant(const DiGraph& g, int s, int t) {
  const auto fwd = reachable_from(g, s, {});
  const auto bwd = reaching(g, t);
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v)
    if (v != s && v != t && fwd[static_cast<std::size_t>(v)] && bwd[static_cast<std::size_t>(v)])
      out.push_back(v);
  return out;
}

bool check_cut(const DiGraph& g, int s, int t, const std::vector<int>& cut,
               std::vector<char>& removed) {
  std::fill(removed.begin(), removed.end(), 0);
  for (int v : cut) removed[static_cast<std::size_t>(v)] = 1;
  if (!reachable_from(g, t, removed)[static_cast<std::size_t>(s)]) return false;
  return !reachable_from(g, s, removed)[static_cast<std::size_t>(t)];
}

}  // namespace

bool is_path_preserving_cut(const DiGraph& g, int s, int t,
                            const std::vector<int>& cut) {
  check_terminals(g, s, t);
  for (int v : cut)
    if (v == s || v == t) return false;
  std::vector<char> removed(static_cast<std::size_t>(g.size()), 0);
  return check_cut(g, s, t, cut, removed);
}

VertexCut min_st_vertex_cut(const DiGraph& g, int s, int t) {
  check_terminals(g, s, t);
  if (g.has_edge(s, t))
    throw InvalidArgument("direct edge " + g.name(s) + " -> " + g.name(t) +
                          " admits no vertex cut");
  const int n = g.size();
  const int nodes = 2 * n;
  const int inf = n + 1;
  // in(v) = 2v, out(v) = 2v + 1
  std::vector<int> cap(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes), 0);
  auto at = [&](int a, int b) -> int& {
    return cap[static_cast<std::size_t>(a) * static_cast<std::size_t>(nodes) +
               static_cast<std::size_t>(b)];
  };
  for (int v = 0; v < n; ++v) at(2 * v, 2 * v + 1) = (v == s || v == t) ? inf : 1;
  for (int u = 0; u < n; ++u)
    for (int v : g.out(u)) at(2 * u + 1, 2 * v) = inf;

  const int source = 2 * s + 1;
  const int sink = 2 * t;
  int flow = 0;
  std::vector<int> parent(static_cast<std::size_t>(nodes));
  while (true) {
    std::fill(parent.begin(), parent.end(), -1);
    parent[static_cast<std::size_t>(source)] = source;
    std::deque<int> q{source};
    while (!q.empty() && parent[static_cast<std::size_t>(sink)] == -1) {
      const int a = q.front();
      q.pop_front();
      for (int b = 0; b < nodes; ++b) {
        if (parent[static_cast<std::size_t>(b)] == -1 && at(a, b) > 0) {
          parent[static_cast<std::size_t>(b)] = a;
          q.push_back(b);
        }
      }
    }
    if (parent[static_cast<std::size_t>(sink)] == -1) break;
    int push = inf;
    for (int b = sink; b != source; b = parent[static_cast<std::size_t>(b)])
      push = std::min(push, at(parent[static_cast<std::size_t>(b)], b));
    for (int b = sink; b != source; b = parent[static_cast<std::size_t>(b)]) {
      at(parent[static_cast<std::size_t>(b)], b) -= push;
      at(b, parent[static_cast<std::size_t>(b)]) += push;
    }
    flow += push;
  }

  // residual reachability from the source
  std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
  std::vector<int> stack{source};
  seen[static_cast<std::size_t>(source)] = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < nodes; ++b) {
      if (!seen[static_cast<std::size_t>(b)] && at(a, b) > 0) {
        seen[static_cast<std::size_t>(b)] = 1;
        stack.push_back(b);
      }
    }
  }
  VertexCut out;
  for (int v = 0; v < n; ++v)
    if (seen[static_cast<std::size_t>(2 * v)] && !seen[static_cast<std::size_t>(2 * v + 1)])
      out.vertices.push_back(v);
  out.size = flow;
  return out;
}

CutDecision ppvc_decide(const DiGraph& g, int s, int t, int k) {
  return mippvc_decide(g, s, t, {}, k, 0);
}

CutDecision mippvc_decide(const DiGraph& g, int s, int t,
                          const std::vector<int>& labeled, int x, int y) {
  check_terminals(g, s, t);
  CutDecision out;
  std::vector<char> is_label(static_cast<std::size_t>(g.size()), 0);
  for (int v : labeled) {
    if (v == s || v == t) throw InvalidArgument("labelled vertices must exclude s and t");
    if (v < 0 || v >= g.size()) throw InvalidArgument("labelled vertex out of range");
    is_label[static_cast<std::size_t>(v)] = 1;
  }
  const int nl = static_cast<int>(std::count(is_label.begin(), is_label.end(), 1));
  y = std::max(y, 0);
  if (x < 0 || y > nl || g.has_edge(s, t)) return out;
  if (!reachable_from(g, t, {})[static_cast<std::size_t>(s)]) return out;

  // unlabelled vertices off every s -> t walk never help the cut
  std::vector<int> pool;
  const auto relevant = st_relevant(g, s, t);
  std::vector<char> keep(static_cast<std::size_t>(g.size()), 0);
  for (int v : relevant) keep[static_cast<std::size_t>(v)] = 1;
  for (int v = 0; v < g.size(); ++v)
    if (is_label[static_cast<std::size_t>(v)] || keep[static_cast<std::size_t>(v)]) pool.push_back(v);

  const int np = static_cast<int>(pool.size());
  enforce_guard(subsets_up_to(np, std::min(np, x + nl)), false);

  std::vector<char> removed(static_cast<std::size_t>(g.size()), 0);
  std::vector<int> cut;
  detail::for_each_subset(np, y, x + nl, [&](const std::vector<int>& pick) {
    int inl = 0;
    for (int i : pick) inl += is_label[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])];
    const int outl = static_cast<int>(pick.size()) - inl;
    if (outl > x || inl < y) return false;
    cut.clear();
    for (int i : pick) cut.push_back(pool[static_cast<std::size_t>(i)]);
    if (!check_cut(g, s, t, cut, removed)) return false;
    out.decision = true;
    out.witness = cut;
    return true;
  });
  return out;
}

CutDecision cppvc_decide(const DiGraph& g, int s, int t,
                         const std::vector<int>& colour, int k, int min_size) {
  check_terminals(g, s, t);
  if (static_cast<int>(colour.size()) != g.size())
    throw InvalidArgument("colouring must cover every vertex");
  CutDecision out;
  if (g.has_edge(s, t)) return out;
  if (!reachable_from(g, t, {})[static_cast<std::size_t>(s)]) return out;

  const int cs = colour[static_cast<std::size_t>(s)];
  const int ct = colour[static_cast<std::size_t>(t)];
  std::map<int, std::vector<int>> classes;
  for (int v = 0; v < g.size(); ++v) {
    const int c = colour[static_cast<std::size_t>(v)];
    if (c != cs && c != ct) classes[c].push_back(v);
  }
  std::vector<std::vector<int>> cls;
  for (auto& [c, members] : classes) cls.push_back(std::move(members));
  const int nc = static_cast<int>(cls.size());
  enforce_guard(subsets_up_to(nc, nc), false);

  std::vector<char> removed(static_cast<std::size_t>(g.size()), 0);
  std::vector<int> cut;
  detail::for_each_subset(nc, 0, nc, [&](const std::vector<int>& pick) {
    cut.clear();
    for (int i : pick) {
      const auto& m = cls[static_cast<std::size_t>(i)];
      cut.insert(cut.end(), m.begin(), m.end());
    }
    const int size = static_cast<int>(cut.size());
    if (size > k || size < min_size) return false;
    std::sort(cut.begin(), cut.end());
    if (!check_cut(g, s, t, cut, removed)) return false;
    out.decision = true;
    out.witness = cut;
    return true;
  });
  return out;
}

CutDecision decide(const DiGraph& g, const CutQuery& q) {
  switch (q.problem) {
    case CutQuery::Problem::min_cut: {
      auto c = min_st_vertex_cut(g, q.s, q.t);
      return {c.size <= q.k, c.vertices};
    }
    case CutQuery::Problem::ppvc:
      return ppvc_decide(g, q.s, q.t, q.k);
    case CutQuery::Problem::mippvc:
      return mippvc_decide(g, q.s, q.t, q.labeled, q.x, q.y);
    case CutQuery::Problem::cppvc:
      return cppvc_decide(g, q.s, q.t, q.colour, q.k, q.min_size);
  }
  return {};
}

}  // namespace votecut
