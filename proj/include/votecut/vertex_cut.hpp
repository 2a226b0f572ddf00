#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace votecut {

/// Unweighted digraph over named vertices. No self-loops.
class DiGraph {
 public:
  DiGraph() = default;
  explicit DiGraph(std::vector<std::string> vertices);
  explicit DiGraph(int n);  // vertices named v0..v{n-1}

  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const {
    return adj_matrix_[static_cast<std::size_t>(u) * names_.size() +
                       static_cast<std::size_t>(v)] != 0;
  }
  const std::vector<int>& out(int u) const { return out_[static_cast<std::size_t>(u)]; }
  std::size_t edge_count() const noexcept { return edges_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> out_;
  std::vector<char> adj_matrix_;
  std::size_t edges_ = 0;
};

/// `vertices: a, b, c` then one `u v` line per edge.
DiGraph parse_digraph(std::string_view text);
std::string serialize_digraph(const DiGraph& g);

/// Reachability from `from` avoiding vertices flagged in `removed`.
std::vector<char> reachable_from(const DiGraph& g, int from,
                                 const std::vector<char>& removed);

struct VertexCut {
  int size = 0;
  std::vector<int> vertices;  // sorted
};

/// Minimum internal vertex set separating s from t (vertex-splitting max
/// flow). Throws InvalidArgument on s == t or a direct s -> t edge.
VertexCut min_st_vertex_cut(const DiGraph& g, int s, int t);

struct CutDecision {
  bool decision = false;
  std::vector<int> witness;  // sorted; meaningful when decision is true
};

/// Removing `cut` kills every s -> t path and leaves some t -> s path.
bool is_path_preserving_cut(const DiGraph& g, int s, int t,
                            const std::vector<int>& cut);

CutDecision ppvc_decide(const DiGraph& g, int s, int t, int k);

/// |cut \ labeled| <= x and |cut & labeled| >= y.
CutDecision mippvc_decide(const DiGraph& g, int s, int t,
                          const std::vector<int>& labeled, int x, int y);

/// Whole colour classes only; the classes of s and t are never cut.
/// `min_size` adds a lower bound on |cut| (0 for the plain problem).
CutDecision cppvc_decide(const DiGraph& g, int s, int t,
                         const std::vector<int>& colour, int k, int min_size = 0);

/// One query for any of the cut problems.
struct CutQuery {
  enum class Problem { min_cut, ppvc, mippvc, cppvc };
  Problem problem = Problem::ppvc;
  int s = 0;
  int t = 0;
  int k = 0;
  std::vector<int> labeled;  // mippvc
  int x = 0;
  int y = 0;
  std::vector<int> colour;  // cppvc
  int min_size = 0;
};

CutDecision decide(const DiGraph& g, const CutQuery& q);

}  // namespace votecut
