#pragma once

#include "mwtree/matrix.hpp"

#include <string>
#include <vector>

namespace mwtree {

enum class WeightClass {
    PositiveDefinite,
    LowerTriangular,
    UpperTriangular,
    GeneralNonsingular,
};

std::string to_string(WeightClass c);
WeightClass weight_class_from_string(const std::string& name);

struct Edge {
    int u = -1;
    int v = -1;
    Matrix w; // s x s
};

/// A tree on dense vertex ids 0..n-1 with one s x s matrix weight per edge.
/// Construction validates topology (connected, acyclic, n-1 edges) and the
/// declared weight class; instances are immutable afterwards.
class Tree {
public:
    Tree(int block_size, std::vector<Edge> edges, WeightClass cls,
         std::vector<std::string> labels = {});

    int vertex_count() const { return n_; }
    int block_size() const { return s_; }
    WeightClass weight_class() const { return class_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }

    const std::string& label(int v) const;
    int vertex_by_label(const std::string& label) const; // -1 if absent
    const std::vector<std::string>& labels() const { return labels_; }

    /// Ids of edges incident to v.
    const std::vector<int>& incident_edges(int v) const;
    std::vector<int> neighbors(int v) const;
    int degree(int v) const;

    /// Edge id joining u and v, or -1 if they are not adjacent.
    int edge_between(int u, int v) const;

    /// The endpoint of edge e that is not x.
    int opposite(int e, int x) const;

    void require_vertex(int v) const;

private:
    void validate_topology() const;
    void validate_weights() const;

    int n_ = 0;
    int s_ = 0;
    WeightClass class_ = WeightClass::GeneralNonsingular;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> incident_;
};

/// One connected component of T - base, rooted at base's neighbor inside it.
struct Branch {
    int base = -1;
    int root = -1;
    std::vector<int> members; // ascending vertex ids, root included
};

/// All branches at v, ordered by ascending root id. Their member sets
/// partition V - {v}.
std::vector<Branch> branches_at(const Tree& tree, int v);

/// Edge ids of the unique u-w path, in order from u; empty iff u == w.
std::vector<int> path_between(const Tree& tree, int u, int w);

/// Vertices of the minimal subtree containing every vertex in `anchors`.
std::vector<int> spanning_subtree_vertices(const Tree& tree, const std::vector<int>& anchors);

/// Parse the JSON tree document; assigns dense 0-based ids in the order of the
/// "vertices" array and keeps the original labels for reporting.
Tree parse_tree(const std::string& text);

/// Inverse of parse_tree (round-trips exactly).
std::string serialize_tree(const Tree& tree);

Tree load_tree_file(const std::string& path);

} // namespace mwtree
