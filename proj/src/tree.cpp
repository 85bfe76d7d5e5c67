#include "mwtree/tree.hpp"

#include "mwtree/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace mwtree {

namespace {

constexpr double kSymTol = 1e-10;  // max abs asymmetry allowed for PD weights
constexpr double kSingTol = 1e-12; // |det| gate for general nonsingular weights

std::string edge_name(const Tree& t, int e) {
    const Edge& ed = t.edge(e);
    return "edge " + std::to_string(e) + " (" + t.label(ed.u) + "-" + t.label(ed.v) + ")";
}

} // namespace

std::string to_string(WeightClass c) {
    switch (c) {
        case WeightClass::PositiveDefinite: return "pd";
        case WeightClass::LowerTriangular: return "lower";
        case WeightClass::UpperTriangular: return "upper";
        case WeightClass::GeneralNonsingular: return "nonsingular";
    }
    return "?";
}

WeightClass weight_class_from_string(const std::string& name) {
    if (name == "pd") return WeightClass::PositiveDefinite;
    if (name == "lower") return WeightClass::LowerTriangular;
    if (name == "upper") return WeightClass::UpperTriangular;
    if (name == "nonsingular") return WeightClass::GeneralNonsingular;
    throw SchemaError("unknown weight_class \"" + name + "\"");
}

Tree::Tree(int block_size, std::vector<Edge> edges, WeightClass cls,
           std::vector<std::string> labels)
    : n_(static_cast<int>(edges.size()) + 1),
      s_(block_size),
      class_(cls),
      edges_(std::move(edges)),
      labels_(std::move(labels)) {
    if (s_ < 1) throw ValidationError("block size must be at least 1");
    if (n_ < 2) throw ValidationError("a tree needs at least 2 vertices (got " +
                                      std::to_string(n_ - 1) + " edges)");
    if (labels_.empty()) {
        labels_.reserve(n_);
        for (int v = 0; v < n_; ++v) labels_.push_back(std::to_string(v));
    }
    if (static_cast<int>(labels_.size()) != n_)
        throw ValidationError("label count does not match vertex count");

    incident_.assign(n_, {});
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u < 0 || ed.u >= n_ || ed.v < 0 || ed.v >= n_)
            throw ValidationError("edge " + std::to_string(e) + " references a vertex outside 0.." +
                                  std::to_string(n_ - 1));
        if (ed.u == ed.v)
            throw ValidationError("edge " + std::to_string(e) + " is a self-loop at " + labels_[ed.u]);
        incident_[ed.u].push_back(e);
        incident_[ed.v].push_back(e);
    }
    validate_topology();
    validate_weights();
}

void Tree::validate_topology() const {
    // n-1 edges are given; connectivity then rules out cycles.
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (int e : incident_[x]) {
            const int y = opposite(e, x);
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                q.push(y);
            }
        }
    }
    if (reached != n_)
        throw ValidationError("edge set is not connected (reached " + std::to_string(reached) +
                              " of " + std::to_string(n_) + " vertices)");
}

void Tree::validate_weights() const {
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const Matrix& w = edges_[e].w;
        if (w.rows() != s_ || w.cols() != s_)
            throw ValidationError(edge_name(*this, e) + ": weight is " + std::to_string(w.rows()) +
                                  "x" + std::to_string(w.cols()) + ", expected " + std::to_string(s_) +
                                  "x" + std::to_string(s_));
        if (!w.all_finite())
            throw ValidationError(edge_name(*this, e) + ": weight has a non-finite entry");

        switch (class_) {
            case WeightClass::PositiveDefinite: {
                if (w.asymmetry() > kSymTol)
                    throw ValidationError(edge_name(*this, e) + ": weight asymmetry " +
                                          std::to_string(w.asymmetry()) + " exceeds " +
                                          std::to_string(kSymTol));
                const Spectrum sp = sym_eig(w);
                // strict positivity, with a scale-relative floor against
                // eigensolver noise on singular input
                if (sp.eigenvalues.front() <= kSingTol * std::max(1.0, w.max_abs()))
                    throw ValidationError(edge_name(*this, e) + ": smallest eigenvalue " +
                                          std::to_string(sp.eigenvalues.front()) + " is not positive");
                break;
            }
            case WeightClass::LowerTriangular:
            case WeightClass::UpperTriangular: {
                const bool lower = class_ == WeightClass::LowerTriangular;
                for (int i = 0; i < s_; ++i)
                    for (int j = 0; j < s_; ++j) {
                        if (i == j) continue;
                        const bool off_triangle = lower ? (j > i) : (j < i);
                        if (off_triangle && w(i, j) != 0.0)
                            throw ValidationError(edge_name(*this, e) + ": entry (" + std::to_string(i) +
                                                  "," + std::to_string(j) + ") must be exactly zero");
                    }
                for (int i = 0; i < s_; ++i)
                    if (w(i, i) <= 0.0)
                        throw ValidationError(edge_name(*this, e) + ": diagonal entry " +
                                              std::to_string(i) + " is not positive");
                break;
            }
            case WeightClass::GeneralNonsingular: {
                double det = 0.0;
                try {
                    det = lu_det(w);
                } catch (const SingularMatrix&) {
                    det = 0.0;
                }
                if (std::fabs(det) <= kSingTol)
                    throw ValidationError(edge_name(*this, e) + ": |det| = " + std::to_string(std::fabs(det)) +
                                          " is below the nonsingularity gate");
                break;
            }
        }
    }
}

const std::string& Tree::label(int v) const {
    require_vertex(v);
    return labels_[v];
}

int Tree::vertex_by_label(const std::string& label) const {
    for (int v = 0; v < n_; ++v)
        if (labels_[v] == label) return v;
    return -1;
}

const std::vector<int>& Tree::incident_edges(int v) const {
    require_vertex(v);
    return incident_[v];
}

std::vector<int> Tree::neighbors(int v) const {
    std::vector<int> out;
    for (int e : incident_edges(v)) out.push_back(opposite(e, v));
    std::sort(out.begin(), out.end());
    return out;
}

int Tree::degree(int v) const { return static_cast<int>(incident_edges(v).size()); }

int Tree::edge_between(int u, int v) const {
    require_vertex(u);
    require_vertex(v);
    for (int e : incident_[u])
        if (opposite(e, u) == v) return e;
    return -1;
}

int Tree::opposite(int e, int x) const {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    return ed.u == x ? ed.v : ed.u;
}

void Tree::require_vertex(int v) const {
    if (v < 0 || v >= n_) throw UnknownVertex(v);
}

std::vector<Branch> branches_at(const Tree& tree, int v) {
    tree.require_vertex(v);
    std::vector<Branch> out;
    for (int r : tree.neighbors(v)) {
        Branch b;
        b.base = v;
        b.root = r;
        std::vector<char> seen(tree.vertex_count(), 0);
        seen[v] = 1;
        seen[r] = 1;
        std::queue<int> q;
        q.push(r);
        b.members.push_back(r);
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            for (int e : tree.incident_edges(x)) {
                const int y = tree.opposite(e, x);
                if (!seen[y]) {
                    seen[y] = 1;
                    b.members.push_back(y);
                    q.push(y);
                }
            }
        }
        std::sort(b.members.begin(), b.members.end());
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<int> path_between(const Tree& tree, int u, int w) {
    tree.require_vertex(u);
    tree.require_vertex(w);
    if (u == w) return {};
    std::vector<int> parent_edge(tree.vertex_count(), -1);
    std::vector<char> seen(tree.vertex_count(), 0);
    std::queue<int> q;
    q.push(u);
    seen[u] = 1;
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        if (x == w) break;
        for (int e : tree.incident_edges(x)) {
            const int y = tree.opposite(e, x);
            if (!seen[y]) {
                seen[y] = 1;
                parent_edge[y] = e;
                q.push(y);
            }
        }
    }
    std::vector<int> path;
    int x = w;
    while (x != u) {
        const int e = parent_edge[x];
        path.push_back(e);
        x = tree.opposite(e, x);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> spanning_subtree_vertices(const Tree& tree, const std::vector<int>& anchors) {
    if (anchors.empty()) return {};
    std::vector<char> in(tree.vertex_count(), 0);
    in[anchors.front()] = 1;
    for (int a : anchors) {
        in[a] = 1;
        int x = anchors.front();
        for (int e : path_between(tree, anchors.front(), a)) {
            x = tree.opposite(e, x);
            in[x] = 1;
        }
    }
    std::vector<int> out;
    for (int v = 0; v < tree.vertex_count(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

Tree parse_tree(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("top level must be an object");
    for (const char* key : {"s", "weight_class", "vertices", "edges"})
        if (!doc.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");

    if (!doc["s"].is_number_integer()) throw SchemaError("\"s\" must be an integer");
    const int s = doc["s"].get<int>();
    if (!doc["weight_class"].is_string()) throw SchemaError("\"weight_class\" must be a string");
    const WeightClass cls = weight_class_from_string(doc["weight_class"].get<std::string>());

    if (!doc["vertices"].is_array()) throw SchemaError("\"vertices\" must be an array");
    std::vector<std::string> labels;
    for (const auto& item : doc["vertices"]) {
        if (!item.is_string()) throw SchemaError("vertex labels must be strings");
        labels.push_back(item.get<std::string>());
    }
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j])
                throw SchemaError("duplicate vertex label \"" + labels[i] + "\"");

    auto id_of = [&](const std::string& lab, size_t edge_idx) {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == lab) return static_cast<int>(i);
        throw SchemaError("edge " + std::to_string(edge_idx) + " references unknown vertex \"" + lab + "\"");
    };

    if (!doc["edges"].is_array()) throw SchemaError("\"edges\" must be an array");
    std::vector<Edge> edges;
    size_t idx = 0;
    for (const auto& je : doc["edges"]) {
        if (!je.is_object() || !je.contains("u") || !je.contains("v") || !je.contains("w"))
            throw SchemaError("edge " + std::to_string(idx) + " must be an object with u, v, w");
        if (!je["u"].is_string() || !je["v"].is_string())
            throw SchemaError("edge " + std::to_string(idx) + " endpoints must be label strings");
        Edge e;
        e.u = id_of(je["u"].get<std::string>(), idx);
        e.v = id_of(je["v"].get<std::string>(), idx);
        const auto& w = je["w"];
        if (!w.is_array() || static_cast<int>(w.size()) != s)
            throw SchemaError("edge " + std::to_string(idx) + ": weight must have " + std::to_string(s) + " rows");
        e.w = Matrix(s, s);
        for (int i = 0; i < s; ++i) {
            const auto& row = w[i];
            if (!row.is_array() || static_cast<int>(row.size()) != s)
                throw SchemaError("edge " + std::to_string(idx) + ": weight row " + std::to_string(i) +
                                  " must have " + std::to_string(s) + " entries");
            for (int j = 0; j < s; ++j) {
                if (!row[j].is_number())
                    throw SchemaError("edge " + std::to_string(idx) + ": weight entry (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") is not a number");
                e.w(i, j) = row[j].get<double>();
            }
        }
        edges.push_back(std::move(e));
        ++idx;
    }

    return Tree(s, std::move(edges), cls, std::move(labels));
}

std::string serialize_tree(const Tree& tree) {
    nlohmann::json doc;
    doc["s"] = tree.block_size();
    doc["weight_class"] = to_string(tree.weight_class());
    doc["vertices"] = tree.labels();
    doc["edges"] = nlohmann::json::array();
    for (const Edge& e : tree.edges()) {
        nlohmann::json je;
        je["u"] = tree.label(e.u);
        je["v"] = tree.label(e.v);
        auto rows = nlohmann::json::array();
        for (int i = 0; i < tree.block_size(); ++i) {
            auto row = nlohmann::json::array();
            for (int j = 0; j < tree.block_size(); ++j) row.push_back(e.w(i, j));
            rows.push_back(row);
        }
        je["w"] = rows;
        doc["edges"].push_back(je);
    }
    return doc.dump(2) + "\n";
}

Tree load_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tree(ss.str());
}

} // namespace mwtree
