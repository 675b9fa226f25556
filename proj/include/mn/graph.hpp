#ifndef MN_GRAPH_HPP
#define MN_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mn {

/// Undirected independence structure over nodes 0..n-1. Value type: adjacency
/// is stored as one bitset row per node, so copies are cheap up to a few
/// hundred nodes and hill climbing can clone candidates freely.
class Structure {
  public:
    Structure() : n_(0), words_(0) {}
    explicit Structure(int n);

    int node_count() const { return n_; }

    bool has_edge(int u, int v) const;
    void set_edge(int u, int v, bool present);

    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const; // sorted, u < v

    /// Adjacency set of x in ascending order. For Markov networks this is
    /// the Markov boundary of x.
    std::vector<int> neighbors(int x) const;
    int degree(int x) const;

    bool operator==(const Structure& other) const = default;

    const std::uint64_t* row(int u) const { return bits_.data() + static_cast<std::size_t>(u) * words_; }
    int words_per_row() const { return words_; }

  private:
    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

/// Conditional independence query (x ; y | z) in canonical form:
/// x < y, z sorted ascending, z disjoint from {x, y}.
class Triplet {
  public:
    Triplet(int x, int y, std::vector<int> z);

    int x() const { return x_; }
    int y() const { return y_; }
    const std::vector<int>& z() const { return z_; }

    /// Total number of variables involved, 2 + |z|.
    int span() const { return 2 + static_cast<int>(z_.size()); }

    bool operator==(const Triplet& other) const = default;
    bool operator<(const Triplet& other) const;

    std::size_t hash() const;

  private:
    int x_;
    int y_;
    std::vector<int> z_;
};

struct TripletHash {
    std::size_t operator()(const Triplet& t) const { return t.hash(); }
};

/// Copy with the edge (x, y) toggled. Involution: flipping twice restores
/// the input.
Structure edge_flip(const Structure& g, int x, int y);

/// Markov boundary of x read off the graph: its adjacency set.
std::vector<int> boundary(const Structure& g, int x);

/// True iff z intercepts every path between t.x and t.y, i.e. t.y is not
/// reachable from t.x in the subgraph with all edges incident to z removed.
/// The graph is never mutated; z acts as a node mask during the traversal.
bool vertex_separated(const Structure& g, const Triplet& t);

/// Structure file format: first line n, then one "u v" edge per line,
/// 0-indexed with u < v, in lexicographic order. Round-trips exactly.
void write_structure(std::ostream& out, const Structure& g);
Structure read_structure(std::istream& in);
void save_structure(const std::string& path, const Structure& g);
Structure load_structure(const std::string& path);

} // namespace mn

#endif
