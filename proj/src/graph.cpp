#include "mn/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mn {

Structure::Structure(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 0)
        throw std::invalid_argument("node count must be non-negative");
    bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

bool Structure::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::out_of_range("node index out of range");
    if (u == v)
        return false;
    return (row(u)[v >> 6] >> (v & 63)) & 1ULL;
}

void Structure::set_edge(int u, int v, bool present) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::out_of_range("node index out of range");
    if (u == v)
        throw std::invalid_argument("self-loops are not representable");
    const std::uint64_t mu = 1ULL << (v & 63);
    const std::uint64_t mv = 1ULL << (u & 63);
    std::uint64_t* ru = bits_.data() + static_cast<std::size_t>(u) * words_;
    std::uint64_t* rv = bits_.data() + static_cast<std::size_t>(v) * words_;
    if (present) {
        ru[v >> 6] |= mu;
        rv[u >> 6] |= mv;
    } else {
        ru[v >> 6] &= ~mu;
        rv[u >> 6] &= ~mv;
    }
}

std::size_t Structure::edge_count() const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        total += static_cast<std::size_t>(__builtin_popcountll(bits_[i]));
    return total / 2;
}

std::vector<std::pair<int, int>> Structure::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

std::vector<int> Structure::neighbors(int x) const {
    if (x < 0 || x >= n_)
        throw std::out_of_range("node index out of range");
    std::vector<int> out;
    const std::uint64_t* r = row(x);
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
            const int b = __builtin_ctzll(bits);
            out.push_back(w * 64 + b);
            bits &= bits - 1;
        }
    }
    return out;
}

int Structure::degree(int x) const {
    const std::uint64_t* r = row(x);
    int d = 0;
    for (int w = 0; w < words_; ++w)
        d += __builtin_popcountll(r[w]);
    return d;
}

Triplet::Triplet(int x, int y, std::vector<int> z) : x_(x), y_(y), z_(std::move(z)) {
    if (x_ == y_)
        throw std::invalid_argument("triplet requires two distinct variables");
    if (x_ < 0 || y_ < 0)
        throw std::invalid_argument("negative variable index in triplet");
    if (x_ > y_)
        std::swap(x_, y_);
    std::sort(z_.begin(), z_.end());
    for (std::size_t i = 0; i < z_.size(); ++i) {
        if (z_[i] < 0)
            throw std::invalid_argument("negative variable index in conditioning set");
        if (i > 0 && z_[i] == z_[i - 1])
            throw std::invalid_argument("duplicate variable in conditioning set");
        if (z_[i] == x_ || z_[i] == y_)
            throw std::invalid_argument("conditioning set overlaps the tested pair");
    }
}

bool Triplet::operator<(const Triplet& other) const {
    if (x_ != other.x_)
        return x_ < other.x_;
    if (y_ != other.y_)
        return y_ < other.y_;
    return z_ < other.z_;
}

std::size_t Triplet::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::uint64_t>(x_));
    mix(static_cast<std::uint64_t>(y_));
    for (int v : z_)
        mix(static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
}

Structure edge_flip(const Structure& g, int x, int y) {
    if (x == y)
        throw std::invalid_argument("cannot flip a self-loop");
    Structure out = g;
    out.set_edge(x, y, !g.has_edge(x, y));
    return out;
}

std::vector<int> boundary(const Structure& g, int x) { return g.neighbors(x); }

bool vertex_separated(const Structure& g, const Triplet& t) {
    const int n = g.node_count();
    const int words = g.words_per_row();

    // blocked[w] marks nodes in z; visited starts at x. Frontier expansion
    // works word-wise over the adjacency bitsets.
    std::vector<std::uint64_t> blocked(words, 0);
    for (int v : t.z())
        blocked[v >> 6] |= 1ULL << (v & 63);

    std::vector<std::uint64_t> visited(words, 0);
    visited[t.x() >> 6] |= 1ULL << (t.x() & 63);

    std::vector<int> frontier{t.x()};
    const int target_word = t.y() >> 6;
    const std::uint64_t target_mask = 1ULL << (t.y() & 63);

    while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier) {
            const std::uint64_t* r = g.row(u);
            for (int w = 0; w < words; ++w) {
                std::uint64_t fresh = r[w] & ~visited[w] & ~blocked[w];
                if (w == target_word && (r[w] & target_mask))
                    return false; // reached y
                while (fresh) {
                    const int b = __builtin_ctzll(fresh);
                    fresh &= fresh - 1;
                    const int v = w * 64 + b;
                    if (v >= n)
                        break;
                    visited[w] |= 1ULL << b;
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }
    return true;
}

void write_structure(std::ostream& out, const Structure& g) {
    out << g.node_count() << "\n";
    for (const auto& [u, v] : g.edges())
        out << u << " " << v << "\n";
}

Structure read_structure(std::istream& in) {
    int n = -1;
    if (!(in >> n) || n < 0)
        throw std::runtime_error("structure file: missing or invalid node count");
    Structure g(n);
    int u, v;
    while (in >> u >> v) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::runtime_error("structure file: edge endpoint out of range");
        g.set_edge(u, v, true);
    }
    return g;
}

void save_structure(const std::string& path, const Structure& g) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    write_structure(out, g);
}

Structure load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    return read_structure(in);
}

} // namespace mn
