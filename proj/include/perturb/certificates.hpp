#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "perturb/graph.hpp"

namespace perturb {

// Cyclic vertex sequence; vertices[i] ~ vertices[i+1] and back to the start.
struct CycleCert {
    std::vector<Vertex> vertices;

    std::size_t length() const { return vertices.size(); }

    bool validates(const Graph& g) const {
        const std::size_t len = vertices.size();
        if (len < 3 || len > static_cast<std::size_t>(g.order())) return false;
        std::vector<char> seen(g.order(), 0);
        for (std::size_t i = 0; i < len; ++i) {
            const Vertex v = vertices[i];
            if (v < 0 || v >= g.order() || seen[v]) return false;
            seen[v] = 1;
            if (!g.has_edge(v, vertices[(i + 1) % len])) return false;
        }
        return true;
    }
};

// Partner map; mate[v] == -1 for unmatched v.
class MatchingCert {
public:
    MatchingCert() = default;
    explicit MatchingCert(int n) : mate_(n, -1) {}

    int order() const { return static_cast<int>(mate_.size()); }
    std::size_t size() const { return size_; }

    bool matched(Vertex v) const { return mate_[v] >= 0; }
    Vertex partner(Vertex v) const { return mate_[v]; }

    void match(Vertex a, Vertex b) {
        if (a == b || matched(a) || matched(b)) throw std::logic_error("MatchingCert: vertices not free");
        mate_[a] = b;
        mate_[b] = a;
        ++size_;
    }

    void unmatch(Vertex a) {
        const Vertex b = mate_[a];
        if (b < 0) throw std::logic_error("MatchingCert: vertex not matched");
        mate_[a] = mate_[b] = -1;
        --size_;
    }

    std::vector<Edge> pairs() const {
        std::vector<Edge> out;
        for (Vertex v = 0; v < order(); ++v)
            if (mate_[v] > v) out.emplace_back(v, mate_[v]);
        return out;
    }

    std::vector<Vertex> unmatched() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < order(); ++v)
            if (mate_[v] < 0) out.push_back(v);
        return out;
    }

    bool validates(const Graph& g) const {
        if (order() != g.order()) return false;
        std::size_t count = 0;
        for (Vertex v = 0; v < order(); ++v) {
            const Vertex w = mate_[v];
            if (w < 0) continue;
            if (w >= order() || w == v || mate_[w] != v || !g.has_edge(v, w)) return false;
            ++count;
        }
        return count == 2 * size_;
    }

private:
    std::vector<Vertex> mate_;
    std::size_t size_ = 0;
};

}  // namespace perturb
