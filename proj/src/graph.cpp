#include "resil/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace resil {

std::optional<std::size_t> InducedSubgraph::index_of(const IntVector& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::vector<std::size_t>> InducedSubgraph::users_by_control() const {
    std::vector<std::size_t> counts(controls_.size(), 0);
    for (const auto& e : edges_) {
        ++counts[e.control];
    }
    std::vector<std::vector<std::size_t>> users(controls_.size());
    for (std::size_t k = 0; k < users.size(); ++k) {
        users[k].reserve(counts[k]);
    }
    for (std::size_t v = 0; v < vertex_count(); ++v) {
        for (const auto& e : out_edges(v)) {
            users[e.control].push_back(v);
        }
    }
    return users;
}

InducedSubgraph build_induced(std::vector<IntVector> points, const ControlSet& controls) {
    InducedSubgraph g;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    g.vertices_ = std::move(points);
    g.controls_ = controls;
    g.index_.reserve(g.vertices_.size());
    for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
        g.index_.emplace(g.vertices_[i], i);
    }
    g.offsets_.assign(1, 0);
    g.offsets_.reserve(g.vertices_.size() + 1);
    g.min_out_degree_ = g.vertices_.empty() ? 0 : std::numeric_limits<std::size_t>::max();
    IntVector next;
    for (std::size_t v = 0; v < g.vertices_.size(); ++v) {
        for (std::size_t k = 0; k < controls.size(); ++k) {
            next = g.vertices_[v];
            next += controls[k];
            auto it = g.index_.find(next);
            if (it != g.index_.end()) {
                g.edges_.push_back({k, it->second});
            }
        }
        g.offsets_.push_back(g.edges_.size());
        g.min_out_degree_ = std::min(g.min_out_degree_, g.out_degree(v));
    }
    return g;
}

std::optional<InducedSubgraph> peel_to_min_degree_ordered(const std::vector<IntVector>& points,
                                                          const ControlSet& controls,
                                                          std::size_t threshold, const IntVector& x0,
                                                          const std::vector<std::size_t>& order) {
    const InducedSubgraph full = build_induced(points, controls);
    const std::size_t count = full.vertex_count();

    // Predecessor lists: removing y lowers the degree of every x with an edge into y.
    std::vector<std::vector<std::size_t>> preds(count);
    std::vector<std::size_t> degree(count);
    for (std::size_t v = 0; v < count; ++v) {
        degree[v] = full.out_degree(v);
        for (const auto& e : full.out_edges(v)) {
            preds[e.target].push_back(v);
        }
    }

    std::vector<char> alive(count, 1);
    std::deque<std::size_t> queue;
    std::vector<char> queued(count, 0);
    auto visit_order = order;
    if (visit_order.empty()) {
        visit_order.resize(count);
        for (std::size_t v = 0; v < count; ++v) {
            visit_order[v] = v;
        }
    }
    for (auto v : visit_order) {
        if (v < count && !queued[v] && degree[v] < threshold) {
            queued[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const auto y = queue.front();
        queue.pop_front();
        alive[y] = 0;
        for (auto x : preds[y]) {
            if (!alive[x]) {
                continue;
            }
            --degree[x];
            if (!queued[x] && degree[x] < threshold) {
                queued[x] = 1;
                queue.push_back(x);
            }
        }
    }

    std::vector<IntVector> survivors;
    for (std::size_t v = 0; v < count; ++v) {
        if (alive[v]) {
            survivors.push_back(full.vertex(v));
        }
    }
    auto x0_index = full.index_of(x0);
    if (survivors.empty() || !x0_index || !alive[*x0_index]) {
        return std::nullopt;
    }
    return build_induced(std::move(survivors), controls);
}

std::optional<InducedSubgraph> peel_to_min_degree(const std::vector<IntVector>& points,
                                                  const ControlSet& controls, std::size_t threshold,
                                                  const IntVector& x0) {
    return peel_to_min_degree_ordered(points, controls, threshold, x0, {});
}

std::string to_dot(const InducedSubgraph& g, const Labeling* labels) {
    static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
    std::ostringstream out;
    out << "digraph G {\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        out << "  v" << v << " [label=\"(" << g.vertex(v).key() << ")\"];\n";
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        for (const auto& e : g.out_edges(v)) {
            out << "  v" << v << " -> v" << e.target;
            if (labels != nullptr && e.control < labels->size()) {
                const auto d = (*labels)[e.control];
                out << " [label=\"" << d + 1 << "\", color=" << palette[static_cast<std::size_t>(d) % 8] << "]";
            }
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace resil
