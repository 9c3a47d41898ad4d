#include "hyten/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hyten/combinatorics.hpp"

namespace hyten {

Hypergraph::Hypergraph(int n, std::vector<std::vector<int>> edges, WeightScheme scheme,
                       std::vector<double> custom_weights, std::vector<std::int64_t> id_map)
    : n_(n), scheme_(scheme), edges_(std::move(edges)), custom_weights_(std::move(custom_weights)),
      id_map_(std::move(id_map)) {
    if (n_ < 0) throw PreconditionError("hypergraph: negative vertex count");
    int max_size = 0;
    for (const auto& e : edges_) {
        if (e.empty()) throw PreconditionError("hypergraph: empty edge");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n_) throw PreconditionError("hypergraph: vertex id out of range");
            if (i > 0 && e[i] <= e[i - 1])
                throw PreconditionError("hypergraph: edge ids must be strictly increasing");
        }
        max_size = std::max(max_size, static_cast<int>(e.size()));
    }
    rank_ = std::max(2, max_size);
    if (scheme_ == WeightScheme::custom) {
        if (custom_weights_.size() != edges_.size())
            throw PreconditionError("hypergraph: custom weights must match edge count");
        for (double w : custom_weights_)
            if (!(w > 0.0) || !std::isfinite(w))
                throw PreconditionError("hypergraph: weights must be positive and finite");
    }
    if (id_map_.empty()) {
        id_map_.resize(n_);
        for (int v = 0; v < n_; ++v) id_map_[v] = v;
    } else if (static_cast<int>(id_map_.size()) != n_) {
        throw PreconditionError("hypergraph: id map size mismatch");
    }
    vertex_index_.assign(n_, {});
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
        for (int v : edges_[e]) vertex_index_[v].push_back(e);

    banerjee_by_size_.assign(rank_ + 1, 0.0);
    std::vector<char> present(rank_ + 1, 0);
    for (const auto& e : edges_) present[e.size()] = 1;
    for (int s = 1; s <= rank_; ++s) {
        if (!present[s]) continue;
        namespace mp = boost::multiprecision;
        mp::cpp_rational w(s, blowup_count(s, rank_));
        double wd = w.convert_to<double>();
        if (!(wd > 0.0) || !std::isfinite(wd))
            throw NumericError("banerjee weight underflows double for |e|=" + std::to_string(s) +
                               ", r=" + std::to_string(rank_));
        banerjee_by_size_[s] = wd;
    }
}

double Hypergraph::weight(int e) const {
    switch (scheme_) {
        case WeightScheme::unit: return 1.0;
        case WeightScheme::custom: return custom_weights_[e];
        case WeightScheme::banerjee: return banerjee_by_size_[edges_[e].size()];
    }
    return 1.0;
}

double edge_weight(const Hypergraph& h, int e, WeightScheme scheme) {
    if (scheme == h.scheme()) return h.weight(e);
    if (scheme == WeightScheme::custom)
        throw PreconditionError("edge_weight: no custom weights stored");
    if (scheme == WeightScheme::unit) return 1.0;
    namespace mp = boost::multiprecision;
    int s = static_cast<int>(h.edge(e).size());
    mp::cpp_rational w(s, blowup_count(s, h.rank()));
    return w.convert_to<double>();
}

Hypergraph reweighted(const Hypergraph& h, WeightScheme scheme, std::vector<double> custom_weights) {
    return Hypergraph(h.vertex_count(), h.edges(), scheme, std::move(custom_weights), h.id_map());
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;  // blank
}

}  // namespace

Hypergraph parse_hypergraph(std::istream& in) {
    std::vector<std::vector<std::int64_t>> raw_edges;
    std::string line;
    int lineno = 0;
    std::int64_t max_id = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::vector<std::int64_t> ids;
        std::string tok;
        while (ls >> tok) {
            std::int64_t id = 0;
            std::size_t pos = 0;
            try {
                id = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                throw ParseError("malformed vertex id '" + tok + "'", lineno);
            }
            if (pos != tok.size()) throw ParseError("malformed vertex id '" + tok + "'", lineno);
            if (id < 0) throw ParseError("vertex ids must be non-negative", lineno);
            ids.push_back(id);
            max_id = std::max(max_id, id);
        }
        if (ids.empty()) throw ParseError("no vertex ids on line", lineno);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        raw_edges.push_back(std::move(ids));
    }
    if (raw_edges.empty()) throw ParseError("empty input: no hyperedges");

    std::map<std::int64_t, int> seen;  // ordered: dense ids follow original id order
    for (const auto& e : raw_edges)
        for (std::int64_t id : e) seen.emplace(id, 0);
    bool dense = max_id == static_cast<std::int64_t>(seen.size()) - 1;
    std::vector<std::int64_t> id_map;
    int next = 0;
    for (auto& [orig, dense_id] : seen) {
        dense_id = dense ? static_cast<int>(orig) : next++;
        if (dense) next = std::max(next, dense_id + 1);
    }
    id_map.resize(seen.size());
    for (const auto& [orig, dense_id] : seen) id_map[dense_id] = orig;

    std::vector<std::vector<int>> edges;
    edges.reserve(raw_edges.size());
    for (const auto& e : raw_edges) {
        std::vector<int> mapped;
        mapped.reserve(e.size());
        for (std::int64_t id : e) mapped.push_back(seen[id]);
        std::sort(mapped.begin(), mapped.end());
        edges.push_back(std::move(mapped));
    }
    return Hypergraph(static_cast<int>(seen.size()), std::move(edges), WeightScheme::banerjee, {},
                      std::move(id_map));
}

Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    return parse_hypergraph(in);
}

std::string serialize(const Hypergraph& h) {
    std::ostringstream out;
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i > 0) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
    return out.str();
}

Hypergraph leq_filter(const Hypergraph& h, int rmax, bool drop_isolated) {
    if (rmax < 2) throw PreconditionError("leq_filter: rmax must be >= 2");
    std::vector<std::vector<int>> kept;
    std::vector<double> kept_weights;
    bool custom = h.scheme() == WeightScheme::custom;
    for (int e = 0; e < h.edge_count(); ++e) {
        if (static_cast<int>(h.edge(e).size()) > rmax) continue;
        kept.push_back(h.edge(e));
        if (custom) kept_weights.push_back(h.weight(e));
    }
    if (kept.empty()) throw PreconditionError("leq_filter: no edges of size <= " + std::to_string(rmax));
    if (!drop_isolated)
        return Hypergraph(h.vertex_count(), std::move(kept), h.scheme(), std::move(kept_weights),
                          h.id_map());

    std::vector<int> relabel(h.vertex_count(), -1);
    std::vector<std::int64_t> id_map;
    int next = 0;
    for (const auto& e : kept)
        for (int v : e)
            if (relabel[v] < 0) relabel[v] = 0;  // mark used
    for (int v = 0; v < h.vertex_count(); ++v) {
        if (relabel[v] == 0) {
            relabel[v] = next++;
            id_map.push_back(h.id_map()[v]);
        }
    }
    for (auto& e : kept)
        for (int& v : e) v = relabel[v];
    return Hypergraph(next, std::move(kept), h.scheme(), std::move(kept_weights), std::move(id_map));
}

Hypergraph remove_high_degree_vertices(const Hypergraph& h, double fraction) {
    if (!(fraction > 0.0)) throw PreconditionError("remove_high_degree_vertices: fraction must be > 0");
    double cutoff = fraction * h.edge_count();
    std::vector<int> relabel(h.vertex_count(), -1);
    std::vector<std::int64_t> id_map;
    int next = 0;
    for (int v = 0; v < h.vertex_count(); ++v) {
        if (static_cast<double>(h.incident_edges(v).size()) > cutoff) continue;
        relabel[v] = next++;
        id_map.push_back(h.id_map()[v]);
    }
    std::vector<std::vector<int>> edges;
    std::vector<double> weights;
    bool custom = h.scheme() == WeightScheme::custom;
    for (int e = 0; e < h.edge_count(); ++e) {
        std::vector<int> mapped;
        for (int v : h.edge(e))
            if (relabel[v] >= 0) mapped.push_back(relabel[v]);
        if (mapped.empty()) continue;
        edges.push_back(std::move(mapped));
        if (custom) weights.push_back(h.weight(e));
    }
    if (edges.empty()) throw PreconditionError("remove_high_degree_vertices: nothing left");
    return Hypergraph(next, std::move(edges), h.scheme(), std::move(weights), std::move(id_map));
}

CliqueExpansion clique_expansion(const Hypergraph& h) {
    CliqueExpansion g;
    g.n = h.vertex_count();
    std::vector<std::unordered_map<int, int>> acc(g.n);
    for (const auto& e : h.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                ++acc[e[i]][e[j]];
                ++acc[e[j]][e[i]];
            }
    g.neighbors.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        g.neighbors[v].assign(acc[v].begin(), acc[v].end());
        std::sort(g.neighbors[v].begin(), g.neighbors[v].end());
    }
    return g;
}

Eigen::VectorXd CliqueExpansion::multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : neighbors[u]) y[u] += w * x[v];
    return y;
}

std::int64_t CliqueExpansion::entry_count() const {
    std::int64_t total = 0;
    for (const auto& nb : neighbors) total += static_cast<std::int64_t>(nb.size());
    return total / 2;
}

bool is_connected(const Hypergraph& h) {
    int n = h.vertex_count();
    if (n <= 1) return true;
    std::vector<char> vertex_seen(n, 0), edge_seen(h.edge_count(), 0);
    std::deque<int> queue{0};
    vertex_seen[0] = 1;
    int covered = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : h.incident_edges(v)) {
            if (edge_seen[e]) continue;
            edge_seen[e] = 1;
            for (int u : h.edge(e)) {
                if (!vertex_seen[u]) {
                    vertex_seen[u] = 1;
                    ++covered;
                    queue.push_back(u);
                }
            }
        }
    }
    return covered == n;
}

DenseVector degrees(const Hypergraph& h) {
    DenseVector d = DenseVector::Zero(h.vertex_count());
    for (int v = 0; v < h.vertex_count(); ++v)
        d[v] = static_cast<double>(h.incident_edges(v).size());
    return d;
}

std::int64_t volume(const Hypergraph& h) {
    std::int64_t vol = 0;
    for (const auto& e : h.edges()) vol += static_cast<std::int64_t>(e.size());
    return vol;
}

}  // namespace hyten
