#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyten/errors.hpp"

namespace hyten {

using DenseVector = Eigen::VectorXd;

enum class WeightScheme { banerjee, unit, custom };

/// A nonuniform hypergraph on dense vertex ids 0..n-1. Immutable after
/// construction; safe to share across threads.
///
/// Edges are strictly sorted, duplicate-free vertex lists of size >= 1.
/// Duplicate edges are kept as distinct edges. rank() is the maximum edge
/// size (floored at 2, the smallest order the adjacency tensor supports).
class Hypergraph {
public:
    Hypergraph(int n, std::vector<std::vector<int>> edges,
               WeightScheme scheme = WeightScheme::banerjee,
               std::vector<double> custom_weights = {},
               std::vector<std::int64_t> id_map = {});

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int rank() const { return rank_; }

    const std::vector<int>& edge(int e) const { return edges_[e]; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }

    /// Edge ids incident to v, ascending. E(v) in the usual notation.
    const std::vector<int>& incident_edges(int v) const { return vertex_index_[v]; }

    /// w_e under the stored scheme.
    double weight(int e) const;
    WeightScheme scheme() const { return scheme_; }

    /// Dense id -> original input id (identity when the input was already dense).
    const std::vector<std::int64_t>& id_map() const { return id_map_; }

private:
    int n_;
    int rank_;
    WeightScheme scheme_;
    std::vector<std::vector<int>> edges_;
    std::vector<double> custom_weights_;
    std::vector<std::vector<int>> vertex_index_;
    std::vector<std::int64_t> id_map_;
    std::vector<double> banerjee_by_size_;  // indexed by |e|
};

/// w_e for a given scheme: banerjee = |e| / |beta(e)| (all-ones TTSV1 then
/// yields the degree sequence), unit = 1, custom = the stored weight.
double edge_weight(const Hypergraph& h, int e, WeightScheme scheme);

/// Same structure, different weights.
Hypergraph reweighted(const Hypergraph& h, WeightScheme scheme,
                      std::vector<double> custom_weights = {});

/// Parses whitespace- or comma-separated hyperedge lines. Lines starting with
/// '#' are comments, blank lines are skipped. Duplicate ids within a line are
/// dropped; duplicate lines become distinct edges. Ids are kept as-is when they
/// are exactly 0..n-1, otherwise relabeled densely (the map is persisted).
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph parse_hypergraph(const std::string& text);

/// One edge per line, dense ids, space separated. parse(serialize(h)) == h.
std::string serialize(const Hypergraph& h);

/// Keeps edges of size <= rmax ("less than or equal" filtering) and recomputes
/// the rank. drop_isolated also removes degree-0 vertices and relabels,
/// composing the id map. Throws when nothing survives.
Hypergraph leq_filter(const Hypergraph& h, int rmax, bool drop_isolated = false);

/// Removes vertices appearing in more than `fraction` of the edges (embedding
/// preprocessing). Edges shrink accordingly; emptied edges are dropped.
Hypergraph remove_high_degree_vertices(const Hypergraph& h, double fraction);

/// Weighted clique expansion: {u,v} carries the codegree |E(u,v)|.
struct CliqueExpansion {
    int n = 0;
    // sorted (neighbor, codegree) lists, symmetric
    std::vector<std::vector<std::pair<int, int>>> neighbors;

    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    std::int64_t entry_count() const;  // unordered pairs
};

CliqueExpansion clique_expansion(const Hypergraph& h);

/// Connectivity of the clique expansion (BFS over shared edges). A hypergraph
/// with one vertex and no edges counts as connected.
bool is_connected(const Hypergraph& h);

DenseVector degrees(const Hypergraph& h);
std::int64_t volume(const Hypergraph& h);

}  // namespace hyten
