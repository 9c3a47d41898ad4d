#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyten/bench.hpp"
#include "hyten/centrality.hpp"
#include "hyten/cp.hpp"

namespace hyten {

/// 17 significant digits, enough to round-trip any double bit-exactly.
std::string format_double(double v);

void write_vector_csv(std::ostream& out, const DenseVector& v);          // vertex,value
void write_matrix_csv(std::ostream& out, const SymmetricMatrix& m);      // u,v,value with u <= v
void write_ranking_csv(std::ostream& out, const DenseVector& scores, int topk);  // rank,vertex,score
void write_embedding_csv(std::ostream& out, const DenseMatrix& factors);  // vertex,e_1..e_q
void write_labels_csv(std::ostream& out, const std::vector<int>& labels); // vertex,label
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_edge_buckets_csv(std::ostream& out, const std::vector<EdgeBucketRecord>& buckets);
void write_persistence_csv(std::ostream& out, const std::vector<PersistenceColumn>& cols, int topk);

std::string centrality_json(const CentralityResult& r);

/// {n, m, r, vol, id_map} sidecar written next to filtered outputs.
std::string metadata_json(const Hypergraph& h);

/// Accepts "vertex,value" CSV (optional header) or one value per line.
DenseVector read_vector_csv(std::istream& in, int n);

}  // namespace hyten
