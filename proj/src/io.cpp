#include "hyten/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace hyten {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_vector_csv(std::ostream& out, const DenseVector& v) {
    out << "vertex,value\n";
    for (int i = 0; i < v.size(); ++i) out << i << ',' << format_double(v[i]) << '\n';
}

void write_matrix_csv(std::ostream& out, const SymmetricMatrix& m) {
    out << "u,v,value\n";
    std::map<std::pair<int, int>, double> upper;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SymmetricMatrix::InnerIterator it(m, k); it; ++it) {
            int u = static_cast<int>(it.row()), v = static_cast<int>(it.col());
            if (u <= v) upper[{u, v}] = it.value();
        }
    for (const auto& [uv, value] : upper)
        out << uv.first << ',' << uv.second << ',' << format_double(value) << '\n';
}

void write_ranking_csv(std::ostream& out, const DenseVector& scores, int topk) {
    out << "rank,vertex,score\n";
    std::vector<int> order = ranking_from_scores(scores);
    topk = std::min<int>(topk, static_cast<int>(order.size()));
    for (int i = 0; i < topk; ++i)
        out << i + 1 << ',' << order[i] << ',' << format_double(scores[order[i]]) << '\n';
}

void write_embedding_csv(std::ostream& out, const DenseMatrix& factors) {
    out << "vertex";
    for (int j = 0; j < factors.cols(); ++j) out << ",e_" << j + 1;
    out << '\n';
    for (int i = 0; i < factors.rows(); ++i) {
        out << i;
        for (int j = 0; j < factors.cols(); ++j) out << ',' << format_double(factors(i, j));
        out << '\n';
    }
}

void write_labels_csv(std::ostream& out, const std::vector<int>& labels) {
    out << "vertex,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "dataset,algorithm,op,r,wall_ns,status\n";
    for (const auto& rec : records) {
        out << rec.dataset << ',' << rec.algorithm << ',' << rec.op << ',' << rec.r << ',';
        if (rec.status == "ok") out << rec.wall_ns;
        out << ',' << rec.status << '\n';
    }
}

void write_edge_buckets_csv(std::ostream& out, const std::vector<EdgeBucketRecord>& buckets) {
    out << "dataset,algorithm,op,r,edge_size,edges,total_ns\n";
    for (const auto& b : buckets)
        out << b.dataset << ',' << b.algorithm << ',' << b.op << ',' << b.r << ',' << b.edge_size
            << ',' << b.edges << ',' << b.total_ns << '\n';
}

void write_persistence_csv(std::ostream& out, const std::vector<PersistenceColumn>& cols, int topk) {
    out << "r,status,new_entrants";
    for (int i = 1; i <= topk; ++i) out << ",pos" << i;
    out << '\n';
    for (const auto& col : cols) {
        out << col.r << ',' << (col.ok ? "ok" : "error") << ',';
        if (col.ok) out << col.new_entrants;
        for (int i = 0; i < topk; ++i) {
            out << ',';
            if (col.ok && i < static_cast<int>(col.changed.size()))
                out << (col.changed[i] ? 1 : 0);
        }
        out << '\n';
    }
}

std::string centrality_json(const CentralityResult& r) {
    nlohmann::ordered_json j;
    j["method"] = to_string(r.method);
    j["lambda"] = r.eigenvalue;
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    j["scores"] = std::vector<double>(r.scores.data(), r.scores.data() + r.scores.size());
    return j.dump(2);
}

std::string metadata_json(const Hypergraph& h) {
    nlohmann::ordered_json j;
    j["n"] = h.vertex_count();
    j["m"] = h.edge_count();
    j["r"] = h.rank();
    j["vol"] = volume(h);
    j["id_map"] = h.id_map();
    return j.dump(2);
}

DenseVector read_vector_csv(std::istream& in, int n) {
    DenseVector v = DenseVector::Zero(n);
    std::vector<bool> seen(n, false);
    std::string line;
    int lineno = 0;
    int plain_index = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        try {
            if (toks.size() == 1) {
                if (plain_index >= n) throw ParseError("more values than vertices", lineno);
                v[plain_index] = std::stod(toks[0]);
                seen[plain_index++] = true;
            } else {
                int idx = std::stoi(toks[0]);
                if (idx < 0 || idx >= n) throw ParseError("vertex id out of range", lineno);
                v[idx] = std::stod(toks[1]);
                seen[idx] = true;
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header row
            throw ParseError("malformed vector entry '" + line + "'", lineno);
        }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) throw ParseError("vector file missing value for vertex " + std::to_string(i));
    return v;
}

}  // namespace hyten
