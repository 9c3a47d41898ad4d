// hyten: tensor-free analytics for nonuniform hypergraphs.
//
// Exit codes: 0 ok, 1 unexpected error, 2 parse error, 3 capacity guard,
// 4 numeric-safety rejection, 5 centrality precondition/convergence failure.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hyten/bench.hpp"
#include "hyten/centrality.hpp"
#include "hyten/cp.hpp"
#include "hyten/io.hpp"
#include "hyten/synth.hpp"

namespace {

using namespace hyten;

Hypergraph load_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    return parse_hypergraph(in);
}

DenseVector load_vector(const std::string& spec, const Hypergraph& h, std::uint64_t seed) {
    int n = h.vertex_count();
    if (spec == "ones") return DenseVector::Ones(n);
    if (spec == "uniform") return DenseVector::Constant(n, 1.0 / n);
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw ParseError("cannot open vector file: " + spec.substr(5));
        return read_vector_csv(in, n);
    }
    if (spec == "random") {
        std::mt19937_64 rng(seed);
        DenseVector b(n);
        for (int i = 0; i < n; ++i)
            b[i] = 0.1 + 1.9 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
        return b;
    }
    throw ParseError("unknown --vector choice: " + spec);
}

void emit(const std::string& out_path, const std::string& data) {
    if (out_path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot open output file: " + out_path);
    out << data;
}

TtsvAlgo parse_algo(const std::string& name) {
    if (name == "explicit") return TtsvAlgo::explicit_tensor;
    if (name == "ordered") return TtsvAlgo::ordered;
    if (name == "unordered") return TtsvAlgo::unordered;
    if (name == "genfn") return TtsvAlgo::genfn;
    throw ParseError("unknown algorithm: " + name);
}

CentralityMethod parse_method(const std::string& name) {
    if (name == "zec") return CentralityMethod::zec;
    if (name == "hec") return CentralityMethod::hec;
    if (name == "cec") return CentralityMethod::cec;
    throw ParseError("unknown centrality method: " + name);
}

int run(int argc, char** argv) {
    CLI::App app{"tensor-free TTSV kernels and analytics for nonuniform hypergraphs"};
    app.require_subcommand(1);

    // --- filter ---
    auto* cmd_filter = app.add_subcommand("filter", "LEQ-filter edges of size > --max-size");
    std::string f_input, f_out;
    int f_max = 3;
    bool f_drop = false;
    cmd_filter->add_option("--input", f_input)->required();
    cmd_filter->add_option("--max-size", f_max)->required();
    cmd_filter->add_flag("--drop-isolated", f_drop, "remove vertices left without edges");
    cmd_filter->add_option("--out", f_out);

    // --- stats ---
    auto* cmd_stats = app.add_subcommand("stats", "print {n, m, r, vol, delta} for a file");
    std::string s_input;
    cmd_stats->add_option("--input", s_input)->required();

    // --- synth ---
    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic hypergraph");
    SynthOptions syn;
    std::string sy_dist = "geometric", sy_out, sy_hist;
    std::uint64_t sy_seed = 0;
    cmd_synth->add_option("--n", syn.n);
    cmd_synth->add_option("--m", syn.m);
    cmd_synth->add_option("--dist", sy_dist)->check(CLI::IsMember({"constant", "geometric", "from-histogram"}));
    cmd_synth->add_option("--size", syn.constant_size, "edge size for --dist constant");
    cmd_synth->add_option("--mean", syn.mean_size, "mean edge size for --dist geometric");
    cmd_synth->add_option("--min-size", syn.min_size);
    cmd_synth->add_option("--max-size", syn.max_size);
    cmd_synth->add_option("--hist-file", sy_hist, "size count lines for --dist from-histogram");
    cmd_synth->add_option("--seed", sy_seed);
    cmd_synth->add_flag("--ensure-max-size", syn.ensure_max_size);
    cmd_synth->add_option("--out", sy_out);

    // --- ttsv ---
    auto* cmd_ttsv = app.add_subcommand("ttsv", "TTSV1/TTSV2 against the adjacency tensor");
    std::string t_input, t_algo = "auto", t_vector = "ones", t_weights = "banerjee", t_out;
    int t_op = 1;
    bool t_serial = false, t_force = false;
    std::uint64_t t_seed = 0;
    cmd_ttsv->add_option("--input", t_input)->required();
    cmd_ttsv->add_option("--op", t_op)->check(CLI::IsMember({1, 2}));
    cmd_ttsv->add_option("--algo", t_algo)
        ->check(CLI::IsMember({"explicit", "ordered", "unordered", "genfn", "auto"}));
    cmd_ttsv->add_option("--vector", t_vector, "ones | uniform | random | file:PATH");
    cmd_ttsv->add_option("--weights", t_weights)->check(CLI::IsMember({"banerjee", "unit"}));
    cmd_ttsv->add_option("--out", t_out);
    cmd_ttsv->add_option("--seed", t_seed);
    cmd_ttsv->add_flag("--serial", t_serial, "deterministic single-thread mode");
    cmd_ttsv->add_flag("--force-unsafe", t_force, "run genfn despite a failed safety check");

    // --- bench ---
    auto* cmd_bench = app.add_subcommand("bench", "LEQ filtering sweep with per-algorithm timing");
    std::string b_input, b_algos = "explicit,ordered,unordered,genfn", b_out, b_bucket_out;
    BenchOptions bopt;
    cmd_bench->add_option("--input", b_input)->required();
    cmd_bench->add_option("--r-min", bopt.r_min);
    cmd_bench->add_option("--r-max", bopt.r_max);
    cmd_bench->add_option("--timeout-secs", bopt.timeout_secs);
    cmd_bench->add_option("--algos", b_algos, "comma separated subset of explicit,ordered,unordered,genfn");
    cmd_bench->add_option("--op", bopt.op)->check(CLI::IsMember({1, 2}));
    cmd_bench->add_flag("--per-edge", bopt.per_edge, "bucket time by edge size");
    cmd_bench->add_option("--seed", bopt.seed);
    cmd_bench->add_option("--out", b_out);
    cmd_bench->add_option("--buckets-out", b_bucket_out);

    // --- centrality ---
    auto* cmd_cent = app.add_subcommand("centrality", "ZEC / HEC / CEC scores and rankings");
    std::string c_input, c_method = "hec", c_out, c_ranking_out;
    double c_tol = 0.0, c_step = 0.5;
    int c_max_iter = 0, c_topk = 10;
    bool c_compare = false, c_serial = false;
    cmd_cent->add_option("--input", c_input)->required();
    cmd_cent->add_option("--method", c_method)->check(CLI::IsMember({"zec", "hec", "cec"}));
    cmd_cent->add_option("--tol", c_tol, "0 keeps the per-method default");
    cmd_cent->add_option("--step", c_step, "forward-integration step for zec");
    cmd_cent->add_option("--max-iter", c_max_iter, "0 keeps the per-method default");
    cmd_cent->add_option("--topk", c_topk);
    cmd_cent->add_flag("--compare", c_compare, "run all three methods, emit pairwise kendall tau_b");
    cmd_cent->add_flag("--serial", c_serial);
    cmd_cent->add_option("--out", c_out);
    cmd_cent->add_option("--ranking-out", c_ranking_out);

    // --- embed ---
    auto* cmd_embed = app.add_subcommand("embed", "symmetric CP embedding of the adjacency tensor");
    std::string e_input, e_out;
    int e_q = 8, e_steps = 0;
    std::uint64_t e_seed = 0;
    bool e_laplacian = false, e_serial = false;
    double e_hd = 0.0;
    cmd_embed->add_option("--input", e_input)->required();
    cmd_embed->add_option("--q", e_q, "embedding dimension");
    cmd_embed->add_option("--steps", e_steps, "0 keeps the default");
    cmd_embed->add_option("--seed", e_seed);
    cmd_embed->add_flag("--laplacian", e_laplacian, "embed the normalized Laplacian tensor");
    cmd_embed->add_flag("--serial", e_serial);
    cmd_embed->add_option("--filter-high-degree", e_hd,
                          "drop vertices in more than this fraction of edges first");
    cmd_embed->add_option("--out", e_out);

    // --- cluster ---
    auto* cmd_cluster = app.add_subcommand("cluster", "CP embedding followed by k-means");
    std::string k_input, k_out, k_embed_out;
    int k_q = 8, k_k = 2, k_steps = 0;
    std::uint64_t k_seed = 0;
    bool k_laplacian = false, k_serial = false;
    double k_hd = 0.0;
    cmd_cluster->add_option("--input", k_input)->required();
    cmd_cluster->add_option("--q", k_q);
    cmd_cluster->add_option("--k", k_k)->required();
    cmd_cluster->add_option("--steps", k_steps);
    cmd_cluster->add_option("--seed", k_seed);
    cmd_cluster->add_flag("--laplacian", k_laplacian);
    cmd_cluster->add_flag("--serial", k_serial);
    cmd_cluster->add_option("--filter-high-degree", k_hd);
    cmd_cluster->add_option("--out", k_out);
    cmd_cluster->add_option("--embedding-out", k_embed_out);

    // --- persistence ---
    auto* cmd_pers = app.add_subcommand("persistence", "top-k rank changes over an LEQ sweep");
    std::string p_input, p_method = "hec", p_out;
    int p_rlo = 2, p_rhi = 0, p_topk = 10;
    cmd_pers->add_option("--input", p_input)->required();
    cmd_pers->add_option("--method", p_method)->check(CLI::IsMember({"zec", "hec", "cec"}));
    cmd_pers->add_option("--r-min", p_rlo);
    cmd_pers->add_option("--r-max", p_rhi, "0 means the maximum edge size");
    cmd_pers->add_option("--topk", p_topk);
    cmd_pers->add_option("--out", p_out);

    CLI11_PARSE(app, argc, argv);

    if (cmd_filter->parsed()) {
        Hypergraph h = load_hypergraph(f_input);
        Hypergraph filtered = leq_filter(h, f_max, f_drop);
        emit(f_out, serialize(filtered));
        if (!f_out.empty()) {
            std::ofstream meta(f_out + ".meta.json");
            meta << metadata_json(filtered) << '\n';
        }
        std::cerr << "filtered: n=" << filtered.vertex_count() << " m=" << filtered.edge_count()
                  << " r=" << filtered.rank() << " vol=" << volume(filtered) << '\n';
        return 0;
    }

    if (cmd_stats->parsed()) {
        Hypergraph h = load_hypergraph(s_input);
        std::ostringstream os;
        os << metadata_json(h) << '\n';
        emit("", os.str());
        return 0;
    }

    if (cmd_synth->parsed()) {
        if (sy_dist == "constant") syn.dist = SizeDist::constant;
        else if (sy_dist == "geometric") syn.dist = SizeDist::geometric;
        else syn.dist = SizeDist::histogram;
        if (!sy_hist.empty()) {
            std::ifstream in(sy_hist);
            if (!in) throw ParseError("cannot open histogram file: " + sy_hist);
            int size;
            std::int64_t count;
            while (in >> size >> count) syn.histogram.emplace_back(size, count);
        }
        syn.seed = sy_seed;
        Hypergraph h = synth_hypergraph(syn);
        emit(sy_out, serialize(h));
        std::cerr << "synth: n=" << h.vertex_count() << " m=" << h.edge_count()
                  << " r=" << h.rank() << " vol=" << volume(h) << '\n';
        return 0;
    }

    if (cmd_ttsv->parsed()) {
        Hypergraph h = load_hypergraph(t_input);
        if (t_weights == "unit") h = reweighted(h, WeightScheme::unit);
        DenseVector b = load_vector(t_vector, h, t_seed);
        KernelOptions opts;
        opts.serial = t_serial;
        opts.skip_safety_check = t_force;
        std::ostringstream os;
        if (t_op == 1) {
            DenseVector s;
            if (t_algo == "auto") {
                TtsvAlgo chosen;
                s = ttsv1_auto(h, b, opts, &chosen);
                std::cerr << "auto kernel: " << to_string(chosen) << '\n';
            } else {
                s = ttsv1(h, b, parse_algo(t_algo), opts);
            }
            write_vector_csv(os, s);
        } else {
            SymmetricMatrix y;
            if (t_algo == "auto") {
                TtsvAlgo chosen;
                y = ttsv2_auto(h, b, opts, &chosen);
                std::cerr << "auto kernel: " << to_string(chosen) << '\n';
            } else {
                y = ttsv2(h, b, parse_algo(t_algo), opts);
            }
            write_matrix_csv(os, y);
        }
        emit(t_out, os.str());
        return 0;
    }

    if (cmd_bench->parsed()) {
        Hypergraph h = load_hypergraph(b_input);
        bopt.algos.clear();
        std::stringstream ss(b_algos);
        std::string name;
        while (std::getline(ss, name, ',')) bopt.algos.push_back(parse_algo(name));
        if (bopt.r_max == 0) bopt.r_max = h.rank();
        std::string dataset = b_input.substr(b_input.find_last_of('/') + 1);
        BenchOutput out = run_bench(h, dataset, bopt);
        std::ostringstream os;
        write_bench_csv(os, out.records);
        emit(b_out, os.str());
        if (!b_bucket_out.empty()) {
            std::ostringstream bs;
            write_edge_buckets_csv(bs, out.buckets);
            emit(b_bucket_out, bs.str());
        }
        return 0;
    }

    if (cmd_cent->parsed()) {
        Hypergraph h = load_hypergraph(c_input);
        HecOptions hopt;
        ZecOptions zopt;
        CecOptions copt;
        hopt.kernel.serial = zopt.kernel.serial = c_serial;
        if (c_tol > 0) hopt.tol = zopt.tol = copt.tol = c_tol;
        if (c_max_iter > 0) hopt.max_iter = zopt.max_iter = copt.max_iter = c_max_iter;
        zopt.step = c_step;
        auto run_one = [&](CentralityMethod m) {
            switch (m) {
                case CentralityMethod::hec: return hec(h, hopt);
                case CentralityMethod::zec: return zec(h, zopt);
                default: return cec(h, copt);
            }
        };
        if (c_compare) {
            CentralityResult rz = run_one(CentralityMethod::zec);
            CentralityResult rh = run_one(CentralityMethod::hec);
            CentralityResult rc = run_one(CentralityMethod::cec);
            std::ostringstream os;
            os << "pair,k,tau_b\n";
            std::vector<int> ks;
            for (int k : {5, 10, 25, 50, 100, 250, 500, 1000}) {
                int clamped = std::min(k, h.vertex_count());
                if (clamped >= 2 && (ks.empty() || ks.back() != clamped)) ks.push_back(clamped);
            }
            for (int k : ks) {
                os << "zec-hec," << k << ',' << format_double(kendall_tau_b(rz.scores, rh.scores, k)) << '\n';
                os << "zec-cec," << k << ',' << format_double(kendall_tau_b(rz.scores, rc.scores, k)) << '\n';
                os << "hec-cec," << k << ',' << format_double(kendall_tau_b(rh.scores, rc.scores, k)) << '\n';
            }
            emit(c_out, os.str());
            return 0;
        }
        CentralityResult res = run_one(parse_method(c_method));
        emit(c_out, centrality_json(res) + "\n");
        if (!c_ranking_out.empty()) {
            std::ostringstream os;
            write_ranking_csv(os, res.scores, c_topk);
            emit(c_ranking_out, os.str());
        }
        return 0;
    }

    if (cmd_embed->parsed() || cmd_cluster->parsed()) {
        bool clustering = cmd_cluster->parsed();
        Hypergraph h = load_hypergraph(clustering ? k_input : e_input);
        double hd = clustering ? k_hd : e_hd;
        if (hd > 0.0) h = remove_high_degree_vertices(h, hd);
        EmbedOptions opts;
        opts.use_laplacian = clustering ? k_laplacian : e_laplacian;
        opts.fit.seed = clustering ? k_seed : e_seed;
        opts.cluster.seed = opts.fit.seed;
        opts.kernel.serial = opts.cluster.serial = clustering ? k_serial : e_serial;
        int steps = clustering ? k_steps : e_steps;
        if (steps > 0) opts.fit.max_steps = steps;
        int q = clustering ? k_q : e_q;
        if (!clustering) {
            ImplicitTensor t = opts.use_laplacian ? laplacian_tensor(h, opts.kernel)
                                                  : adjacency_tensor(h, opts.kernel);
            CpFitResult fit = cp_fit(t, q, opts.fit);
            std::ostringstream os;
            write_embedding_csv(os, fit.model.factors);
            emit(e_out, os.str());
            std::cerr << "cp_fit: steps=" << fit.steps << " objective="
                      << format_double(fit.objective_trace.back())
                      << " grad_norm=" << format_double(fit.final_grad_norm) << '\n';
            return 0;
        }
        auto [fit, clusters] = embed_and_cluster(h, q, k_k, opts);
        std::ostringstream os;
        write_labels_csv(os, clusters.labels);
        emit(k_out, os.str());
        if (!k_embed_out.empty()) {
            std::ostringstream es;
            write_embedding_csv(es, fit.model.factors);
            emit(k_embed_out, es.str());
        }
        std::cerr << "cluster: inertia=" << format_double(clusters.inertia) << '\n';
        return 0;
    }

    if (cmd_pers->parsed()) {
        Hypergraph h = load_hypergraph(p_input);
        PersistenceOptions opts;
        opts.topk = p_topk;
        if (p_rhi == 0) p_rhi = h.rank();
        auto cols = persistence_sweep(h, parse_method(p_method), p_rlo, p_rhi, opts);
        std::ostringstream os;
        write_persistence_csv(os, cols, p_topk);
        emit(p_out, os.str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hyten::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const hyten::CapacityError& e) {
        std::cerr << "capacity guard: " << e.what() << '\n';
        return 3;
    } catch (const hyten::NumericError& e) {
        std::cerr << "numeric safety: " << e.what() << '\n';
        return 4;
    } catch (const hyten::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const hyten::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
