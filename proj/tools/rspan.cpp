#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "rspan/faults.hpp"
#include "rspan/trace.hpp"
#include "rspan/verify.hpp"

using json = nlohmann::ordered_json;
using namespace rspan;

namespace {

// exit codes: 0 ok, 1 verification failure, 2 usage/IO error
constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

std::vector<int> load_fault_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fault file: " + path);
    std::vector<int> F;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long v;
        if (!(ls >> v))
            throw std::runtime_error("fault file line " + std::to_string(lineno) + ": bad index");
        if (v < 0 || v >= n)
            throw std::runtime_error("fault file line " + std::to_string(lineno) +
                                     ": index " + std::to_string(v) + " out of range [0," +
                                     std::to_string(n) + ")");
        F.push_back(static_cast<int>(v));
    }
    std::sort(F.begin(), F.end());
    F.erase(std::unique(F.begin(), F.end()), F.end());
    return F;
}

json stats_json(const BuildResult& r, const Wspd& w, long long minsum) {
    const SpannerParams& p = r.trace.params;
    EdgeStats st = edge_stats(r.graph, p.n_top);
    json j;
    j["n"] = p.n_top;
    j["dim"] = p.dim;
    j["eps"] = p.eps;
    j["t"] = p.t;
    j["s"] = p.s;
    j["delta"] = p.Delta;
    j["kappa"] = p.kappa;
    j["seed"] = p.seed;
    j["degree_scale"] = p.degree_scale;
    if (p.scaled()) j["experimental"] = "low-degree mode, robustness guarantees void";
    j["edges"] = st.edges;
    j["edges_per_vertex"] = st.edges_per_vertex;
    if (st.normalized)
        j["normalized_edges"] = *st.normalized;
    else
        j["normalized_edges"] = nullptr;
    j["max_degree"] = st.max_degree;
    j["avg_degree"] = st.avg_degree;
    j["m_wspd"] = w.m();
    j["min_size_sum"] = minsum;
    j["gt_edges"] = static_cast<long long>(r.trace.gt_edges.size());
    j["complete_cover"] = r.trace.complete_cover;
    return j;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

int cmd_build(const std::string& points_path, double eps, double t, uint64_t seed,
              double degree_scale, const std::string& out_prefix,
              const std::string& dump_tree, const std::string& dump_wspd_path) {
    PointSet pts = PointSet::load_file(points_path);
    BuildResult r = build_spanner(pts, eps, t, seed, degree_scale);
    r.graph.save_file(out_prefix + ".edges");
    save_trace_file(r.trace, out_prefix + ".trace");
    if (!dump_tree.empty()) {
        std::ofstream out(dump_tree);
        if (!out) throw std::runtime_error("cannot write " + dump_tree);
        r.trace.tree.dump(out);
    }
    if (!dump_wspd_path.empty()) {
        std::ofstream out(dump_wspd_path);
        if (!out) throw std::runtime_error("cannot write " + dump_wspd_path);
        dump_wspd(r.trace.tree, r.trace.wspd, out);
    }
    write_json(stats_json(r, r.trace.wspd, min_size_sum(r.trace.tree, r.trace.wspd)),
               out_prefix + ".stats.json");
    std::cerr << "built spanner: n=" << pts.size() << " |E|=" << r.graph.edge_count()
              << " -> " << out_prefix << ".{edges,trace,stats.json}\n";
    return kOk;
}

int cmd_faults(const std::string& trace_path, const std::string& fault_file, double frac,
               uint64_t seed, const std::string& out_path) {
    BuildTrace tr = load_trace_file(trace_path);
    const int n = tr.params.n_top;
    std::vector<int> F;
    json source;
    if (!fault_file.empty()) {
        F = load_fault_file(fault_file, n);
        source["fault_source"] = "file";
        source["fault_file"] = fault_file;
    } else {
        if (frac < 0 || frac > 1) throw std::runtime_error("--frac must be in [0, 1]");
        int count = static_cast<int>(std::llround(frac * n));
        F = random_fault_set(n, count, seed);
        source["fault_source"] = "random";
        source["frac"] = frac;
        source["fault_seed"] = seed;
    }
    FaultReport rep = compute_fplus(tr, F);
    json j;
    j["n"] = n;
    j["eps"] = tr.params.eps;
    j.update(source);
    j["f_count"] = rep.F.size();
    j["fplus_t_count"] = rep.F_plus_T.size();
    j["fplus_count"] = rep.F_plus.size();
    j["d0_count"] = rep.D0.size();
    j["d1_count"] = rep.D1.size();
    j["ratios"] = {{"fplus_t_over_f", rep.ratio_T}, {"fplus_over_f", rep.ratio}};
    j["bounds"] = {{"fplus_t_bound", rep.fplus_t_bound},
                   {"fplus_bound", rep.fplus_bound},
                   {"fplus_t_ok", rep.fplus_t_bound_ok},
                   {"fplus_ok", rep.bound_ok}};
    j["fplus_t_in_fplus"] = rep.fplus_t_in_fplus;
    j["F"] = rep.F;
    j["F_plus_T"] = rep.F_plus_T;
    j["F_plus_0"] = rep.F_plus_0;
    j["F_plus_1"] = rep.F_plus_1;
    j["F_plus"] = rep.F_plus;
    write_json(j, out_path);
    std::cerr << "faults: |F|=" << rep.F.size() << " |F+|=" << rep.F_plus.size()
              << " ratio=" << rep.ratio << " -> " << out_path << '\n';
    return kOk;
}

int cmd_verify(const std::string& graph_path, const std::string& trace_path,
               const std::string& points_path, const std::string& faults_path,
               bool explode, double t_override, const std::string& out_path) {
    BuildTrace tr = load_trace_file(trace_path);
    PointSet pts = PointSet::load_file(points_path);
    if (pts.size() != tr.params.n_top || pts.dim != tr.params.dim)
        throw std::runtime_error("points file does not match the trace (size/dim)");
    if (pts.content_hash() != tr.points_hash)
        throw std::runtime_error("points file does not match the trace (content hash)");
    GeometricGraph g = GeometricGraph::load_file(graph_path);
    if (g.n != tr.params.n_top) throw std::runtime_error("graph file does not match the trace");

    std::ifstream fin(faults_path);
    if (!fin) throw std::runtime_error("cannot open fault report: " + faults_path);
    json fj = json::parse(fin);
    std::vector<int> F = fj.at("F").get<std::vector<int>>();
    std::vector<int> F_plus = fj.at("F_plus").get<std::vector<int>>();
    std::vector<int> F_plus_T = fj.at("F_plus_T").get<std::vector<int>>();

    double t = t_override > 0 ? t_override : tr.params.t;
    StretchReport st = stretch_check(g, pts, F, F_plus, t);
    json j;
    j["t_target"] = t;
    j["checked_pairs"] = st.checked_pairs;
    j["max_stretch"] = st.max_stretch;
    j["exhaustive"] = st.exhaustive;
    j["coverage"] = st.coverage;
    j["violations"] = json::array();
    for (const auto& v : st.violations)
        j["violations"].push_back({{"p", v.p}, {"q", v.q}, {"stretch", v.stretch}});
    bool ok = st.ok();
    if (explode) {
        GeometricGraph gt = tr.g_t();
        ExplodeReport ex = explode_check(tr, gt, pts, F, F_plus_T);
        json je;
        je["checked_points"] = ex.checked_points;
        je["checked_ancestors"] = ex.checked_ancestors;
        je["violations"] = json::array();
        for (const auto& v : ex.violations)
            je["violations"].push_back({{"p", v.p},
                                        {"node", v.node},
                                        {"required", v.required},
                                        {"reached", v.reached}});
        j["explode"] = je;
        ok = ok && ex.ok();
    }
    j["ok"] = ok;
    j["runtime_ms"] = st.runtime_ms;
    write_json(j, out_path);
    std::cerr << "verify: checked=" << st.checked_pairs << " max_stretch=" << st.max_stretch
              << (ok ? " OK" : " FAILED") << " -> " << out_path << '\n';
    return ok ? kOk : kVerifyFailed;
}

int cmd_scale(const std::vector<int>& ns, double eps, double t, uint64_t seed, int dim,
              double degree_scale, const std::string& out_path) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", degree_scale);
    out << "# rspan scale sweep: eps=" << eps << " t=" << t << " dim=" << dim
        << " seed=" << seed << " degree_scale=" << buf << '\n';
    out << "n,edges,normalized_edges,build_ms,m_wspd,min_size_sum\n";
    for (int n : ns) {
        auto t0 = std::chrono::steady_clock::now();
        PointSet pts = PointSet::random_uniform(n, dim, seed);
        BuildResult r = build_spanner(pts, eps, t, seed, degree_scale);
        long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        EdgeStats st = edge_stats(r.graph, n);
        long long minsum = min_size_sum(r.trace.tree, r.trace.wspd);
        std::snprintf(buf, sizeof buf, "%.6g", st.normalized ? *st.normalized : -1.0);
        out << n << ',' << st.edges << ',' << buf << ',' << ms << ',' << r.trace.wspd.m()
            << ',' << minsum << '\n';
        std::cerr << "scale n=" << n << " |E|=" << st.edges << " (" << ms << " ms)\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resilient geometric spanner construction and verification"};
    app.require_subcommand(1);

    std::string points_path, out_prefix = "spanner", trace_path, fault_file, graph_path,
                faults_path, out_path;
    std::string dump_tree_path, dump_wspd_path;
    double eps = 0.25, t = 4.0, frac = -1, degree_scale = 1.0, t_override = -1;
    uint64_t seed = 0;
    int dim = 2;
    bool explode = false;
    std::string n_list;

    CLI::App* build = app.add_subcommand("build", "build a spanner from a point file");
    build->add_option("--points", points_path, "point file")->required();
    build->add_option("--eps", eps, "resilience parameter, in (0, 1/3)")->required();
    build->add_option("--t", t, "target stretch, > 1")->required();
    build->add_option("--seed", seed, "rng seed");
    build->add_option("--degree-scale", degree_scale,
                      "experimental low-degree multiplier in (0, 1]; below 1 the "
                      "robustness guarantees are void");
    build->add_option("--out", out_prefix, "output prefix");
    build->add_option("--dump-tree", dump_tree_path, "also write the fair-split tree dump");
    build->add_option("--dump-wspd", dump_wspd_path, "also write the WSPD pair dump");

    CLI::App* faults = app.add_subcommand("faults", "compute the abandoned set for a fault set");
    faults->add_option("--trace", trace_path, "trace file from build")->required();
    faults->add_option("--fault-file", fault_file, "file with one point index per line");
    faults->add_option("--frac", frac, "random fault fraction of n");
    faults->add_option("--seed", seed, "rng seed for --frac");
    faults->add_option("--out", out_path, "output JSON (default <trace>.faults.json)");

    CLI::App* verify = app.add_subcommand("verify", "check stretch (and explosion) after faults");
    verify->add_option("--graph", graph_path, "graph file from build")->required();
    verify->add_option("--trace", trace_path, "trace file from build")->required();
    verify->add_option("--points", points_path, "point file")->required();
    verify->add_option("--faults", faults_path, "fault report JSON")->required();
    verify->add_flag("--explode", explode, "also audit the explosion property");
    verify->add_option("--t", t_override, "override the stretch target");
    verify->add_option("--out", out_path, "output JSON (default <graph>.verify.json)");

    CLI::App* scale = app.add_subcommand("scale", "edge-count sweep over random point sets");
    scale->add_option("--n", n_list, "comma-separated point counts")->required();
    scale->add_option("--eps", eps, "resilience parameter")->required();
    scale->add_option("--t", t, "target stretch")->required();
    scale->add_option("--seed", seed, "rng seed");
    scale->add_option("--dim", dim, "dimension");
    scale->add_option("--degree-scale", degree_scale, "experimental low-degree multiplier");
    scale->add_option("--out", out_path, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (build->parsed())
            return cmd_build(points_path, eps, t, seed, degree_scale, out_prefix,
                             dump_tree_path, dump_wspd_path);
        if (faults->parsed()) {
            if (fault_file.empty() && frac < 0)
                throw std::runtime_error("faults: give --fault-file or --frac");
            if (!fault_file.empty() && frac >= 0)
                throw std::runtime_error("faults: --fault-file and --frac are exclusive");
            if (out_path.empty()) out_path = trace_path + ".faults.json";
            return cmd_faults(trace_path, fault_file, frac, seed, out_path);
        }
        if (verify->parsed()) {
            if (out_path.empty()) out_path = graph_path + ".verify.json";
            return cmd_verify(graph_path, trace_path, points_path, faults_path, explode,
                              t_override, out_path);
        }
        if (scale->parsed()) {
            std::vector<int> ns;
            std::stringstream ss(n_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) continue;
                ns.push_back(std::stoi(tok));
                if (ns.back() < 1) throw std::runtime_error("scale: n must be positive");
            }
            if (ns.empty()) throw std::runtime_error("scale: empty --n list");
            return cmd_scale(ns, eps, t, seed, dim, degree_scale, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
