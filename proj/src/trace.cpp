#include "rspan/trace.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rspan {

namespace {

constexpr const char* kMagic = "rspan-trace 1";

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_ids(std::ostream& out, const char* tag, const std::vector<int>& ids) {
    out << tag << ' ' << ids.size();
    for (int x : ids) out << ' ' << x;
    out << '\n';
}

std::vector<int> read_ids(std::istream& in, const char* tag) {
    std::string got;
    in >> got;
    if (got != tag) throw std::runtime_error(std::string("trace: expected '") + tag + "', got '" + got + "'");
    size_t k;
    in >> k;
    std::vector<int> ids(k);
    for (size_t i = 0; i < k; ++i) in >> ids[i];
    if (!in) throw std::runtime_error("trace: truncated id list");
    return ids;
}

void write_bipartite(std::ostream& out, const BipartiteGraph& g) {
    if (g.complete) {
        out << "shrink complete\n";
        return;
    }
    out << "shrink sampled " << g.degree << '\n';
    out << "off " << g.off.size();
    for (int x : g.off) out << ' ' << x;
    out << '\n';
    out << "adj " << g.adj.size();
    for (int x : g.adj) out << ' ' << x;
    out << '\n';
}

// left/right provided by the surrounding sections
void read_bipartite(std::istream& in, BipartiteGraph& g, std::vector<int> left,
                    std::vector<int> right) {
    std::string tag, kind;
    in >> tag >> kind;
    if (tag != "shrink") throw std::runtime_error("trace: expected shrink section");
    g.left = std::move(left);
    g.right = std::move(right);
    g.self_pair = false;
    if (kind == "complete") {
        g.complete = true;
        g.degree = static_cast<int>(g.left.size());
        return;
    }
    if (kind != "sampled") throw std::runtime_error("trace: bad shrink kind");
    in >> g.degree;
    size_t k;
    in >> tag >> k;
    if (tag != "off") throw std::runtime_error("trace: expected off");
    g.off.resize(k);
    for (size_t i = 0; i < k; ++i) in >> g.off[i];
    in >> tag >> k;
    if (tag != "adj") throw std::runtime_error("trace: expected adj");
    g.adj.resize(k);
    for (size_t i = 0; i < k; ++i) in >> g.adj[i];
    if (!in) throw std::runtime_error("trace: truncated adjacency");
    if (g.off.size() != g.right.size() + 1)
        throw std::runtime_error("trace: adjacency offsets inconsistent");
}

void write_tree(std::ostream& out, const FairSplitTree& t) {
    out << "[tree] " << t.node_count() << ' ' << t.root << '\n';
    t.dump(out);
}

FairSplitTree read_tree(std::istream& in, int dim) {
    std::string tag;
    in >> tag;
    if (tag != "[tree]") throw std::runtime_error("trace: expected [tree]");
    int count, root;
    in >> count >> root;
    struct Row {
        int id, parent, size, point;
        Box box;
    };
    std::vector<Row> rows(count);
    for (int i = 0; i < count; ++i) {
        Row& r = rows[i];
        in >> r.id >> r.parent >> r.size;
        r.box.lo.resize(dim);
        r.box.hi.resize(dim);
        for (int j = 0; j < dim; ++j) in >> r.box.lo[j];
        for (int j = 0; j < dim; ++j) in >> r.box.hi[j];
        r.point = -1;
        if (r.size == 1) in >> r.point;
        if (!in) throw std::runtime_error("trace: truncated tree");
        if (r.id != i) throw std::runtime_error("trace: tree not in preorder");
    }
    FairSplitTree t;
    t.nodes.resize(count);
    t.root = root;
    // preorder with sizes determines the topology
    struct Builder {
        const std::vector<Row>& rows;
        FairSplitTree& t;
        int next = 0;
        int build(int parent) {
            const Row& r = rows[next];
            int id = next++;
            TreeNode& nd = t.nodes[id];
            nd.parent = parent;
            nd.size = r.size;
            nd.point = r.point;
            nd.box = r.box;
            if (r.size > 1) {
                nd.left = build(id);
                nd.right = build(id);
                if (t.nodes[nd.left].size + t.nodes[nd.right].size != nd.size)
                    throw std::runtime_error("trace: tree sizes inconsistent");
            }
            return id;
        }
    } builder{rows, t};
    if (builder.build(-1) != root) throw std::runtime_error("trace: root mismatch");
    if (builder.next != count) throw std::runtime_error("trace: tree node count mismatch");
    return t;
}

void write_edges(std::ostream& out, const char* tag, const std::vector<uint64_t>& edges) {
    out << tag << ' ' << edges.size() << '\n';
    for (uint64_t e : edges)
        out << static_cast<int>(e >> 32) << ' ' << static_cast<int>(e & 0xffffffffu) << '\n';
}

std::vector<uint64_t> read_edges(std::istream& in, const char* tag) {
    std::string got;
    in >> got;
    if (got != tag) throw std::runtime_error(std::string("trace: expected ") + tag);
    size_t k;
    in >> k;
    std::vector<uint64_t> edges(k);
    for (size_t i = 0; i < k; ++i) {
        int a, b;
        in >> a >> b;
        edges[i] = pack_edge(a, b);
    }
    if (!in) throw std::runtime_error("trace: truncated edges");
    return edges;
}

}  // namespace

void save_trace(const BuildTrace& tr, std::ostream& out) {
    const SpannerParams& p = tr.params;
    out << kMagic << '\n';
    out << "[params]\n";
    out << "n " << p.n_top << '\n';
    out << "dim " << p.dim << '\n';
    out << "eps " << fmt(p.eps) << '\n';
    out << "t " << fmt(p.t) << '\n';
    out << "s " << p.s << '\n';
    out << "kappa " << p.kappa << '\n';
    out << "delta " << p.Delta << '\n';
    out << "alpha " << fmt(p.alpha) << '\n';
    out << "beta " << fmt(p.beta) << '\n';
    out << "delta_dense " << fmt(p.delta_dense) << '\n';
    out << "a " << fmt(p.a) << '\n';
    out << "zeta " << fmt(p.zeta) << '\n';
    out << "eta " << fmt(p.eta) << '\n';
    out << "cbound " << fmt(p.C) << '\n';
    out << "degree_scale " << fmt(p.degree_scale) << '\n';
    out << "seed " << p.seed << '\n';
    out << "points_hash " << tr.points_hash << '\n';
    out << "complete_cover " << (tr.complete_cover ? 1 : 0) << '\n';

    write_tree(out, tr.tree);

    out << "[wspd] " << tr.wspd.m() << ' ' << fmt(tr.wspd.s) << '\n';
    for (const WspdPair& pr : tr.wspd.pairs)
        out << pr.a << ' ' << pr.b << ' ' << pr.a_prime << ' ' << (pr.size_tie ? 1 : 0) << '\n';

    out << "[recursion] " << tr.rec.size() << '\n';
    for (const RecEntry& e : tr.rec) {
        out << "rec " << e.id << ' ' << e.depth << ' ' << e.path << ' ' << (e.base ? 1 : 0)
            << ' ' << e.child_u0 << ' ' << e.child_t1 << ' ' << e.shrink_degree_eff << ' '
            << e.expand_degree_eff << ' ' << e.shrink_attempts << ' ' << e.expand_attempts
            << ' ' << (e.shrink_audited ? 1 : 0) << ' ' << (e.expand_audited ? 1 : 0) << ' '
            << (e.shrink_ok ? 1 : 0) << ' ' << (e.expand_ok ? 1 : 0) << ' '
            << (e.expand_complete ? 1 : 0) << '\n';
        write_ids(out, "leaves", e.leaves);
        if (!e.base) {
            write_ids(out, "u0", e.u0_leaves);
            write_ids(out, "t1", e.t1_leaves);
            write_bipartite(out, e.shrink);
        }
    }

    out << "[groups] " << tr.groups.size() << '\n';
    for (const GroupEntry& g : tr.groups) {
        out << "group " << g.node << ' ' << g.shrink_degree_eff << ' ' << g.expand_degree_eff
            << ' ' << g.shrink_attempts << ' ' << g.expand_attempts << ' '
            << (g.shrink_audited ? 1 : 0) << ' ' << (g.expand_audited ? 1 : 0) << ' '
            << (g.shrink_ok ? 1 : 0) << ' ' << (g.expand_ok ? 1 : 0) << '\n';
        write_ids(out, "pairs", g.pair_ids);
        write_ids(out, "b", g.b_union);
        write_bipartite(out, g.shrink);
    }

    write_edges(out, "[gt_edges]", tr.gt_edges);
    write_edges(out, "[gw_edges]", tr.gw_edges);
    out << "end\n";
}

void save_trace_file(const BuildTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    save_trace(trace, out);
}

BuildTrace load_trace(std::istream& in) {
    BuildTrace tr;
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw std::runtime_error("trace: bad magic");
    std::string tag;
    in >> tag;
    if (tag != "[params]") throw std::runtime_error("trace: expected [params]");
    SpannerParams& p = tr.params;
    auto expect = [&](const char* key) {
        in >> tag;
        if (tag != key)
            throw std::runtime_error(std::string("trace: expected ") + key + ", got " + tag);
    };
    int cover = 0;
    expect("n");
    in >> p.n_top;
    expect("dim");
    in >> p.dim;
    expect("eps");
    in >> p.eps;
    expect("t");
    in >> p.t;
    expect("s");
    in >> p.s;
    expect("kappa");
    in >> p.kappa;
    expect("delta");
    in >> p.Delta;
    expect("alpha");
    in >> p.alpha;
    expect("beta");
    in >> p.beta;
    expect("delta_dense");
    in >> p.delta_dense;
    expect("a");
    in >> p.a;
    expect("zeta");
    in >> p.zeta;
    expect("eta");
    in >> p.eta;
    expect("cbound");
    in >> p.C;
    expect("degree_scale");
    in >> p.degree_scale;
    expect("seed");
    in >> p.seed;
    expect("points_hash");
    in >> tr.points_hash;
    expect("complete_cover");
    in >> cover;
    tr.complete_cover = cover != 0;
    if (!in) throw std::runtime_error("trace: bad params section");

    tr.tree = read_tree(in, p.dim);

    in >> tag;
    if (tag != "[wspd]") throw std::runtime_error("trace: expected [wspd]");
    int m;
    in >> m >> tr.wspd.s;
    tr.wspd.pairs.resize(m);
    for (int i = 0; i < m; ++i) {
        int tie;
        in >> tr.wspd.pairs[i].a >> tr.wspd.pairs[i].b >> tr.wspd.pairs[i].a_prime >> tie;
        tr.wspd.pairs[i].size_tie = tie != 0;
    }

    in >> tag;
    if (tag != "[recursion]") throw std::runtime_error("trace: expected [recursion]");
    size_t nrec;
    in >> nrec;
    tr.rec.resize(nrec);
    for (size_t i = 0; i < nrec; ++i) {
        RecEntry& e = tr.rec[i];
        int base, saud, eaud, sok, eok, ecomp;
        in >> tag;
        if (tag != "rec") throw std::runtime_error("trace: expected rec");
        in >> e.id >> e.depth >> e.path >> base >> e.child_u0 >> e.child_t1 >>
            e.shrink_degree_eff >> e.expand_degree_eff >> e.shrink_attempts >>
            e.expand_attempts >> saud >> eaud >> sok >> eok >> ecomp;
        e.base = base != 0;
        e.shrink_audited = saud != 0;
        e.expand_audited = eaud != 0;
        e.shrink_ok = sok != 0;
        e.expand_ok = eok != 0;
        e.expand_complete = ecomp != 0;
        e.leaves = read_ids(in, "leaves");
        if (!e.base) {
            e.u0_leaves = read_ids(in, "u0");
            e.t1_leaves = read_ids(in, "t1");
            read_bipartite(in, e.shrink, e.u0_leaves, e.t1_leaves);
        }
    }

    in >> tag;
    if (tag != "[groups]") throw std::runtime_error("trace: expected [groups]");
    size_t ngroups;
    in >> ngroups;
    tr.groups.resize(ngroups);
    for (size_t i = 0; i < ngroups; ++i) {
        GroupEntry& g = tr.groups[i];
        int saud, eaud, sok, eok;
        in >> tag;
        if (tag != "group") throw std::runtime_error("trace: expected group");
        in >> g.node >> g.shrink_degree_eff >> g.expand_degree_eff >> g.shrink_attempts >>
            g.expand_attempts >> saud >> eaud >> sok >> eok;
        g.shrink_audited = saud != 0;
        g.expand_audited = eaud != 0;
        g.shrink_ok = sok != 0;
        g.expand_ok = eok != 0;
        g.pair_ids = read_ids(in, "pairs");
        g.b_union = read_ids(in, "b");
        read_bipartite(in, g.shrink, tr.tree.leaves(g.node), g.b_union);
    }

    tr.gt_edges = read_edges(in, "[gt_edges]");
    tr.gw_edges = read_edges(in, "[gw_edges]");
    in >> tag;
    if (tag != "end") throw std::runtime_error("trace: missing end marker");
    return tr;
}

BuildTrace load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    return load_trace(in);
}

}  // namespace rspan
