#include "flarb/flarb_engine.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <unordered_map>

namespace flarb {

const char* face_tag_name(FaceTag t) {
    switch (t) {
        case FaceTag::Preserved: return "preserved";
        case FaceTag::Augmented: return "augmented";
        case FaceTag::Shrinking: return "shrinking";
    }
    return "?";
}

Fleeq validate_flarbable(const PlaneGraph& g, const CurveSpec& c) {
    return validate_flarbable(g, c, g.faces());
}

Fleeq validate_flarbable(const PlaneGraph& g, const CurveSpec& c, const FaceTable& faces) {
    if (c.inside.empty()) throw Error(Errc::EmptyInterior, "no inside vertices");
    Fleeq fq;
    fq.in_mask.assign(g.vertex_capacity(), 0);
    for (int v : c.inside) {
        if (!g.has_vertex(v)) throw Error(Errc::UnknownVertex, "inside vertex " + std::to_string(v));
        if (!fq.in_mask[v]) ++fq.inside_count;
        fq.in_mask[v] = 1;
    }
    const auto& in = fq.in_mask;

    // connectivity of the induced subgraph
    {
        std::vector<char> seen(g.vertex_capacity(), 0);
        std::vector<int> st{c.inside[0]};
        seen[c.inside[0]] = 1;
        std::size_t reached = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int s = 0; s < 3; ++s) {
                int w = g.neighbor(v, s);
                if (w >= 0 && in[w] && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    st.push_back(w);
                }
            }
        }
        if (reached != fq.inside_count) throw Error(Errc::DisconnectedInterior, "inside vertices are not connected");
    }

    std::vector<int> crossing;
    std::unordered_map<int, int> per_face;
    for (int v : c.inside) {
        if (!in[v]) continue;
        for (int s = 0; s < 3; ++s) {
            int h = g.half_at(v, s);
            if (h < 0) throw Error(Errc::NonCubic, "vertex " + std::to_string(v) + " has an empty slot");
            if (!in[g.head(h)]) {
                if (std::find(crossing.begin(), crossing.end(), h) != crossing.end()) continue;
                crossing.push_back(h);
                if (++per_face[faces.face_of[h]] > 1)
                    throw Error(Errc::FaceCrossedTwice, "face " + std::to_string(faces.face_of[h]) + " meets the interior in two arcs");
            }
        }
    }
    if (crossing.size() < 3)
        throw Error(Errc::NotSimpleCurve, "curve crosses " + std::to_string(crossing.size()) + " edges");

    int h = crossing[0];
    do {
        int t = 1;
        int gh = g.prev(h);
        while (in[g.origin(gh)]) {
            ++t;
            gh = g.prev(gh);
            if (t > static_cast<int>(fq.inside_count) + 1) throw Error(Errc::Internal, "arc walk did not terminate");
        }
        fq.edges.push_back({h, PlaneGraph::edge_of(h), g.origin(h), g.head(h)});
        fq.arc_vertices.push_back(t);
        h = gh ^ 1;
        if (fq.edges.size() > crossing.size()) break;
    } while (h != crossing[0]);
    if (fq.edges.size() != crossing.size())
        throw Error(Errc::NotSimpleCurve, "interior boundary has more than one cycle");
    return fq;
}

FaceClassification classify(const PlaneGraph& g, const Fleeq& fq) { return classify(g, fq, g.faces()); }

FaceClassification classify(const PlaneGraph& g, const Fleeq& fq, const FaceTable& faces) {
    FaceClassification fc;
    const int m = static_cast<int>(fq.edges.size());
    const auto& in = fq.in_mask;
    std::set<int> cfaces;
    for (int i = 0; i < m; ++i) {
        int f = faces.face_of[fq.edges[i].half];
        int t = fq.arc_vertices[i];
        fc.face_ids.push_back(f);
        fc.size_before.push_back(faces.size[f]);
        fc.arc_vertices.push_back(t);
        cfaces.insert(f);
        FaceTag tag = t == 1 ? FaceTag::Augmented : (t == 2 ? FaceTag::Preserved : FaceTag::Shrinking);
        fc.tags.push_back(tag);
        if (tag == FaceTag::Augmented) ++fc.a;
        else if (tag == FaceTag::Preserved) ++fc.p;
        else ++fc.s;
    }
    std::set<int> bfaces, gc_edges;
    for (int v = 0; v < static_cast<int>(in.size()); ++v) {
        if (!in[v]) continue;
        for (int s = 0; s < 3; ++s) {
            int h = g.half_at(v, s);
            int f = faces.face_of[h];
            if (!cfaces.count(f)) bfaces.insert(f);
            gc_edges.insert(PlaneGraph::edge_of(h));
            if (in[g.head(h)] && v < g.head(h)) fc.inside_edges.push_back(PlaneGraph::edge_of(h));
        }
    }
    for (int f : bfaces) {
        fc.enclosed.push_back(f);
        fc.enclosed_sizes.push_back(faces.size[f]);
    }
    std::set<int> preserved;
    std::unordered_map<int, int> inside_edge_uses;
    for (int i = 0; i < m; ++i) {
        if (fc.tags[i] != FaceTag::Preserved) continue;
        int j = (i + 1) % m;
        preserved.insert(fq.edges[i].edge);
        preserved.insert(fq.edges[j].edge);
        int ie = PlaneGraph::edge_of(g.prev(fq.edges[i].half));
        preserved.insert(ie);
        if (++inside_edge_uses[ie] > 1) fc.shared_preserved_edge = true;
    }
    fc.preserved_edges.assign(preserved.begin(), preserved.end());
    for (int e : gc_edges)
        if (!preserved.count(e)) fc.nonpreserved_edges.push_back(e);
    return fc;
}

FlarbReport execute_flarb(PlaneGraph& g, const CurveSpec& c, long long lambda) {
    FaceTable before = g.faces();
    Fleeq fq = validate_flarbable(g, c, before);
    FaceClassification fc = classify(g, fq, before);

    FlarbReport r;
    const int m = static_cast<int>(fq.edges.size());
    r.F = m;
    r.B = static_cast<int>(fc.enclosed.size());
    r.P = fc.p;
    r.a = fc.a;
    r.s = fc.s;
    r.tags = fc.tags;
    r.face_before = fc.size_before;
    r.nonpreserved_edges = fc.nonpreserved_edges;
    r.shared_preserved_edge = fc.shared_preserved_edge;
    r.single_vertex = (m == 3 && fq.inside_count == 1);
    {
        std::set<int> gc;
        for (int e : fc.inside_edges) gc.insert(e);
        for (const auto& fe : fq.edges) gc.insert(fe.edge);
        r.sigma = static_cast<int>(gc.size() - fc.preserved_edges.size());
    }
    r.v_before = static_cast<long long>(g.vertex_count());
    r.cap = ceil_sqrt(r.v_before);
    r.phi_before = potential(g, before, lambda);
    const std::uint64_t links0 = g.link_count(), cuts0 = g.cut_count();

    std::vector<int> x(m), y(m), sx(m), sy(m);
    for (int i = 0; i < m; ++i) {
        x[i] = fq.edges[i].inside;
        y[i] = fq.edges[i].outside;
        sx[i] = g.slot_of(fq.edges[i].half);
        sy[i] = g.slot_of(fq.edges[i].half ^ 1);
    }

    // w_i := x_i where a preserved face allows it and no other index has claimed x_i
    std::vector<int> w(m, -1);
    std::unordered_map<int, int> claim;
    for (int i = 0; i < m; ++i) {
        if (fc.tags[i] != FaceTag::Preserved) continue;
        for (int idx : {i, (i + 1) % m}) {
            if (w[idx] >= 0) continue;
            auto it = claim.find(x[idx]);
            if (it != claim.end()) continue;
            claim[x[idx]] = idx;
            w[idx] = x[idx];
        }
    }
    std::vector<char> reused(m);
    for (int i = 0; i < m; ++i) reused[i] = w[i] >= 0;

    auto slot_y = [&](int i) { return reused[i] ? sx[i] : 0; };
    auto slot_next = [&](int i) { return reused[i] ? (sx[i] + 1) % 3 : 1; };
    auto slot_prev = [&](int i) { return reused[i] ? (sx[i] + 2) % 3 : 2; };

    // which C-edges already exist between reused vertices
    std::vector<char> cedge_kept(m, 0);
    std::set<int> keep;
    for (int i = 0; i < m; ++i) {
        if (reused[i]) keep.insert(fq.edges[i].edge);
        int j = (i + 1) % m;
        if (!reused[i] || !reused[j]) continue;
        int h = g.half_at(x[i], slot_next(i));
        if (h >= 0 && g.head(h) == x[j] && g.slot_of(h ^ 1) == slot_prev(j) &&
            !keep.count(PlaneGraph::edge_of(h))) {
            cedge_kept[i] = 1;
            keep.insert(PlaneGraph::edge_of(h));
        }
    }

    // cut everything else in G_C
    std::vector<int> to_cut;
    for (int e : fc.inside_edges)
        if (!keep.count(e)) to_cut.push_back(e);
    for (int i = 0; i < m; ++i)
        if (!reused[i]) to_cut.push_back(fq.edges[i].edge);
    std::sort(to_cut.begin(), to_cut.end());
    to_cut.erase(std::unique(to_cut.begin(), to_cut.end()), to_cut.end());
    for (int e : to_cut) g.cut(e);

    std::set<int> reused_vertices;
    for (int i = 0; i < m; ++i)
        if (reused[i]) reused_vertices.insert(w[i]);
    for (int v = 0; v < static_cast<int>(fq.in_mask.size()); ++v) {
        if (!fq.in_mask[v] || reused_vertices.count(v)) continue;
        if (g.degree(v) != 0) throw Error(Errc::Internal, "unused inside vertex still has edges");
        g.remove_vertex(v);
        r.removed_vertices.push_back(v);
    }
    for (int i = 0; i < m; ++i) {
        if (reused[i]) continue;
        w[i] = g.add_vertex();
        r.created_vertices.push_back(w[i]);
    }
    for (int i = 0; i < m; ++i) {
        if (!reused[i]) g.link({w[i], slot_y(i)}, {y[i], sy[i]});
    }
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        if (!cedge_kept[i]) g.link({w[i], slot_next(i)}, {w[j], slot_prev(j)});
    }

    r.links = g.link_count() - links0;
    r.cuts = g.cut_count() - cuts0;
    r.new_cycle = w;
    r.v_after = static_cast<long long>(g.vertex_count());

    FaceTable after = g.faces();
    if (!g.is_cubic()) throw Error(Errc::Internal, "flarb left a vertex of degree < 3");
    long long chi = static_cast<long long>(g.vertex_count()) - static_cast<long long>(g.edge_count()) +
                    static_cast<long long>(after.count());
    if (chi != 2) throw Error(Errc::Internal, "flarb broke Euler's formula");
    for (int i = 0; i < m; ++i) {
        int h = g.half_at(w[i], slot_y(i));
        int sz = after.size[after.face_of[h]];
        int expect = fc.size_before[i] + 2 - fc.arc_vertices[i];
        if (sz != expect)
            throw Error(Errc::Internal, "C-face " + std::to_string(i) + " has size " + std::to_string(sz) +
                                            ", expected " + std::to_string(expect));
        r.face_after.push_back(sz);
    }
    r.phi_after = potential(g, after, lambda);
    return r;
}

ShrinkageDetail shrinkage_detail(const FlarbReport& r) {
    ShrinkageDetail d;
    const int m = static_cast<int>(r.face_before.size());
    if (m == 0 || r.single_vertex) return d;
    auto small = [&](int i) { return r.face_before[i] < r.cap; };
    auto check_run = [&](const std::vector<int>& idx) {
        long long sum = 0, s = 0;
        for (int i : idx) {
            sum += r.face_before[i] - r.face_after[i];
            if (r.tags[i] == FaceTag::Shrinking) ++s;
        }
        ++d.runs;
        if (2 * sum < s) d.ok = false;
        long long deficit = (s + 1) / 2 - sum;
        d.worst_deficit = std::max(d.worst_deficit, deficit);
    };
    int first_large = -1;
    for (int i = 0; i < m; ++i)
        if (!small(i)) {
            first_large = i;
            break;
        }
    if (first_large < 0) {
        std::vector<int> all(m);
        for (int i = 0; i < m; ++i) all[i] = i;
        check_run(all);
        return d;
    }
    std::vector<int> run;
    for (int k = 1; k <= m; ++k) {
        int i = (first_large + k) % m;
        if (small(i)) {
            run.push_back(i);
        } else if (!run.empty()) {
            check_run(run);
            run.clear();
        }
    }
    if (!run.empty()) check_run(run);
    return d;
}

bool check_shrinkage(const FlarbReport& r) { return shrinkage_detail(r).ok; }

const char* flarb_csv_header() {
    return "step,V,F,B,P,a,s,sigma,links,cuts,phi_before,phi_after,V_after,cap,single,faces";
}

void write_flarb_csv_row(std::ostream& out, long long step, const FlarbReport& r) {
    out << step << ',' << r.v_before << ',' << r.F << ',' << r.B << ',' << r.P << ',' << r.a << ',' << r.s
        << ',' << r.sigma << ',' << r.links << ',' << r.cuts << ',' << r.phi_before << ',' << r.phi_after
        << ',' << r.v_after << ',' << r.cap << ',' << (r.single_vertex ? 1 : 0) << ',';
    for (std::size_t i = 0; i < r.face_before.size(); ++i) {
        if (i) out << ';';
        out << r.face_before[i] << ':' << r.face_after[i];
    }
    out << '\n';
}

}  // namespace flarb
