#include "flarb/lower_bound_gen.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace flarb {

namespace {

// Triangulation of the polygon 0..L-1 (ccw) together with the vertex subset P
// whose sub-polygon is cut out by the curve, and the rotation r with
// rho(x) = x + r.
struct Staircase {
    int L = 0;
    std::vector<char> in_p;
    std::vector<std::pair<int, int>> chords;
};

Staircase staircase(int k) {
    Staircase s;
    const int L = k * (k + 1);
    s.L = L;
    s.in_p.assign(L, 0);
    if (k == 2) {
        std::fill(s.in_p.begin(), s.in_p.end(), 1);
        s.chords = {{1, 3}, {0, 3}, {3, 5}};
        return s;
    }
    for (int j = 0; j <= k; ++j) s.in_p[j * k] = 1;
    auto interval = [&](int j, int lo, int hi) {
        for (int e = lo; e <= hi; ++e) s.in_p[(j * k + e) % L] = 1;
    };
    interval(0, 1, k - 1);
    for (int j = 1; j <= k - 2; ++j) interval(j, 1, k - 1 - j);
    interval(k, 1, k - 1);

    std::vector<int> pos(L, -1);
    int n = 0;
    for (int v = 0; v < L; ++v)
        if (s.in_p[v]) pos[v] = n++;
    auto strictly_inside = [&](int a, int b) {
        if (pos[a] < 0 || pos[b] < 0) return false;
        int d = ((pos[b] - pos[a]) % n + n) % n;
        return d != 1 && d != n - 1;
    };
    const int r = k;
    std::set<std::pair<int, int>> chords;
    for (int v = 0; v < L; ++v) {
        if (!s.in_p[v] || v == 0 || v == 1 || v == L - 1) continue;
        int a = 0, b = v;
        for (int i = 1; i <= L; ++i) {
            a = ((a - r) % L + L) % L;
            b = ((b - r) % L + L) % L;
            chords.insert({std::min(a, b), std::max(a, b)});
            if (strictly_inside(a, b)) break;
        }
    }
    s.chords.assign(chords.begin(), chords.end());
    return s;
}

void check_staircase(const Staircase& s) {
    const int L = s.L;
    if (static_cast<int>(s.chords.size()) != L - 3)
        throw Error(Errc::Internal, "triangulation has " + std::to_string(s.chords.size()) + " chords");
    for (std::size_t i = 0; i < s.chords.size(); ++i)
        for (std::size_t j = i + 1; j < s.chords.size(); ++j) {
            auto [a, b] = s.chords[i];
            auto [c, d] = s.chords[j];
            if (a == c || a == d || b == c || b == d) continue;
            if ((a < c && c < b) != (a < d && d < b)) throw Error(Errc::Internal, "crossing chords");
        }
}

std::vector<std::set<int>> adjacency(const Staircase& s) {
    std::vector<std::set<int>> adj(s.L);
    for (int i = 0; i < s.L; ++i) {
        adj[i].insert((i + 1) % s.L);
        adj[(i + 1) % s.L].insert(i);
    }
    for (auto [a, b] : s.chords) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    return adj;
}

}  // namespace

long long lower_bound_vertex_count(int k) { return 2LL * k * (k + 1) - 2; }

LowerBoundInstance build_lower_bound(int k) {
    if (k < 2) throw Error(Errc::InvalidK, "k must be at least 2");
    Staircase s = staircase(k);
    check_staircase(s);
    const int L = s.L;
    auto adj = adjacency(s);

    // the sub-polygon boundary must be made of edges
    std::vector<int> p_vertices;
    for (int v = 0; v < L; ++v)
        if (s.in_p[v]) p_vertices.push_back(v);
    for (std::size_t i = 0; i < p_vertices.size(); ++i) {
        int a = p_vertices[i], b = p_vertices[(i + 1) % p_vertices.size()];
        if (!adj[a].count(b)) throw Error(Errc::Internal, "curve boundary is not a chord");
    }

    // triangles with a < b < c are ccw
    std::vector<std::array<int, 3>> tris;
    for (int a = 0; a < L; ++a) {
        std::vector<int> up(adj[a].upper_bound(a), adj[a].end());
        for (std::size_t i = 0; i + 1 < up.size(); ++i) tris.push_back({a, up[i], up[i + 1]});
    }
    if (static_cast<int>(tris.size()) != L - 2) throw Error(Errc::Internal, "bad triangle count");

    // Halin graph: polygon triangles are ids 0..L-3, the apex triangle on
    // polygon edge (i, i+1) is id L-2+i
    auto apex = [&](int i) { return L - 2 + ((i % L) + L) % L; };
    std::map<std::pair<int, int>, std::vector<int>> chord_tris;
    for (int t = 0; t < L - 2; ++t)
        for (int e = 0; e < 3; ++e) {
            int u = tris[t][e], v = tris[t][(e + 1) % 3];
            chord_tris[{std::min(u, v), std::max(u, v)}].push_back(t);
        }
    auto other_side = [&](int t, int u, int v) {
        int lo = std::min(u, v), hi = std::max(u, v);
        if (hi - lo == 1) return apex(lo);
        if (lo == 0 && hi == L - 1) return apex(L - 1);
        const auto& ts = chord_tris.at({lo, hi});
        return ts[0] == t ? ts[1] : ts[0];
    };

    PlaneGraph::Rotation rot;
    for (int t = 0; t < L - 2; ++t) {
        auto [a, b, c] = tris[t];
        rot[t] = {other_side(t, a, b), other_side(t, b, c), other_side(t, c, a)};
    }
    for (int i = 0; i < L; ++i) {
        int j = (i + 1) % L;
        int poly = chord_tris.count({std::min(i, j), std::max(i, j)}) ? chord_tris.at({std::min(i, j), std::max(i, j)})[0]
                                                                       : -1;
        if (poly < 0) throw Error(Errc::Internal, "polygon edge without triangle");
        rot[apex(i)] = {poly, apex(i - 1), apex(i + 1)};
    }

    LowerBoundInstance inst;
    inst.k = k;
    inst.polygon = L;
    inst.graph = PlaneGraph::build(rot);
    for (int t = 0; t < L - 2; ++t)
        if (s.in_p[tris[t][0]] && s.in_p[tris[t][1]] && s.in_p[tris[t][2]]) inst.curve.inside.push_back(t);
    inst.curve.inside.push_back(apex(L - 1));
    inst.curve.inside.push_back(apex(0));
    if (static_cast<long long>(inst.graph.vertex_count()) != lower_bound_vertex_count(k))
        throw Error(Errc::Internal, "vertex count mismatch");
    return inst;
}

std::vector<LowerBoundRound> run_lower_bound_cycle(int k, int rounds) {
    if (rounds < 1) throw Error(Errc::BadConfig, "rounds must be at least 1");
    LowerBoundInstance inst = build_lower_bound(k);
    const PlaneGraph original = inst.graph;
    PlaneGraph g = inst.graph;
    CurveSpec curve = inst.curve;
    std::vector<LowerBoundRound> out;
    for (int i = 0; i < rounds; ++i) {
        LowerBoundRound round;
        round.report = execute_flarb(g, curve);
        auto m = find_isomorphism(original, g);
        round.isomorphic = m.has_value();
        out.push_back(round);
        if (!m) {
            if (i + 1 < rounds) throw Error(Errc::Internal, "flarb result is not isomorphic to the input");
            break;
        }
        curve.inside.clear();
        for (int v : inst.curve.inside) curve.inside.push_back((*m)[v]);
    }
    return out;
}

std::vector<FlarbReport> run_cycle(int k, int rounds) {
    std::vector<FlarbReport> out;
    for (auto& r : run_lower_bound_cycle(k, rounds)) out.push_back(std::move(r.report));
    return out;
}

}  // namespace flarb
