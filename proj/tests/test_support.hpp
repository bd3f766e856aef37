#pragma once
// Small graph fixtures shared by the unit tests and the acceptance binary.
#include <algorithm>
#include <random>
#include <vector>

#include "flarb/planar_graph.hpp"

namespace fixtures {

inline flarb::PlaneGraph k4() {
    return flarb::PlaneGraph::build({{0, {1, 2, 3}}, {1, {0, 3, 2}}, {2, {0, 1, 3}}, {3, {0, 2, 1}}});
}

// triangles 0-1-2 (inner) and 3-4-5 (outer), spokes i -- i+3
inline flarb::PlaneGraph prism() {
    return flarb::PlaneGraph::build({{0, {1, 2, 3}},
                                     {1, {2, 0, 4}},
                                     {2, {0, 1, 5}},
                                     {3, {5, 4, 0}},
                                     {4, {3, 5, 1}},
                                     {5, {4, 3, 2}}});
}

inline void replace_neighbor(std::vector<int>& l, int from, int to) {
    for (int& x : l)
        if (x == from) {
            x = to;
            return;
        }
}

// Grows a random cubic plane graph from K4 by joining the midpoints of two
// edges on a common face.
inline flarb::PlaneGraph random_cubic(int target_vertices, std::mt19937_64& rng) {
    flarb::PlaneGraph g = k4();
    while (static_cast<int>(g.vertex_count()) + 2 <= target_vertices) {
        flarb::FaceTable ft = g.faces();
        std::uniform_int_distribution<int> pf(0, static_cast<int>(ft.count()) - 1);
        int f = pf(rng);
        std::vector<int> hs;
        int h = ft.first_half[f];
        do {
            hs.push_back(h);
            h = g.next(h);
        } while (h != ft.first_half[f]);
        std::uniform_int_distribution<int> ph(0, static_cast<int>(hs.size()) - 1);
        int i = ph(rng), j = ph(rng);
        if (i == j) continue;
        int u1 = g.origin(hs[i]), v1 = g.head(hs[i]);
        int u2 = g.origin(hs[j]), v2 = g.head(hs[j]);
        auto rot = g.rotation();
        int x = rot.rbegin()->first + 1, y = x + 1;
        replace_neighbor(rot[u1], v1, x);
        replace_neighbor(rot[v1], u1, x);
        replace_neighbor(rot[u2], v2, y);
        replace_neighbor(rot[v2], u2, y);
        bool done = false;
        for (int ox = 0; ox < 2 && !done; ++ox)
            for (int oy = 0; oy < 2 && !done; ++oy) {
                auto r = rot;
                r[x] = ox ? std::vector<int>{u1, v1, y} : std::vector<int>{v1, u1, y};
                r[y] = oy ? std::vector<int>{u2, v2, x} : std::vector<int>{v2, u2, x};
                try {
                    flarb::PlaneGraph cand = flarb::PlaneGraph::build(r);
                    cand.validate();
                    g = std::move(cand);
                    done = true;
                } catch (const flarb::Error&) {
                }
            }
    }
    return g;
}

// Random connected vertex set grown by BFS-like accretion.
inline std::vector<int> random_connected_set(const flarb::PlaneGraph& g, int size, std::mt19937_64& rng) {
    std::vector<int> vs = g.vertices();
    std::uniform_int_distribution<std::size_t> pv(0, vs.size() - 1);
    std::vector<int> set{vs[pv(rng)]};
    std::vector<char> in(g.vertex_capacity(), 0);
    in[set[0]] = 1;
    while (static_cast<int>(set.size()) < size) {
        std::vector<int> frontier;
        for (int v : set)
            for (int s = 0; s < 3; ++s) {
                int w = g.neighbor(v, s);
                if (w >= 0 && !in[w]) frontier.push_back(w);
            }
        if (frontier.empty()) break;
        std::uniform_int_distribution<std::size_t> pw(0, frontier.size() - 1);
        int w = frontier[pw(rng)];
        in[w] = 1;
        set.push_back(w);
    }
    return set;
}

}  // namespace fixtures
