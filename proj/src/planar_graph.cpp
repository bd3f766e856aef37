#include "flarb/planar_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace flarb {

using json = nlohmann::json;

long long ceil_sqrt(long long n) {
    if (n <= 0) return 0;
    long long r = 0;
    while (r * r < n) ++r;
    return r;
}

PlaneGraph PlaneGraph::build(const Rotation& rotation) {
    int max_id = -1;
    for (const auto& [v, nb] : rotation) {
        if (v < 0) throw Error(Errc::UnknownVertex, "negative vertex id");
        max_id = std::max(max_id, v);
        if (nb.size() != 3) throw Error(Errc::NonCubic, "vertex " + std::to_string(v) + " has degree " + std::to_string(nb.size()));
        if (nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2])
            throw Error(Errc::NonCubic, "vertex " + std::to_string(v) + " repeats a neighbour");
        for (int w : nb)
            if (w == v) throw Error(Errc::NonCubic, "self loop at " + std::to_string(v));
    }
    for (const auto& [v, nb] : rotation) {
        for (int w : nb) {
            auto it = rotation.find(w);
            if (it == rotation.end() || std::count(it->second.begin(), it->second.end(), v) != 1)
                throw Error(Errc::AsymmetricAdjacency,
                            std::to_string(v) + " lists " + std::to_string(w) + " but not vice versa");
        }
    }
    PlaneGraph g;
    g.slots_.assign(max_id + 1, {-1, -1, -1});
    g.alive_.assign(max_id + 1, 0);
    for (const auto& [v, nb] : rotation) {
        g.alive_[v] = 1;
        ++g.live_vertices_;
    }
    for (const auto& [v, nb] : rotation) {
        for (int i = 0; i < 3; ++i) {
            int w = nb[i];
            if (w < v) continue;
            const auto& nw = rotation.at(w);
            int j = static_cast<int>(std::find(nw.begin(), nw.end(), v) - nw.begin());
            int e = static_cast<int>(g.origin_.size() / 2);
            g.origin_.push_back(v);
            g.origin_.push_back(w);
            g.hslot_.push_back(i);
            g.hslot_.push_back(j);
            g.slots_[v][i] = 2 * e;
            g.slots_[w][j] = 2 * e + 1;
            ++g.live_edges_;
        }
    }
    g.validate();
    return g;
}

int PlaneGraph::add_vertex() {
    slots_.push_back({-1, -1, -1});
    alive_.push_back(1);
    ++live_vertices_;
    return static_cast<int>(slots_.size()) - 1;
}

void PlaneGraph::remove_vertex(int v) {
    if (!has_vertex(v)) throw Error(Errc::UnknownVertex, "remove_vertex " + std::to_string(v));
    for (int s : slots_[v])
        if (s >= 0) throw Error(Errc::InvalidSlot, "remove_vertex on a vertex with edges");
    alive_[v] = 0;
    --live_vertices_;
}

bool PlaneGraph::has_vertex(int v) const {
    return v >= 0 && v < static_cast<int>(alive_.size()) && alive_[v];
}

std::vector<int> PlaneGraph::vertices() const {
    std::vector<int> out;
    out.reserve(live_vertices_);
    for (int v = 0; v < static_cast<int>(alive_.size()); ++v)
        if (alive_[v]) out.push_back(v);
    return out;
}

int PlaneGraph::degree(int v) const {
    if (!has_vertex(v)) throw Error(Errc::UnknownVertex, std::to_string(v));
    int d = 0;
    for (int s : slots_[v]) d += s >= 0;
    return d;
}

int PlaneGraph::half_at(int v, int slot) const { return slots_[v][slot]; }

int PlaneGraph::next(int h) const {
    int v = head(h);
    int s = hslot_[h ^ 1];
    return slots_[v][(s + 2) % 3];
}

int PlaneGraph::prev(int h) const {
    int u = origin_[h];
    int g = slots_[u][(hslot_[h] + 1) % 3];
    return g < 0 ? -1 : (g ^ 1);
}

int PlaneGraph::neighbor(int v, int slot) const {
    int h = slots_[v][slot];
    return h < 0 ? -1 : head(h);
}

int PlaneGraph::find_half(int u, int v) const {
    if (!has_vertex(u)) return -1;
    for (int h : slots_[u])
        if (h >= 0 && head(h) == v) return h;
    return -1;
}

bool PlaneGraph::has_edge(int e) const {
    return e >= 0 && 2 * e + 1 < static_cast<int>(origin_.size()) && origin_[2 * e] >= 0;
}

std::vector<int> PlaneGraph::edges() const {
    std::vector<int> out;
    out.reserve(live_edges_);
    for (int e = 0; e < edge_capacity(); ++e)
        if (origin_[2 * e] >= 0) out.push_back(e);
    return out;
}

int PlaneGraph::link(SlotRef a, SlotRef b) {
    for (const SlotRef& r : {a, b}) {
        if (!has_vertex(r.vertex)) throw Error(Errc::InvalidSlot, "link to unknown vertex " + std::to_string(r.vertex));
        if (r.slot < 0 || r.slot > 2) throw Error(Errc::InvalidSlot, "slot out of range");
        if (slots_[r.vertex][r.slot] >= 0)
            throw Error(Errc::InvalidSlot, "slot " + std::to_string(r.slot) + " of " + std::to_string(r.vertex) + " occupied");
    }
    if (a.vertex == b.vertex) throw Error(Errc::InvalidSlot, "self loop");
    int e;
    if (!free_edges_.empty()) {
        e = free_edges_.back();
        free_edges_.pop_back();
    } else {
        e = static_cast<int>(origin_.size() / 2);
        origin_.push_back(-1);
        origin_.push_back(-1);
        hslot_.push_back(-1);
        hslot_.push_back(-1);
    }
    origin_[2 * e] = a.vertex;
    origin_[2 * e + 1] = b.vertex;
    hslot_[2 * e] = a.slot;
    hslot_[2 * e + 1] = b.slot;
    slots_[a.vertex][a.slot] = 2 * e;
    slots_[b.vertex][b.slot] = 2 * e + 1;
    ++live_edges_;
    ++links_;
    return e;
}

void PlaneGraph::cut(int e) {
    if (!has_edge(e)) throw Error(Errc::UnknownEdge, "cut " + std::to_string(e));
    for (int h : {2 * e, 2 * e + 1}) {
        slots_[origin_[h]][hslot_[h]] = -1;
        origin_[h] = -1;
        hslot_[h] = -1;
    }
    free_edges_.push_back(e);
    --live_edges_;
    ++cuts_;
}

bool PlaneGraph::is_cubic() const {
    for (int v = 0; v < static_cast<int>(alive_.size()); ++v)
        if (alive_[v])
            for (int s : slots_[v])
                if (s < 0) return false;
    return true;
}

FaceTable PlaneGraph::faces() const {
    FaceTable t;
    t.face_of.assign(origin_.size(), -1);
    for (int h0 = 0; h0 < static_cast<int>(origin_.size()); ++h0) {
        if (origin_[h0] < 0 || t.face_of[h0] >= 0) continue;
        int f = static_cast<int>(t.size.size());
        int len = 0, h = h0;
        do {
            if (h < 0) throw Error(Errc::Internal, "face walk hit an empty slot");
            t.face_of[h] = f;
            ++len;
            h = next(h);
        } while (h != h0);
        t.first_half.push_back(h0);
        t.size.push_back(len);
    }
    return t;
}

bool PlaneGraph::is_connected() const {
    std::vector<int> vs = vertices();
    if (vs.empty()) return true;
    std::vector<char> seen(alive_.size(), 0);
    std::vector<int> stack{vs[0]};
    seen[vs[0]] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int h : slots_[v]) {
            if (h < 0) continue;
            int w = head(h);
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == live_vertices_;
}

void PlaneGraph::validate() const {
    if (!is_cubic()) throw Error(Errc::NonCubic, "vertex with an empty slot");
    if (!is_connected()) throw Error(Errc::NonPlanarEmbedding, "graph is disconnected");
    FaceTable f = faces();
    long long chi = static_cast<long long>(live_vertices_) - static_cast<long long>(live_edges_) +
                    static_cast<long long>(f.count());
    if (chi != 2) throw Error(Errc::NonPlanarEmbedding, "Euler characteristic " + std::to_string(chi));
}

PlaneGraph::Rotation PlaneGraph::rotation() const {
    Rotation r;
    for (int v : vertices()) {
        std::vector<int> nb;
        for (int s = 0; s < 3; ++s) nb.push_back(neighbor(v, s));
        r[v] = nb;
    }
    return r;
}

std::string PlaneGraph::to_json() const {
    json j;
    j["vertices"] = vertices();
    json rot = json::object();
    for (const auto& [v, nb] : rotation()) rot[std::to_string(v)] = nb;
    j["rotation"] = rot;
    return j.dump();
}

PlaneGraph PlaneGraph::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
    if (!j.contains("vertices") || !j.contains("rotation"))
        throw Error(Errc::ParseError, "graph JSON needs 'vertices' and 'rotation'");
    Rotation r;
    try {
        for (int v : j["vertices"].get<std::vector<int>>()) {
            auto key = std::to_string(v);
            if (!j["rotation"].contains(key)) throw Error(Errc::NonCubic, "vertex " + key + " has no rotation");
            r[v] = j["rotation"][key].get<std::vector<int>>();
        }
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
    return build(r);
}

PlaneGraph PlaneGraph::mirrored() const {
    PlaneGraph m = *this;
    for (int v = 0; v < static_cast<int>(m.slots_.size()); ++v) {
        if (!m.alive_[v]) continue;
        std::swap(m.slots_[v][1], m.slots_[v][2]);
        for (int s = 0; s < 3; ++s)
            if (m.slots_[v][s] >= 0) m.hslot_[m.slots_[v][s]] = s;
    }
    return m;
}

long long potential(const PlaneGraph& g, const FaceTable& faces, long long lambda) {
    long long cap = ceil_sqrt(static_cast<long long>(g.vertex_count()));
    long long sum = 0;
    for (int s : faces.size) sum += std::min<long long>(cap, s);
    return lambda * sum;
}

long long potential(const PlaneGraph& g, long long lambda) { return potential(g, g.faces(), lambda); }

bool degree123_edge_count_check(const PlaneGraph& g, const std::vector<int>& edge_ids) {
    std::set<int> E(edge_ids.begin(), edge_ids.end());
    if (E.empty()) throw Error(Errc::Disconnected, "empty subgraph");
    std::unordered_map<int, int> deg;
    for (int e : E) {
        if (!g.has_edge(e)) throw Error(Errc::UnknownEdge, std::to_string(e));
        deg[g.origin(2 * e)]++;
        deg[g.origin(2 * e + 1)]++;
    }
    // connectivity
    std::unordered_map<int, std::vector<int>> adj;
    for (int e : E) {
        adj[g.origin(2 * e)].push_back(g.origin(2 * e + 1));
        adj[g.origin(2 * e + 1)].push_back(g.origin(2 * e));
    }
    std::set<int> seen{adj.begin()->first};
    std::vector<int> st{adj.begin()->first};
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int w : adj[v])
            if (seen.insert(w).second) st.push_back(w);
    }
    if (seen.size() != adj.size()) throw Error(Errc::Disconnected, "subgraph is disconnected");

    auto in_sub = [&](int h) { return h >= 0 && E.count(PlaneGraph::edge_of(h)) > 0; };
    auto sub_next = [&](int h) {
        int v = g.head(h);
        int s = g.slot_of(h ^ 1);
        for (int j = 2; j >= 0; --j) {
            int c = g.half_at(v, (s + j) % 3);
            if (in_sub(c)) return c;
        }
        return h ^ 1;
    };
    std::set<int> visited;
    int face_count = 0;
    for (int e : E) {
        for (int h0 : {2 * e, 2 * e + 1}) {
            if (visited.count(h0)) continue;
            ++face_count;
            int h = h0;
            do {
                visited.insert(h);
                h = sub_next(h);
            } while (h != h0);
        }
    }
    long long d1 = 0, d2 = 0;
    for (auto& [v, d] : deg) {
        if (d == 1) ++d1;
        else if (d == 2) ++d2;
    }
    long long bounded = face_count - 1;
    return static_cast<long long>(E.size()) == 2 * d1 + d2 + 3 * bounded - 3;
}

namespace {

// Matches darts of g1 onto g2 (same orientation) starting from d1 -> d2.
bool grow_match(const PlaneGraph& g1, const PlaneGraph& g2, int d1, int d2, std::vector<int>& map12,
                std::vector<int>& map21, std::vector<int>& touched) {
    for (int h : touched) {
        map21[map12[h]] = -1;
        map12[h] = -1;
    }
    touched.clear();
    std::vector<std::pair<int, int>> stack{{d1, d2}};
    auto rot = [](const PlaneGraph& g, int h) {
        int v = g.origin(h);
        return g.half_at(v, (g.slot_of(h) + 1) % 3);
    };
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (map12[a] >= 0) {
            if (map12[a] != b) return false;
            continue;
        }
        if (map21[b] >= 0) return false;
        map12[a] = b;
        map21[b] = a;
        touched.push_back(a);
        stack.push_back({a ^ 1, b ^ 1});
        stack.push_back({rot(g1, a), rot(g2, b)});
    }
    return true;
}

std::vector<long long> dart_keys(const PlaneGraph& g, const FaceTable& ft) {
    std::vector<long long> key(2 * g.edge_capacity(), -1);
    for (int h = 0; h < 2 * g.edge_capacity(); ++h) {
        if (!g.has_edge(h >> 1)) continue;
        long long l = ft.size[ft.face_of[h]], r = ft.size[ft.face_of[h ^ 1]];
        key[h] = l * 1000003LL + r;
    }
    return key;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const PlaneGraph& g1, const PlaneGraph& g2,
                                                 bool allow_mirror) {
    if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return std::nullopt;
    if (g1.edge_count() == 0) {
        if (g1.vertex_count() != 1) return std::nullopt;
        std::vector<int> m(g1.vertex_capacity(), -1);
        m[g1.vertices()[0]] = g2.vertices()[0];
        return m;
    }
    FaceTable f1 = g1.faces();
    std::vector<long long> k1 = dart_keys(g1, f1);
    std::unordered_map<long long, int> hist1;
    for (long long k : k1)
        if (k >= 0) hist1[k]++;

    std::vector<const PlaneGraph*> targets{&g2};
    PlaneGraph mirror;
    if (allow_mirror) {
        mirror = g2.mirrored();
        targets.push_back(&mirror);
    }
    for (const PlaneGraph* t : targets) {
        FaceTable f2 = t->faces();
        if (f2.count() != f1.count()) return std::nullopt;
        std::vector<long long> k2 = dart_keys(*t, f2);
        std::unordered_map<long long, int> hist2;
        for (long long k : k2)
            if (k >= 0) hist2[k]++;
        if (hist1 != hist2) continue;
        // rarest class
        long long best_key = -1;
        int best_count = -1;
        for (auto& [k, c] : hist1)
            if (best_count < 0 || c < best_count || (c == best_count && k < best_key)) {
                best_key = k;
                best_count = c;
            }
        int d1 = -1;
        for (int h = 0; h < static_cast<int>(k1.size()); ++h)
            if (k1[h] == best_key) {
                d1 = h;
                break;
            }
        std::vector<int> map12(k1.size(), -1), map21(k2.size(), -1), touched;
        for (int d2 = 0; d2 < static_cast<int>(k2.size()); ++d2) {
            if (k2[d2] != best_key) continue;
            if (!grow_match(g1, *t, d1, d2, map12, map21, touched)) continue;
            if (touched.size() != 2 * g1.edge_count()) continue;
            std::vector<int> vmap(g1.vertex_capacity(), -1);
            for (int h : touched) vmap[g1.origin(h)] = t->origin(map12[h]);
            return vmap;
        }
    }
    return std::nullopt;
}

bool is_isomorphic(const PlaneGraph& g1, const PlaneGraph& g2, bool allow_mirror) {
    return find_isomorphism(g1, g2, allow_mirror).has_value();
}

}  // namespace flarb
