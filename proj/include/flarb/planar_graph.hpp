#pragma once
// Cubic plane graph as a rotation system. Every vertex owns three slots;
// slot order 0,1,2 is the counterclockwise rotation. Half-edge h has twin
// h^1 and belongs to edge h>>1.
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flarb/error.hpp"

namespace flarb {

struct SlotRef {
    int vertex;
    int slot;
};

struct FaceRef {
    int id;
    int size;
};

struct FaceTable {
    std::vector<int> face_of;       // per half-edge, -1 for dead half-edges
    std::vector<int> first_half;    // per face
    std::vector<int> size;          // per face
    std::size_t count() const { return size.size(); }
};

class PlaneGraph {
public:
    using Rotation = std::map<int, std::vector<int>>;  // ccw neighbour lists

    PlaneGraph() = default;

    static PlaneGraph build(const Rotation& rotation);

    // vertices
    int add_vertex();
    void remove_vertex(int v);  // all slots must be empty
    bool has_vertex(int v) const;
    std::size_t vertex_count() const { return live_vertices_; }
    int vertex_capacity() const { return static_cast<int>(slots_.size()); }
    std::vector<int> vertices() const;
    int degree(int v) const;

    // half-edges
    int half_at(int v, int slot) const;
    int origin(int h) const { return origin_[h]; }
    int head(int h) const { return origin_[h ^ 1]; }
    int slot_of(int h) const { return hslot_[h]; }
    static int twin(int h) { return h ^ 1; }
    static int edge_of(int h) { return h >> 1; }
    int next(int h) const;  // next half-edge on the face to the left of h
    int prev(int h) const;
    int neighbor(int v, int slot) const;
    int find_half(int u, int v) const;  // half-edge u->v or -1

    // edges
    bool has_edge(int e) const;
    std::size_t edge_count() const { return live_edges_; }
    int edge_capacity() const { return static_cast<int>(origin_.size() / 2); }
    std::vector<int> edges() const;

    int link(SlotRef a, SlotRef b);
    void cut(int e);

    std::uint64_t link_count() const { return links_; }
    std::uint64_t cut_count() const { return cuts_; }

    // checks
    bool is_cubic() const;
    FaceTable faces() const;
    void validate() const;  // cubic + connected + Euler; throws
    bool is_connected() const;

    Rotation rotation() const;
    std::string to_json() const;
    static PlaneGraph from_json(const std::string& text);

    PlaneGraph mirrored() const;

private:
    std::vector<std::array<int, 3>> slots_;
    std::vector<char> alive_;
    std::vector<int> origin_;
    std::vector<int> hslot_;
    std::vector<int> free_edges_;
    std::size_t live_vertices_ = 0;
    std::size_t live_edges_ = 0;
    std::uint64_t links_ = 0;
    std::uint64_t cuts_ = 0;
};

long long ceil_sqrt(long long n);

// lambda * sum over faces of min(ceil(sqrt|V|), |f|)
long long potential(const PlaneGraph& g, long long lambda);
long long potential(const PlaneGraph& g, const FaceTable& faces, long long lambda);

// Connected subgraph given by edge ids of g with all degrees in {1,2,3}.
// True iff |E| = 2 d1 + d2 + 3 F_H - 3, with F_H counted by tracing the
// faces of the induced sub-embedding.
bool degree123_edge_count_check(const PlaneGraph& g, const std::vector<int>& edge_ids);

// Embedding-respecting isomorphism. mapping[v1] = v2 for live vertices.
std::optional<std::vector<int>> find_isomorphism(const PlaneGraph& g1, const PlaneGraph& g2,
                                                 bool allow_mirror = true);
bool is_isomorphic(const PlaneGraph& g1, const PlaneGraph& g2, bool allow_mirror = true);

}  // namespace flarb
