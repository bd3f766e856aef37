#pragma once
// Rooted dynamic forest with per-edge left/right marks, evert, and
// oracle-guided edge search. Self-adjusting (splay-based link-cut) paths:
// every tree edge is a node of its own, sitting just before its lower
// endpoint on that endpoint's preferred path.
//
// Queries splay, so every member function is mutating.
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "flarb/error.hpp"

namespace flarb {

using Mark = long long;
constexpr Mark kNoMark = -1;

struct EdgeQuery {
    int f = -1;          // edge under test
    int f2 = -1;         // another edge at `shared`, or -1
    int shared = -1;     // vertex common to f and f2
    Mark f_left = kNoMark, f_right = kNoMark;
    Mark f2_left = kNoMark, f2_right = kNoMark;
    bool shared_is_upper = false;  // shared is f's endpoint nearer the root
};

// True iff the sought edge lies in the component of T - f that contains
// `shared` (equivalently f2, when given).
using EdgeOracle = std::function<bool(const EdgeQuery&)>;

struct SearchResult {
    int edge;
    Mark left, right;
};

class GrappaTree {
public:
    using RootEvent = std::function<void(int vertex, bool becomes_path_root)>;

    void set_root_event(RootEvent cb) { on_root_ = std::move(cb); }

    void make_tree(int v);
    bool has_vertex(int v) const;
    bool has_edge(int e) const;

    // w becomes a child of v. w must be the root of a different tree.
    int link(int v, int w, Mark left = kNoMark, Mark right = kNoMark);
    void cut(int e);
    void evert(int v);
    // Drops an isolated vertex.
    void remove_vertex(int v);

    void left_mark(int v, Mark m);
    void right_mark(int v, Mark m);
    std::pair<Mark, Mark> get_marks(int e);

    int find_root(int v);
    int parent_edge(int v);   // -1 at the root
    int parent(int v);        // -1 at the root
    int upper(int e);
    int lower(int e);
    std::pair<int, int> endpoints(int e) const;
    const std::vector<int>& incident(int v) const;
    int other_end(int e, int v) const;

    std::optional<SearchResult> oracle_search(int v, const EdgeOracle& oracle);

    // Search restricted to the preferred path containing v. Returns nullopt
    // when the descent runs off the path.
    std::optional<SearchResult> path_search(int v, const EdgeOracle& oracle);

    // Ordered walk over v's preferred path, top first. The callback gets
    // (is_edge, id) and returns false to stop.
    void path_walk(int v, const std::function<bool(bool, int)>& cb);
    int path_root(int v);     // first vertex of v's preferred path
    int path_up_edge(int v);  // v's parent edge (-1 at root)
    int path_down_edge(int v);  // preferred child edge or -1

    // Recomputes path roots from scratch without restructuring.
    std::vector<int> path_roots_brute() const;

    std::uint64_t oracle_calls() const { return oracle_calls_; }
    void reset_oracle_calls() { oracle_calls_ = 0; }
    std::size_t vertex_count() const { return live_vertices_; }
    std::size_t edge_count() const { return live_edges_; }

private:
    struct Node {
        int ch[2] = {-1, -1};
        int p = -1;
        bool is_edge = false;
        int id = -1;
        bool flip = false;
        bool has_tag_l = false, has_tag_r = false;
        Mark tag_l = kNoMark, tag_r = kNoMark;
        int first_v = -1, last_v = -1;  // node indices
        int first_n = -1, last_n = -1;
        // edge
        int upper = -1, lower = -1;
        Mark left = kNoMark, right = kNoMark;
        // vertex
        int up = -1, down = -1;  // edge ids
    };

    std::vector<Node> t_;
    std::vector<int> vnode_, enode_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> ends_;
    std::vector<int> free_nodes_;
    std::size_t live_vertices_ = 0, live_edges_ = 0;
    std::uint64_t oracle_calls_ = 0;
    RootEvent on_root_;

    int new_node();
    int vn(int v) const;
    int en(int e) const;
    bool is_aux_root(int x) const;
    void apply_flip(int x);
    void apply_tag(int x, bool left_side, Mark m);
    void push(int x);
    void pull(int x);
    void rotate(int x);
    void splay(int x);
    void access(int v);
    void fire(int vnode, bool becomes);
    Node peek(int x) const;
    bool ask(const EdgeOracle& oracle, int f, int f2, int shared, bool shared_is_upper);
    int other_incident(int v, int e) const;
};

}  // namespace flarb
