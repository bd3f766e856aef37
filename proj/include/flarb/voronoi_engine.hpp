#pragma once
// Voronoi diagram of sites in convex position, kept as a marked tree of
// Voronoi vertices (internal vertices plus one leaf per hull edge). Site
// insertion re-shapes the tree with a flarb whose cost is proportional to
// the number of non-preserved edges.
#include <array>
#include <cstdint>
#include <memory>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "flarb/circle_store.hpp"
#include "flarb/flarb_engine.hpp"
#include "flarb/grappa_tree.hpp"
#include "flarb/planar_graph.hpp"
#include "flarb/predicates.hpp"

namespace flarb {

struct InsertReport {
    int site = -1;
    bool bootstrap = false;       // handled by rebuilding a diagram of <= 3 sites
    int sigma = 0;                // shadow edges
    int rq = 0;                   // |R_q|
    int v_in = 0;                 // vertices inside the new cell (leaf included)
    int F = 0, B = 0, P = 0;      // fleeq size (ring edges included), enclosed faces, preserved faces
    int a = 0, s = 0;
    std::uint64_t links = 0, cuts = 0;
    int path_searches = 0;
    std::uint64_t oracle_calls = 0;
    int bent_edges = 0;
    int candidates = 0;           // edges tested for preservation
    int combs = 0;                // reused preserved components
    long long tree_vertices_before = 0, tree_vertices_after = 0;
    std::uint64_t cost() const { return links + cuts; }

    // audit results (filled when auditing)
    bool audited = false;
    bool shadow_matches_faces = true;     // shadow set == face-count non-preserved set
    bool shadow_matches_halin = true;     // shadow set == classify() on the Halin graph (tree edges)
    bool roots_match = true;              // circle store == internal path roots
    bool halin_isomorphic = true;         // flarb of the Halin graph == Halin graph of the new tree
    std::optional<FlarbReport> halin;     // execute_flarb on the Halin graph
};

struct VoronoiVertex {
    bool alive = false;
    bool leaf = false;
    int a = -1, b = -1, c = -1;  // internal: ccw definers; leaf: hull edge (a, b = next of a)
};

class VoronoiDiagram {
public:
    explicit VoronoiDiagram(CircleBackend backend = CircleBackend::Scan);

    static VoronoiDiagram init(const std::vector<Site>& sites, CircleBackend backend = CircleBackend::Scan);

    InsertReport insert(const Site& q, bool audit = false);

    int nearest_site(const Site& p);
    bool delaunay_adjacent(int p, int q);

    std::string export_json() const;
    static VoronoiDiagram import_json(const std::string& text, CircleBackend backend = CircleBackend::Scan);

    std::size_t site_count() const { return sites_.size(); }
    const std::vector<Site>& sites() const { return sites_; }
    std::vector<int> hull_order() const;  // ccw, starting at site 0
    std::size_t tree_vertex_count() const { return tree_.vertex_count(); }
    std::size_t tree_edge_count() const { return tree_.edge_count(); }

    // Halin closure of the tree: leaves joined in hull order. Requires >= 3
    // sites. map_out[tree vertex] = graph vertex.
    PlaneGraph halin_graph(std::vector<int>* map_out = nullptr);

    // Full consistency check of tree, marks and circle store. Throws Internal.
    void check_invariants();

    std::uint64_t oracle_calls() const { return tree_.oracle_calls(); }

private:
    CircleBackend backend_;
    std::vector<Site> sites_;
    std::vector<int> hnext_, hprev_;
    std::vector<int> leaf_of_;  // leaf for hull edge (s, hnext s)
    std::vector<VoronoiVertex> vx_;
    mutable GrappaTree tree_;
    std::unordered_set<std::string> site_keys_;
    std::unique_ptr<CircleStore> store_;

    VoronoiDiagram(const VoronoiDiagram&) = delete;

public:
    VoronoiDiagram(VoronoiDiagram&&) noexcept;
    VoronoiDiagram& operator=(VoronoiDiagram&&) noexcept;
    ~VoronoiDiagram();

private:
    int new_vertex(bool leaf, int a, int b, int c);
    void kill_vertex(int v);
    void set_definers(int v, int a, int b, int c);
    void install_root_events();
    void bootstrap(const std::vector<Site>& sites);
    bool inside(int v, const Site& q, int rho) const;
    bool internal(int v) const { return vx_[v].alive && !vx_[v].leaf; }
    std::vector<int> definers(int v) const;
    int edge_with_mark(int v, int skip_edge, int site) const;
    std::pair<Mark, Mark> marks_of(int e) const { return tree_.get_marks(e); }
    Point center(int v) const;
    Point outward(int s) const;
};

// Brute-force reference: Delaunay triangulation of a convex polygon by gift
// wrapping, exported in the same canonical JSON as VoronoiDiagram.
std::string reference_voronoi_json(const std::vector<Site>& sites);
// O(n^4) empty-circle enumeration of Delaunay triangles (sorted site triples).
std::set<std::array<int, 3>> brute_force_delaunay_triangles(const std::vector<Site>& sites);
std::set<std::array<int, 3>> gift_wrap_delaunay_triangles(const std::vector<Site>& sites);

}  // namespace flarb
