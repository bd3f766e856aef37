#include "flarb/voronoi_engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

namespace flarb {
namespace {

using json = nlohmann::json;

int osign(Orientation o) { return static_cast<int>(o); }

Point sub(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point add(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }

int cross_sign(const Point& a, const Point& b) {
    mpq_class c = a.x * b.y - a.y * b.x;
    return sgn(c);
}

// Side of the query point p + e(1,0) + e^2(0,1) w.r.t. the line a->b, for an
// infinitesimal e > 0. Never zero.
int orient_pert(const Point& a, const Point& b, const Point& p) {
    int s = osign(orientation(a, b, p));
    if (s != 0) return s;
    mpq_class dy = b.y - a.y;
    if (sgn(dy) != 0) return -sgn(dy);
    mpq_class dx = b.x - a.x;
    return sgn(dx);
}

// ab = sign cross(a, b); a_x = sign cross(a, x); x_b = sign cross(x, b)
bool ccw_between(int ab, int a_x, int x_b) {
    if (ab > 0) return a_x > 0 && x_b > 0;
    if (ab < 0) return a_x > 0 || x_b > 0;
    return a_x > 0;
}

// Wedge at v bounded by the rays towards l and r, on the side away from c.
bool in_sector(const Point& v, const Point& l, const Point& r, const Point& c, const Point& p) {
    Point a = sub(l, v), b = sub(r, v), cc = sub(c, v);
    int ab = cross_sign(a, b);
    bool c_in = ccw_between(ab, cross_sign(a, cc), cross_sign(cc, b));
    int pl = orient_pert(v, l, p), pr = orient_pert(v, r, p);
    if (!c_in) return ccw_between(ab, pl, -pr);
    return ccw_between(-ab, pr, -pl);
}

// Convex wedge at apex spanned by directions alpha and beta (empty if parallel).
bool in_convex_wedge(const Point& apex, const Point& alpha, const Point& beta, const Point& p) {
    int s = cross_sign(alpha, beta);
    if (s == 0) return false;
    int o1 = orient_pert(apex, add(apex, alpha), p);
    int o2 = -orient_pert(apex, add(apex, beta), p);
    return o1 == s && o2 == s;
}

std::array<int, 3> sorted3(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

struct ExportVertex {
    bool leaf;
    int a, b, c;  // leaf: hull edge (a, b); internal: any order
};
struct ExportEdge {
    int u, v, left, right;  // oriented u -> v
};

std::string canonical_json(const std::vector<Site>& sites, const std::vector<int>& hull,
                           const std::map<int, ExportVertex>& verts, const std::vector<ExportEdge>& edges) {
    using Key = std::tuple<int, int, int, int>;
    std::vector<std::pair<Key, int>> keys;
    for (const auto& [id, vx] : verts) {
        if (vx.leaf) {
            keys.push_back({Key{0, vx.a, vx.b, -1}, id});
        } else {
            auto t = sorted3(vx.a, vx.b, vx.c);
            keys.push_back({Key{1, t[0], t[1], t[2]}, id});
        }
    }
    std::sort(keys.begin(), keys.end());
    std::unordered_map<int, int> canon;
    json jv = json::array();
    int leaves = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        canon[keys[i].second] = static_cast<int>(i);
        const auto& [kind, a, b, c] = keys[i].first;
        json o;
        o["id"] = i;
        o["leaf"] = kind == 0;
        if (kind == 0) {
            o["definers"] = {a, b};
            ++leaves;
        } else {
            o["definers"] = {a, b, c};
        }
        jv.push_back(o);
    }
    std::vector<std::array<int, 4>> es;
    for (const auto& e : edges) {
        int u = canon.at(e.u), v = canon.at(e.v);
        if (u < v)
            es.push_back({u, v, e.left, e.right});
        else
            es.push_back({v, u, e.right, e.left});
    }
    std::sort(es.begin(), es.end());
    json je = json::array();
    for (const auto& e : es) je.push_back({{"u", e[0]}, {"v", e[1]}, {"left_site", e[2]}, {"right_site", e[3]}});
    json js = json::array();
    for (const auto& s : sites) js.push_back(format_site(s));
    json out;
    out["sites"] = js;
    out["hull"] = hull;
    out["vertices"] = jv;
    out["edges"] = je;
    out["leaves"] = leaves;
    return out.dump();
}

std::vector<int> convex_order(const std::vector<Site>& sites) {
    std::vector<int> idx(sites.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (sites.size() < 3) return idx;
    int lo = 0;
    for (int i = 1; i < static_cast<int>(sites.size()); ++i) {
        int c = sgn(mpq_class(sites[i].y() - sites[lo].y()));
        if (c < 0 || (c == 0 && sites[i].x() < sites[lo].x())) lo = i;
    }
    std::swap(idx[0], idx[lo]);
    const Site& o = sites[idx[0]];
    std::sort(idx.begin() + 1, idx.end(), [&](int a, int b) {
        return orientation(o, sites[a], sites[b]) == Orientation::Left;
    });
    // rotate so that site 0 leads
    auto it = std::find(idx.begin(), idx.end(), 0);
    std::rotate(idx.begin(), it, idx.end());
    return idx;
}

// ccw triangles of the Delaunay triangulation of a convex polygon
std::vector<std::array<int, 3>> gift_wrap(const std::vector<Site>& sites, const std::vector<int>& h) {
    std::vector<std::array<int, 3>> tris;
    const int n = static_cast<int>(h.size());
    if (n < 3) return tris;
    std::vector<std::pair<int, int>> stack{{0, n - 1}};
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        if (j - i < 2) continue;
        int best = i + 1;
        for (int t = i + 2; t < j; ++t)
            if (in_circle(sites[h[i]], sites[h[best]], sites[h[j]], sites[h[t]]) == CircleSide::Inside) best = t;
        tris.push_back({h[i], h[best], h[j]});
        stack.push_back({i, best});
        stack.push_back({best, j});
    }
    return tris;
}

}  // namespace

// ---------------------------------------------------------------------------

VoronoiDiagram::VoronoiDiagram(CircleBackend backend) : backend_(backend), store_(make_circle_store(backend)) {
    install_root_events();
}

VoronoiDiagram::VoronoiDiagram(VoronoiDiagram&& o) noexcept
    : backend_(o.backend_),
      sites_(std::move(o.sites_)),
      hnext_(std::move(o.hnext_)),
      hprev_(std::move(o.hprev_)),
      leaf_of_(std::move(o.leaf_of_)),
      vx_(std::move(o.vx_)),
      tree_(std::move(o.tree_)),
      site_keys_(std::move(o.site_keys_)),
      store_(std::move(o.store_)) {
    install_root_events();
}

VoronoiDiagram& VoronoiDiagram::operator=(VoronoiDiagram&& o) noexcept {
    backend_ = o.backend_;
    sites_ = std::move(o.sites_);
    hnext_ = std::move(o.hnext_);
    hprev_ = std::move(o.hprev_);
    leaf_of_ = std::move(o.leaf_of_);
    vx_ = std::move(o.vx_);
    tree_ = std::move(o.tree_);
    site_keys_ = std::move(o.site_keys_);
    store_ = std::move(o.store_);
    install_root_events();
    return *this;
}

VoronoiDiagram::~VoronoiDiagram() = default;

void VoronoiDiagram::install_root_events() {
    tree_.set_root_event([this](int v, bool becomes) {
        if (v < 0 || v >= static_cast<int>(vx_.size())) return;
        const VoronoiVertex& d = vx_[v];
        if (!d.alive || d.leaf) return;
        if (becomes) {
            if (!store_->contains(v)) store_->insert(v, DefinerCircle{sites_[d.a], sites_[d.b], sites_[d.c]});
        } else if (store_->contains(v)) {
            store_->remove(v);
        }
    });
}

int VoronoiDiagram::new_vertex(bool leaf, int a, int b, int c) {
    int id = static_cast<int>(vx_.size());
    VoronoiVertex d;
    d.alive = true;
    d.leaf = leaf;
    d.a = a;
    d.b = b;
    d.c = c;
    if (!leaf && orientation(sites_[a], sites_[b], sites_[c]) == Orientation::Right) std::swap(d.b, d.c);
    vx_.push_back(d);
    tree_.make_tree(id);
    return id;
}

void VoronoiDiagram::kill_vertex(int v) {
    tree_.remove_vertex(v);
    if (store_->contains(v)) store_->remove(v);
    vx_[v].alive = false;
}

void VoronoiDiagram::set_definers(int v, int a, int b, int c) {
    VoronoiVertex& d = vx_[v];
    d.a = a;
    d.b = b;
    d.c = c;
    if (d.leaf) return;
    if (orientation(sites_[a], sites_[b], sites_[c]) == Orientation::Right) std::swap(d.b, d.c);
    if (store_->contains(v)) {
        store_->remove(v);
        store_->insert(v, DefinerCircle{sites_[d.a], sites_[d.b], sites_[d.c]});
    }
}

std::vector<int> VoronoiDiagram::definers(int v) const {
    const VoronoiVertex& d = vx_[v];
    if (d.leaf) return {d.a, d.b};
    return {d.a, d.b, d.c};
}

Point VoronoiDiagram::center(int v) const {
    const VoronoiVertex& d = vx_[v];
    return circumcenter(sites_[d.a], sites_[d.b], sites_[d.c]);
}

Point VoronoiDiagram::outward(int s) const {
    auto normal = [&](int a, int b) {
        const Site &p = sites_[a], &q = sites_[b];
        return Point{q.y() - p.y(), p.x() - q.x()};
    };
    return add(normal(hprev_[s], s), normal(s, hnext_[s]));
}

int VoronoiDiagram::edge_with_mark(int v, int skip_edge, int site) const {
    for (int e : tree_.incident(v)) {
        if (e == skip_edge) continue;
        auto [l, r] = tree_.get_marks(e);
        if (l == site || r == site) return e;
    }
    return -1;
}

bool VoronoiDiagram::inside(int v, const Site& q, int rho) const {
    if (v == rho) return true;
    const VoronoiVertex& d = vx_[v];
    if (!d.alive || d.leaf) return false;
    return in_circle(sites_[d.a], sites_[d.b], sites_[d.c], q) == CircleSide::Inside;
}

std::vector<int> VoronoiDiagram::hull_order() const {
    std::vector<int> out;
    if (sites_.empty()) return out;
    int s = 0;
    do {
        out.push_back(s);
        s = hnext_[s];
    } while (s != 0 && out.size() <= sites_.size());
    return out;
}

void VoronoiDiagram::bootstrap(const std::vector<Site>& sites) {
    tree_ = GrappaTree();
    store_ = make_circle_store(backend_);
    install_root_events();
    vx_.clear();
    site_keys_.clear();
    sites_ = sites;
    const int n = static_cast<int>(sites.size());
    for (const Site& s : sites)
        if (!site_keys_.insert(format_site(s)).second) throw Error(Errc::DuplicateSite, "duplicate site " + format_site(s));
    hnext_.assign(n, 0);
    hprev_.assign(n, 0);
    leaf_of_.assign(n, -1);
    if (n <= 1) return;
    if (n == 2) {
        hnext_ = {1, 0};
        hprev_ = {1, 0};
        int l0 = new_vertex(true, 0, 1, -1);
        int l1 = new_vertex(true, 1, 0, -1);
        tree_.link(l0, l1, 0, 1);
        leaf_of_ = {l0, l1};
        return;
    }
    if (n != 3) throw Error(Errc::Internal, "bootstrap takes at most three sites");
    std::array<int, 3> h{0, 1, 2};
    Orientation o = orientation(sites[0], sites[1], sites[2]);
    if (o == Orientation::Collinear) throw Error(Errc::Collinear, "three collinear sites");
    if (o == Orientation::Right) std::swap(h[1], h[2]);
    int v = new_vertex(false, h[0], h[1], h[2]);
    for (int i = 0; i < 3; ++i) {
        int a = h[i], b = h[(i + 1) % 3];
        hnext_[a] = b;
        hprev_[b] = a;
        int leaf = new_vertex(true, a, b, -1);
        tree_.link(v, leaf, b, a);
        leaf_of_[a] = leaf;
    }
}

VoronoiDiagram VoronoiDiagram::init(const std::vector<Site>& sites, CircleBackend backend) {
    VoronoiDiagram d(backend);
    {
        std::unordered_set<std::string> keys;
        for (const Site& s : sites)
            if (!keys.insert(format_site(s)).second) throw Error(Errc::DuplicateSite, "duplicate site " + format_site(s));
    }
    std::size_t head = std::min<std::size_t>(3, sites.size());
    d.bootstrap(std::vector<Site>(sites.begin(), sites.begin() + static_cast<long>(head)));
    for (std::size_t i = head; i < sites.size(); ++i) d.insert(sites[i]);
    return d;
}

// ---------------------------------------------------------------------------

InsertReport VoronoiDiagram::insert(const Site& q, bool audit) {
    InsertReport rep;
    const int n = static_cast<int>(sites_.size());
    rep.site = n;
    if (site_keys_.count(format_site(q))) throw Error(Errc::DuplicateSite, "site " + format_site(q) + " already present");
    if (n < 3) {
        if (n == 2 && orientation(sites_[0], sites_[1], q) == Orientation::Collinear)
            throw Error(Errc::GeneralPositionViolated, "three collinear sites");
        std::uint64_t before = tree_.edge_count();
        rep.tree_vertices_before = static_cast<long long>(tree_.vertex_count());
        auto all = sites_;
        all.push_back(q);
        bootstrap(all);
        rep.bootstrap = true;
        rep.cuts = before;
        rep.links = tree_.edge_count();
        rep.tree_vertices_after = static_cast<long long>(tree_.vertex_count());
        return rep;
    }

    std::vector<int> order = hull_order();
    std::vector<Site> hull;
    hull.reserve(order.size());
    for (int s : order) hull.push_back(sites_[s]);
    auto [pi, si] = convex_position_insertable(hull, q);
    const int pred = order[pi], succ = order[si];
    const int qid = n;
    const int rho = leaf_of_[pred];
    const std::uint64_t calls0 = tree_.oracle_calls();
    rep.tree_vertices_before = static_cast<long long>(tree_.vertex_count());

    tree_.evert(rho);

    // path roots whose circle holds q
    std::vector<int> roots{rho};
    {
        std::vector<std::pair<int, DefinerCircle>> taken;
        while (auto hit = store_->find_containing(q)) {
            taken.push_back(*hit);
            store_->remove(hit->first);
            roots.push_back(hit->first);
        }
        for (auto& [id, c] : taken) store_->insert(id, c);
    }
    rep.rq = static_cast<int>(roots.size());

    // inside prefixes of the heavy paths
    std::vector<char> in(vx_.size(), 0);
    std::vector<int> vin;
    std::vector<std::vector<int>> prefixes;
    std::set<int> special;
    for (int r : roots) {
        const int up_r = tree_.path_up_edge(r);
        auto oracle = [&](const EdgeQuery& e) {
            if (e.f == up_r) return !e.shared_is_upper;
            bool ins = inside(e.shared, q, rho);
            return e.shared_is_upper ? !ins : ins;
        };
        auto found = tree_.path_search(r, oracle);
        ++rep.path_searches;
        std::vector<int> seq;
        tree_.path_walk(r, [&](bool is_edge, int id) {
            if (is_edge) return true;
            if (!inside(id, q, rho)) return false;
            seq.push_back(id);
            return true;
        });
        if (seq.empty() || seq.front() != r) throw Error(Errc::Internal, "path root not inside");
        if (found && tree_.upper(found->edge) != seq.back())
            throw Error(Errc::Internal, "transition edge disagrees with the path walk");
        special.insert(r);
        special.insert(seq.back());
        if (up_r >= 0) special.insert(tree_.upper(up_r));
        for (int v : seq) {
            if (in[v]) throw Error(Errc::Internal, "vertex on two inside prefixes");
            in[v] = 1;
            vin.push_back(v);
        }
        prefixes.push_back(std::move(seq));
    }
    rep.v_in = static_cast<int>(vin.size());
    auto is_in = [&](int v) { return v >= 0 && v < static_cast<int>(in.size()) && in[v]; };

    std::set<int> gc;
    for (int v : vin)
        for (int e : tree_.incident(v)) gc.insert(e);

    // preservation tests from marks
    auto crossing_on_side = [&](int x, int e, Mark side) {
        if (x == rho) return true;
        int g = edge_with_mark(x, e, static_cast<int>(side));
        if (g < 0) throw Error(Errc::Internal, "no edge on the requested side");
        return !is_in(tree_.other_end(g, x));
    };
    auto preserved = [&](int e) {
        auto [u, w] = tree_.endpoints(e);
        auto [L, R] = tree_.get_marks(e);
        bool iu = is_in(u), iw = is_in(w);
        if (iu && iw) {
            for (Mark side : {L, R})
                if (crossing_on_side(u, e, side) && crossing_on_side(w, e, side)) return true;
            return false;
        }
        int x = iu ? u : w;
        if (x == rho) return false;
        for (Mark side : {L, R}) {
            int h = edge_with_mark(x, e, static_cast<int>(side));
            int y = tree_.other_end(h, x);
            if (is_in(y) && crossing_on_side(y, h, side)) return true;
        }
        return false;
    };
    auto heavy = [&](int e) { return tree_.path_down_edge(tree_.upper(e)) == e; };

    std::deque<int> work;
    for (int s : special)
        if (is_in(s))
            for (int e : tree_.incident(s)) work.push_back(e);
    for (const auto& seq : prefixes) {
        auto side_of = [&](int v, int& side) {
            if (special.count(v) || vx_[v].leaf) return false;
            int up = tree_.path_up_edge(v), down = tree_.path_down_edge(v);
            if (up < 0 || down < 0) return false;
            side = tree_.get_marks(up).second == tree_.get_marks(down).second ? 0 : 1;
            return true;
        };
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            int s1 = 0, s2 = 0;
            if (side_of(seq[i], s1) && side_of(seq[i + 1], s2) && s1 != s2) {
                ++rep.bent_edges;
                work.push_back(tree_.path_down_edge(seq[i]));
            }
        }
    }
    std::set<int> tested, shadow;
    while (!work.empty()) {
        int e = work.front();
        work.pop_front();
        if (!tested.insert(e).second) continue;
        if (preserved(e)) continue;
        shadow.insert(e);
        if (!heavy(e)) continue;
        auto [u, w] = tree_.endpoints(e);
        for (int z : {u, w}) {
            if (!is_in(z)) continue;
            int down = tree_.path_down_edge(z), up = tree_.path_up_edge(z);
            for (int g : tree_.incident(z)) {
                if (g == down || (g == up && heavy(g))) continue;
                work.push_back(g);
            }
        }
    }
    rep.candidates = static_cast<int>(tested.size());
    rep.sigma = static_cast<int>(shadow.size());

    // crossing edges in order along the new cell boundary
    std::vector<int> crossing;
    for (int e : gc) {
        auto [u, w] = tree_.endpoints(e);
        if (is_in(u) != is_in(w)) crossing.push_back(e);
    }
    std::unordered_map<int, std::vector<int>> by_site;
    for (int e : crossing) {
        auto [L, R] = tree_.get_marks(e);
        by_site[static_cast<int>(L)].push_back(e);
        by_site[static_cast<int>(R)].push_back(e);
    }
    std::vector<int> faces{pred};  // c_0 .. c_m
    std::vector<int> cross_seq;    // e_1 .. e_m
    {
        int site = pred, prev = -1;
        while (site != succ) {
            if (cross_seq.size() > crossing.size()) throw Error(Errc::Internal, "crossing edges do not chain");
            int next_e = -1;
            for (int e : by_site[site])
                if (e != prev) next_e = e;
            if (next_e < 0) throw Error(Errc::Internal, "crossing chain broken");
            auto [L, R] = tree_.get_marks(next_e);
            int other = L == site ? static_cast<int>(R) : static_cast<int>(L);
            cross_seq.push_back(next_e);
            faces.push_back(other);
            prev = next_e;
            site = other;
        }
        if (cross_seq.size() != crossing.size()) throw Error(Errc::Internal, "stray crossing edges");
    }
    const int m = static_cast<int>(cross_seq.size());
    std::vector<int> x(m + 2, rho), y(m + 2, -1);
    std::vector<Mark> eL(m + 2, kNoMark), eR(m + 2, kNoMark);
    for (int j = 1; j <= m; ++j) {
        int e = cross_seq[j - 1];
        x[j] = tree_.upper(e);
        y[j] = tree_.lower(e);
        if (!is_in(x[j]) || is_in(y[j])) throw Error(Errc::Internal, "crossing edge points outwards");
        auto [L, R] = tree_.get_marks(e);
        eL[j] = L;
        eR[j] = R;
        const VoronoiVertex& d = vx_[y[j]];
        if (!d.leaf && in_circle(sites_[d.a], sites_[d.b], sites_[d.c], q) == CircleSide::On)
            throw Error(Errc::GeneralPositionViolated, "four cocircular sites");
    }

    // arc sizes per crossed cell
    std::unordered_map<int, int> arc;
    for (int v : vin)
        for (int s : definers(v)) ++arc[s];
    std::vector<char> pres(m + 1, 0);
    for (int j = 0; j <= m; ++j) {
        int t = arc[faces[j]];
        if (t == 2) {
            pres[j] = 1;
            ++rep.P;
        } else if (t == 1) {
            ++rep.a;
        } else {
            ++rep.s;
        }
    }
    ++rep.a;  // the unbounded face: its arc is the leaf alone
    rep.F = m + 2;
    rep.B = 0;

    auto edge_between = [&](int u, int w) {
        for (int e : tree_.incident(u))
            if (tree_.other_end(e, u) == w) return e;
        return -1;
    };
    {
        std::set<int> keep_faces;
        for (int j = 0; j <= m; ++j) {
            if (!pres[j]) continue;
            if (j >= 1) keep_faces.insert(cross_seq[j - 1]);
            if (j + 1 <= m) keep_faces.insert(cross_seq[j]);
            int e = edge_between(x[j], x[j + 1]);
            if (e < 0) throw Error(Errc::Internal, "preserved cell without an inside edge");
            keep_faces.insert(e);
        }
        std::set<int> np;
        for (int e : gc)
            if (!keep_faces.count(e)) np.insert(e);
        rep.shadow_matches_faces = np == shadow;
    }

    std::optional<PlaneGraph> halin_after_flarb;
    if (audit) {
        rep.audited = true;
        std::size_t internal_roots = 0;
        bool all_in = true;
        for (int v : tree_.path_roots_brute()) {
            if (!internal(v)) continue;
            ++internal_roots;
            if (!store_->contains(v)) all_in = false;
        }
        rep.roots_match = all_in && internal_roots == store_->size();

        std::vector<int> hmap;
        PlaneGraph hg = halin_graph(&hmap);
        CurveSpec cs;
        for (int v : vin) cs.inside.push_back(hmap[v]);
        FaceTable ft = hg.faces();
        Fleeq fq = validate_flarbable(hg, cs, ft);
        FaceClassification fc = classify(hg, fq, ft);
        std::unordered_map<int, int> to_tree;
        for (int e : gc) {
            auto [u, w] = tree_.endpoints(e);
            int h = hg.find_half(hmap[u], hmap[w]);
            if (h < 0) throw Error(Errc::Internal, "tree edge missing from the Halin graph");
            to_tree[PlaneGraph::edge_of(h)] = e;
        }
        std::set<int> np;
        for (int he : fc.nonpreserved_edges) {
            auto it = to_tree.find(he);
            if (it != to_tree.end()) np.insert(it->second);
        }
        rep.shadow_matches_halin = np == shadow;
        halin_after_flarb = hg;
        rep.halin = execute_flarb(*halin_after_flarb, cs);
    }

    // ---- surgery; nothing below may fail on valid input
    sites_.push_back(q);
    site_keys_.insert(format_site(q));
    hnext_.push_back(succ);
    hprev_.push_back(pred);
    leaf_of_.push_back(-1);

    std::vector<int> w(m + 2, -1);
    std::unordered_set<int> claimed;
    for (int j = 0; j <= m; ++j) {
        if (!pres[j]) continue;
        for (int idx : {j, j + 1}) {
            if (w[idx] >= 0 || claimed.count(x[idx])) continue;
            claimed.insert(x[idx]);
            w[idx] = x[idx];
        }
    }
    std::vector<char> reused(m + 2);
    for (int j = 0; j < m + 2; ++j) reused[j] = w[j] >= 0;
    std::set<int> keep;
    for (int j = 1; j <= m; ++j)
        if (reused[j]) keep.insert(cross_seq[j - 1]);
    std::vector<char> cedge_kept(m + 1, 0);
    for (int j = 0; j <= m; ++j) {
        if (!pres[j] || !reused[j] || !reused[j + 1]) continue;
        int e = edge_between(x[j], x[j + 1]);
        if (e < 0 || keep.count(e)) continue;
        auto [L, R] = tree_.get_marks(e);
        if (L != faces[j] && R != faces[j]) continue;
        cedge_kept[j] = 1;
        keep.insert(e);
        ++rep.combs;
    }

    for (int j = 0; j < m + 2; ++j) {
        if (!reused[j]) continue;
        if (j == 0)
            set_definers(w[j], pred, qid, -1);
        else if (j == m + 1)
            set_definers(w[j], qid, succ, -1);
        else
            set_definers(w[j], faces[j - 1], faces[j], qid);
    }
    for (int e : gc) {
        if (keep.count(e)) continue;
        tree_.cut(e);
        ++rep.cuts;
    }
    for (int v : vin) {
        if (claimed.count(v)) continue;
        if (!tree_.incident(v).empty()) throw Error(Errc::Internal, "discarded vertex still has edges");
        kill_vertex(v);
    }
    for (int j = 0; j < m + 2; ++j) {
        if (reused[j]) continue;
        if (j == 0)
            w[j] = new_vertex(true, pred, qid, -1);
        else if (j == m + 1)
            w[j] = new_vertex(true, qid, succ, -1);
        else
            w[j] = new_vertex(false, faces[j - 1], faces[j], qid);
    }
    for (int j = 1; j <= m; ++j) {
        if (reused[j]) continue;
        tree_.link(w[j], y[j], eL[j], eR[j]);
        ++rep.links;
    }
    for (int j = 0; j <= m; ++j) {
        if (cedge_kept[j]) continue;
        tree_.evert(w[j + 1]);
        tree_.link(w[j], w[j + 1], faces[j], qid);
        ++rep.links;
    }
    tree_.evert(w[0]);
    tree_.right_mark(w[m + 1], qid);

    hnext_[pred] = qid;
    hprev_[succ] = qid;
    leaf_of_[pred] = w[0];
    leaf_of_[qid] = w[m + 1];

    rep.oracle_calls = tree_.oracle_calls() - calls0;
    rep.tree_vertices_after = static_cast<long long>(tree_.vertex_count());

    if (audit) {
        PlaneGraph now = halin_graph();
        rep.halin_isomorphic = is_isomorphic(*halin_after_flarb, now);
    }
    return rep;
}

// ---------------------------------------------------------------------------

int VoronoiDiagram::nearest_site(const Site& p) {
    const int n = static_cast<int>(sites_.size());
    if (n == 0) throw Error(Errc::UnknownSite, "empty diagram");
    const Point P = p.point();
    auto better = [&](int a, int b) {  // a strictly preferred over b
        if (b < 0) return true;
        int c = compare_distance(P, sites_[a], sites_[b]);
        return c < 0 || (c == 0 && a < b);
    };
    if (n <= 2) {
        int best = -1;
        for (int s = 0; s < n; ++s)
            if (better(s, best)) best = s;
        return best;
    }
    auto oracle = [&](const EdgeQuery& e) {
        int v = e.shared;
        const VoronoiVertex& d = vx_[v];
        if (d.leaf) throw Error(Errc::Internal, "region test at a leaf");
        int l = static_cast<int>(e.f_left), r = static_cast<int>(e.f_right);
        int c = -1;
        for (int s : {d.a, d.b, d.c})
            if (s != l && s != r) c = s;
        Point u = center(v);
        Point pl = sites_[l].point(), pr = sites_[r].point();
        bool behind = !in_sector(u, pl, pr, sites_[c].point(), P);
        behind ^= in_convex_wedge(pl, sub(pl, u), outward(l), P);
        behind ^= in_convex_wedge(pr, sub(pr, u), outward(r), P);
        return behind;
    };
    auto res = tree_.oracle_search(leaf_of_[0], oracle);
    if (!res) throw Error(Errc::OracleInconsistent, "nearest site search failed");
    std::set<int> cand{static_cast<int>(res->left), static_cast<int>(res->right)};
    auto [u, w] = tree_.endpoints(res->edge);
    for (int v : {u, w})
        for (int s : definers(v)) cand.insert(s);
    int best = -1;
    for (int s : cand)
        if (better(s, best)) best = s;
    return best;
}

bool VoronoiDiagram::delaunay_adjacent(int a, int b) {
    const int n = static_cast<int>(sites_.size());
    if (a < 0 || a >= n) throw Error(Errc::UnknownSite, "site " + std::to_string(a));
    if (b < 0 || b >= n) throw Error(Errc::UnknownSite, "site " + std::to_string(b));
    if (a == b) return false;
    if (n == 2) return true;
    auto orient = [&](int i, int j, int k) { return osign(orientation(sites_[i], sites_[j], sites_[k])); };
    // pair of sites bounding the branch at v that holds the target edge
    auto choose = [&](int v) {
        const VoronoiVertex& d = vx_[v];
        std::array<int, 3> def{d.a, d.b, d.c};
        auto pos = std::find(def.begin(), def.end(), a);
        if (pos != def.end()) {
            int i = static_cast<int>(pos - def.begin());
            int x1 = def[(i + 1) % 3], y1 = def[(i + 2) % 3];
            auto closed = [&](int xx, int yy) { return b == xx || orient(a, xx, b) == -orient(a, xx, yy); };
            if (closed(x1, y1)) return std::pair<int, int>{a, x1};
            if (closed(y1, x1)) return std::pair<int, int>{a, y1};
            return std::pair<int, int>{x1, y1};
        }
        for (int i = 0; i < 3; ++i) {
            int l = def[i], r = def[(i + 1) % 3], c = def[(i + 2) % 3];
            if (orient(l, r, a) == -orient(l, r, c)) return std::pair<int, int>{l, r};
        }
        throw Error(Errc::Internal, "site in no branch");
    };
    auto oracle = [&](const EdgeQuery& e) {
        auto [l, r] = choose(e.shared);
        bool same = (l == e.f_left && r == e.f_right) || (l == e.f_right && r == e.f_left);
        return !same;
    };
    auto res = tree_.oracle_search(leaf_of_[0], oracle);
    if (!res) throw Error(Errc::OracleInconsistent, "adjacency search failed");
    return (res->left == a && res->right == b) || (res->left == b && res->right == a);
}

// ---------------------------------------------------------------------------

PlaneGraph VoronoiDiagram::halin_graph(std::vector<int>* map_out) {
    if (sites_.size() < 3) throw Error(Errc::BadConfig, "Halin graph needs at least three sites");
    PlaneGraph::Rotation rot;
    for (int v = 0; v < static_cast<int>(vx_.size()); ++v) {
        const VoronoiVertex& d = vx_[v];
        if (!d.alive) continue;
        const auto& inc = tree_.incident(v);
        if (d.leaf) {
            if (inc.size() != 1) throw Error(Errc::Internal, "leaf of degree " + std::to_string(inc.size()));
            rot[v] = {tree_.other_end(inc[0], v), leaf_of_[hprev_[d.a]], leaf_of_[d.b]};
        } else {
            std::vector<int> nb;
            for (auto [s, t] : {std::pair{d.a, d.b}, std::pair{d.b, d.c}, std::pair{d.c, d.a}}) {
                int found = -1;
                for (int e : inc) {
                    auto [L, R] = tree_.get_marks(e);
                    if ((L == s && R == t) || (L == t && R == s)) found = e;
                }
                if (found < 0) throw Error(Errc::Internal, "vertex lacks an edge for a definer pair");
                nb.push_back(tree_.other_end(found, v));
            }
            rot[v] = nb;
        }
    }
    if (map_out) {
        map_out->assign(vx_.size(), -1);
        for (const auto& [v, nb] : rot) (*map_out)[v] = v;
    }
    return PlaneGraph::build(rot);
}

void VoronoiDiagram::check_invariants() {
    auto fail = [](const std::string& what) { throw Error(Errc::Internal, "invariant: " + what); };
    const int n = static_cast<int>(sites_.size());
    if (static_cast<int>(hull_order().size()) != n) fail("hull list is not a single cycle");
    for (int s = 0; s < n; ++s)
        if (hprev_[hnext_[s]] != s) fail("hull links disagree");
    if (n >= 3) {
        auto order = hull_order();
        for (int i = 0; i < n; ++i)
            if (orientation(sites_[order[i]], sites_[order[(i + 1) % n]], sites_[order[(i + 2) % n]]) !=
                Orientation::Left)
                fail("hull not strictly convex");
    }
    std::size_t leaves = 0, internals = 0;
    for (int v = 0; v < static_cast<int>(vx_.size()); ++v) {
        const VoronoiVertex& d = vx_[v];
        if (!d.alive) continue;
        if (!tree_.has_vertex(v)) fail("live vertex missing from the tree");
        const auto& inc = tree_.incident(v);
        auto check_edge = [&](int e, int left, int right) {
            auto [L, R] = tree_.get_marks(e);
            bool up = tree_.upper(e) == v;
            Mark el = up ? left : right, er = up ? right : left;
            if (L != el || R != er) fail("marks of edge " + std::to_string(e) + " at " + std::to_string(v));
        };
        if (d.leaf) {
            ++leaves;
            if (n >= 2 && leaf_of_[d.a] != v) fail("leaf table");
            if (hnext_[d.a] != d.b) fail("leaf is not on a hull edge");
            if (inc.size() != 1) fail("leaf degree");
            check_edge(inc[0], d.a, d.b);
        } else {
            ++internals;
            if (orientation(sites_[d.a], sites_[d.b], sites_[d.c]) != Orientation::Left) fail("definers not ccw");
            if (inc.size() != 3) fail("internal degree");
            for (auto [s, t] : {std::pair{d.a, d.b}, std::pair{d.b, d.c}, std::pair{d.c, d.a}}) {
                int found = -1;
                for (int e : inc) {
                    auto [L, R] = tree_.get_marks(e);
                    if ((L == s && R == t) || (L == t && R == s)) found = e;
                }
                if (found < 0) fail("missing edge for a definer pair");
                check_edge(found, t, s);
            }
        }
    }
    if (n >= 2) {
        if (static_cast<int>(leaves) != n || static_cast<int>(internals) != n - 2) fail("vertex counts");
        if (tree_.edge_count() + 1 != tree_.vertex_count()) fail("not a tree");
        int root = tree_.find_root(leaf_of_[0]);
        for (int v = 0; v < static_cast<int>(vx_.size()); ++v)
            if (vx_[v].alive && tree_.find_root(v) != root) fail("disconnected");
    }
    std::size_t internal_roots = 0;
    for (int v : tree_.path_roots_brute()) {
        if (!internal(v)) continue;
        ++internal_roots;
        if (!store_->contains(v)) fail("path root missing from the circle store");
    }
    if (internal_roots != store_->size()) fail("circle store holds non-roots");
}

// ---------------------------------------------------------------------------

std::string VoronoiDiagram::export_json() const {
    std::map<int, ExportVertex> verts;
    std::vector<ExportEdge> edges;
    std::set<int> seen;
    for (int v = 0; v < static_cast<int>(vx_.size()); ++v) {
        const VoronoiVertex& d = vx_[v];
        if (!d.alive) continue;
        verts[v] = ExportVertex{d.leaf, d.a, d.b, d.c};
        for (int e : tree_.incident(v)) {
            if (!seen.insert(e).second) continue;
            auto [L, R] = tree_.get_marks(e);
            edges.push_back({tree_.upper(e), tree_.lower(e), static_cast<int>(L), static_cast<int>(R)});
        }
    }
    return canonical_json(sites_, hull_order(), verts, edges);
}

VoronoiDiagram VoronoiDiagram::import_json(const std::string& text, CircleBackend backend) {
    VoronoiDiagram d(backend);
    try {
        json j = json::parse(text);
        for (const auto& s : j.at("sites")) d.sites_.push_back(parse_site(s.get<std::string>()));
        const int n = static_cast<int>(d.sites_.size());
        for (const Site& s : d.sites_)
            if (!d.site_keys_.insert(format_site(s)).second) throw Error(Errc::ParseError, "duplicate site");
        d.hnext_.assign(n, 0);
        d.hprev_.assign(n, 0);
        d.leaf_of_.assign(n, -1);
        auto hull = j.at("hull").get<std::vector<int>>();
        if (static_cast<int>(hull.size()) != n) throw Error(Errc::ParseError, "hull size");
        for (int i = 0; i < n; ++i) {
            int a = hull[i], b = hull[(i + 1) % n];
            if (a < 0 || a >= n) throw Error(Errc::ParseError, "hull site out of range");
            d.hnext_[a] = b;
            d.hprev_[b] = a;
        }
        const auto& jv = j.at("vertices");
        for (std::size_t i = 0; i < jv.size(); ++i) {
            if (jv[i].at("id").get<std::size_t>() != i) throw Error(Errc::ParseError, "vertex ids not dense");
            auto def = jv[i].at("definers").get<std::vector<int>>();
            for (int s : def)
                if (s < 0 || s >= n) throw Error(Errc::ParseError, "definer out of range");
            if (jv[i].at("leaf").get<bool>()) {
                if (def.size() != 2) throw Error(Errc::ParseError, "leaf definers");
                d.new_vertex(true, def[0], def[1], -1);
                d.leaf_of_[def[0]] = static_cast<int>(i);
            } else {
                if (def.size() != 3) throw Error(Errc::ParseError, "vertex definers");
                if (orientation(d.sites_[def[0]], d.sites_[def[1]], d.sites_[def[2]]) == Orientation::Collinear)
                    throw Error(Errc::ParseError, "collinear definers");
                d.new_vertex(false, def[0], def[1], def[2]);
            }
        }
        const int nv = static_cast<int>(jv.size());
        std::vector<std::vector<std::array<int, 3>>> adj(nv);  // (other, left, right) oriented outwards
        for (const auto& e : j.at("edges")) {
            int u = e.at("u"), v = e.at("v"), l = e.at("left_site"), r = e.at("right_site");
            if (u < 0 || v < 0 || u >= nv || v >= nv || u == v) throw Error(Errc::ParseError, "edge endpoint");
            adj[u].push_back({v, l, r});
            adj[v].push_back({u, r, l});
        }
        if (nv > 0) {
            std::vector<char> done(nv, 0);
            std::deque<int> bfs{0};
            done[0] = 1;
            std::size_t linked = 0;
            while (!bfs.empty()) {
                int u = bfs.front();
                bfs.pop_front();
                for (const auto& [v, l, r] : adj[u]) {
                    if (done[v]) continue;
                    done[v] = 1;
                    d.tree_.link(u, v, l, r);
                    ++linked;
                    bfs.push_back(v);
                }
            }
            if (linked * 2 != j.at("edges").size() * 2 || linked + 1 != static_cast<std::size_t>(nv))
                throw Error(Errc::ParseError, "edges do not form a spanning tree");
        }
        d.check_invariants();
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::ParseError) throw;
        throw Error(Errc::ParseError, e.what());
    }
    return d;
}

// ---------------------------------------------------------------------------

std::set<std::array<int, 3>> gift_wrap_delaunay_triangles(const std::vector<Site>& sites) {
    std::set<std::array<int, 3>> out;
    for (const auto& t : gift_wrap(sites, convex_order(sites))) out.insert(sorted3(t[0], t[1], t[2]));
    return out;
}

std::set<std::array<int, 3>> brute_force_delaunay_triangles(const std::vector<Site>& sites) {
    std::set<std::array<int, 3>> out;
    const int n = static_cast<int>(sites.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (orientation(sites[i], sites[j], sites[k]) == Orientation::Collinear) continue;
                bool empty = true;
                for (int t = 0; t < n && empty; ++t) {
                    if (t == i || t == j || t == k) continue;
                    if (in_circle(sites[i], sites[j], sites[k], sites[t]) != CircleSide::Outside) empty = false;
                }
                if (empty) out.insert({i, j, k});
            }
    return out;
}

std::string reference_voronoi_json(const std::vector<Site>& sites) {
    const int n = static_cast<int>(sites.size());
    std::vector<int> h = convex_order(sites);
    std::vector<int> nxt(n, 0);
    for (int i = 0; i < n; ++i) nxt[h[i]] = h[(i + 1) % n];
    std::map<int, ExportVertex> verts;
    std::vector<ExportEdge> edges;
    if (n == 2) {
        verts[0] = {true, 0, 1, -1};
        verts[1] = {true, 1, 0, -1};
        edges.push_back({0, 1, 0, 1});
    } else if (n >= 3) {
        if (orientation(sites[h[0]], sites[h[1]], sites[h[2]]) != Orientation::Left)
            throw Error(Errc::NotInConvexPosition, "reference needs a convex polygon");
        auto tris = gift_wrap(sites, h);
        std::map<std::pair<int, int>, int> owner;  // directed ccw edge -> triangle
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            auto tri = tris[t];
            if (orientation(sites[tri[0]], sites[tri[1]], sites[tri[2]]) == Orientation::Right)
                std::swap(tri[1], tri[2]);
            tris[t] = tri;
            verts[t] = {false, tri[0], tri[1], tri[2]};
            for (int i = 0; i < 3; ++i) owner[{tri[i], tri[(i + 1) % 3]}] = t;
        }
        int next_id = static_cast<int>(tris.size());
        std::map<int, int> leaf;  // hull edge start -> vertex
        for (int s = 0; s < n; ++s) {
            leaf[s] = next_id;
            verts[next_id++] = {true, s, nxt[s], -1};
        }
        for (const auto& [de, t] : owner) {
            auto [s1, s2] = de;
            auto rev = owner.find({s2, s1});
            if (rev != owner.end()) {
                if (t < rev->second) edges.push_back({t, rev->second, s2, s1});
            } else {
                if (nxt[s1] != s2) throw Error(Errc::Internal, "reference boundary edge off the hull");
                edges.push_back({t, leaf[s1], s2, s1});
            }
        }
    }
    std::vector<int> hull;
    if (n > 0) {
        int s = 0;
        do {
            hull.push_back(s);
            s = nxt[s];
        } while (s != 0 && static_cast<int>(hull.size()) <= n);
    }
    return canonical_json(sites, hull, verts, edges);
}

}  // namespace flarb
