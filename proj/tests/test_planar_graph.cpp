#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "flarb/planar_graph.hpp"
#include "test_support.hpp"

using namespace flarb;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Internal;
}

long long face_size_sum(const PlaneGraph& g) {
    FaceTable ft = g.faces();
    long long s = 0;
    for (int x : ft.size) s += x;
    return s;
}

}  // namespace

TEST_CASE("build K4 and prism") {
    PlaneGraph k = fixtures::k4();
    CHECK(k.vertex_count() == 4);
    CHECK(k.edge_count() == 6);
    CHECK(k.faces().count() == 4);
    PlaneGraph p = fixtures::prism();
    CHECK(p.vertex_count() == 6);
    CHECK(p.edge_count() == 9);
    CHECK(p.faces().count() == 5);
    CHECK(k.link_count() == 0);
    CHECK(k.cut_count() == 0);
}

TEST_CASE("build rejects bad rotation systems") {
    CHECK(code_of([] { PlaneGraph::build({{0, {1, 2}}, {1, {0, 2, 3}}, {2, {0, 1, 3}}, {3, {1, 2, 0}}}); }) ==
          Errc::NonCubic);
    CHECK(code_of([] { PlaneGraph::build({{0, {1, 2, 3}}, {1, {0, 3, 2}}, {2, {0, 1, 3}}, {3, {1, 2, 1}}}); }) ==
          Errc::NonCubic);
    CHECK(code_of([] { PlaneGraph::build({{0, {1, 2, 3}}, {1, {0, 3, 2}}, {2, {0, 1, 3}}, {3, {2, 1, 4}}, {4, {3, 5, 6}}}); }) ==
          Errc::AsymmetricAdjacency);
    // K_{3,3} with any rotation is non-planar
    CHECK(code_of([] {
              PlaneGraph::build({{0, {3, 4, 5}}, {1, {3, 4, 5}}, {2, {3, 4, 5}},
                                 {3, {0, 1, 2}}, {4, {0, 1, 2}}, {5, {0, 1, 2}}});
          }) == Errc::NonPlanarEmbedding);
    // K4 with one rotation flipped is a torus embedding
    CHECK(code_of([] { PlaneGraph::build({{0, {1, 3, 2}}, {1, {0, 3, 2}}, {2, {0, 1, 3}}, {3, {0, 2, 1}}}); }) ==
          Errc::NonPlanarEmbedding);
}

TEST_CASE("cut and link counters on K4") {
    PlaneGraph g = fixtures::k4();
    auto before = g.rotation();
    int e = g.edges().front();
    int h = 2 * e;
    SlotRef a{g.origin(h), g.slot_of(h)}, b{g.head(h), g.slot_of(h ^ 1)};
    g.cut(e);
    CHECK(g.link_count() == 0);
    CHECK(g.cut_count() == 1);
    CHECK(g.degree(a.vertex) == 2);
    CHECK(g.degree(b.vertex) == 2);
    g.link(a, b);
    CHECK(g.link_count() == 1);
    CHECK(g.cut_count() == 1);
    CHECK(g.rotation() == before);
    CHECK(g.is_cubic());
    CHECK(code_of([&] { g.cut(999); }) == Errc::UnknownEdge);
    CHECK(code_of([&] { g.link({a.vertex, a.slot}, {b.vertex, b.slot}); }) == Errc::InvalidSlot);
}

TEST_CASE("potential") {
    PlaneGraph k = fixtures::k4();
    CHECK(potential(k, 16) == 128);
    std::mt19937_64 rng(5);
    PlaneGraph g = fixtures::random_cubic(100, rng);
    REQUIRE(g.vertex_count() == 100);
    FaceTable ft = g.faces();
    long long expect = 0;
    for (int s : ft.size) expect += std::min(s, 10);
    CHECK(potential(g, 16) == 16 * expect);
    CHECK(ceil_sqrt(100) == 10);
    CHECK(ceil_sqrt(101) == 11);
    // relabeling leaves the potential unchanged
    std::map<int, int> relabel;
    std::vector<int> vs = g.vertices();
    std::vector<int> perm = vs;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < vs.size(); ++i) relabel[vs[i]] = perm[i] + 7;
    PlaneGraph::Rotation r2;
    for (auto& [v, nb] : g.rotation()) {
        std::vector<int> l;
        for (int w : nb) l.push_back(relabel[w]);
        r2[relabel[v]] = l;
    }
    PlaneGraph g2 = PlaneGraph::build(r2);
    CHECK(potential(g2, 16) == potential(g, 16));
    CHECK(is_isomorphic(g, g2));
}

TEST_CASE("degree123 edge count on small subgraphs") {
    PlaneGraph k = fixtures::k4();
    CHECK(degree123_edge_count_check(k, {k.edges()[0]}));
    std::vector<int> claw;
    for (int s = 0; s < 3; ++s) claw.push_back(PlaneGraph::edge_of(k.half_at(0, s)));
    CHECK(degree123_edge_count_check(k, claw));
    PlaneGraph p = fixtures::prism();
    // square face 0-1-4-3
    std::vector<int> sq{PlaneGraph::edge_of(p.find_half(0, 1)), PlaneGraph::edge_of(p.find_half(1, 4)),
                        PlaneGraph::edge_of(p.find_half(4, 3)), PlaneGraph::edge_of(p.find_half(3, 0))};
    CHECK(degree123_edge_count_check(p, sq));
    std::vector<int> split{PlaneGraph::edge_of(p.find_half(0, 1)), PlaneGraph::edge_of(p.find_half(4, 5))};
    CHECK(code_of([&] { degree123_edge_count_check(p, split); }) == Errc::Disconnected);
    CHECK(degree123_edge_count_check(p, p.edges()));
}

TEST_CASE("random cubic graphs satisfy face and subgraph identities") {
    std::mt19937_64 rng(1234);
    for (int it = 0; it < 40; ++it) {
        PlaneGraph g = fixtures::random_cubic(10 + 2 * (it % 30), rng);
        CHECK(face_size_sum(g) == 2 * static_cast<long long>(g.edge_count()));
        CHECK(static_cast<long long>(g.vertex_count()) - static_cast<long long>(g.edge_count()) +
                  static_cast<long long>(g.faces().count()) == 2);
        // connected edge subsets grown from a random edge
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<int> es = g.edges();
            std::uniform_int_distribution<std::size_t> pe(0, es.size() - 1);
            std::set<int> chosen{es[pe(rng)]};
            std::uniform_int_distribution<std::size_t> psz(1, es.size());
            std::size_t target = psz(rng);
            while (chosen.size() < target) {
                std::vector<int> cand;
                for (int e : chosen)
                    for (int hh : {2 * e, 2 * e + 1})
                        for (int s = 0; s < 3; ++s) {
                            int f = PlaneGraph::edge_of(g.half_at(g.origin(hh), s));
                            if (!chosen.count(f)) cand.push_back(f);
                        }
                if (cand.empty()) break;
                std::uniform_int_distribution<std::size_t> pc(0, cand.size() - 1);
                chosen.insert(cand[pc(rng)]);
            }
            CHECK(degree123_edge_count_check(g, std::vector<int>(chosen.begin(), chosen.end())));
        }
        // link/cut round trip
        auto rot = g.rotation();
        int e = g.edges()[it % g.edge_count()];
        SlotRef a{g.origin(2 * e), g.slot_of(2 * e)}, b{g.head(2 * e), g.slot_of(2 * e + 1)};
        g.cut(e);
        g.link(a, b);
        CHECK(g.rotation() == rot);
    }
}

TEST_CASE("isomorphism") {
    PlaneGraph k = fixtures::k4(), p = fixtures::prism();
    CHECK(is_isomorphic(k, k));
    CHECK(is_isomorphic(p, p));
    CHECK_FALSE(is_isomorphic(k, p));
    CHECK(is_isomorphic(p, p.mirrored()));
    std::mt19937_64 rng(99);
    PlaneGraph a = fixtures::random_cubic(40, rng);
    PlaneGraph b = fixtures::random_cubic(40, rng);
    auto m = find_isomorphism(a, a.mirrored());
    REQUIRE(m.has_value());
    // a and b are almost surely different
    if (is_isomorphic(a, b)) MESSAGE("two random graphs happened to be isomorphic");
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(3);
    PlaneGraph g = fixtures::random_cubic(30, rng);
    PlaneGraph h = PlaneGraph::from_json(g.to_json());
    CHECK(h.rotation() == g.rotation());
    CHECK(h.to_json() == g.to_json());
    CHECK_THROWS_AS(PlaneGraph::from_json("{not json"), Error);
}
