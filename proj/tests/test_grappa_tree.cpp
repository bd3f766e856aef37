#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "flarb/grappa_tree.hpp"
#include "grappa_reference.hpp"

using namespace flarb;

namespace {

EdgeOracle toward_oracle(const std::map<int, int>& tw, int target) {
    return [&tw, target](const EdgeQuery& q) { return q.f != target && tw.at(q.shared) != q.f; };
}

}  // namespace

TEST_CASE("make, link, cut") {
    GrappaTree g;
    g.make_tree(0);
    g.make_tree(1);
    int e = g.link(0, 1);
    CHECK(g.find_root(1) == 0);
    CHECK(g.parent(1) == 0);
    CHECK(g.edge_count() == 1);
    g.cut(e);
    CHECK(g.find_root(1) == 1);
    CHECK(g.parent(1) == -1);
    CHECK(g.edge_count() == 0);
    CHECK_THROWS_AS(g.cut(e), Error);
}

TEST_CASE("link preconditions") {
    GrappaTree g;
    for (int v = 0; v < 4; ++v) g.make_tree(v);
    g.link(0, 1);
    g.link(1, 2);
    try {
        g.link(3, 2);
        FAIL("expected NotARoot");
    } catch (const Error& ex) {
        CHECK(ex.code() == Errc::NotARoot);
    }
    try {
        g.link(2, 0);
        FAIL("expected SameTree");
    } catch (const Error& ex) {
        CHECK(ex.code() == Errc::SameTree);
    }
}

TEST_CASE("path marks") {
    GrappaTree g;
    for (int v = 0; v < 3; ++v) g.make_tree(v);
    int ab = g.link(0, 1), bc = g.link(1, 2);
    g.left_mark(2, 10);
    CHECK(g.get_marks(ab).first == 10);
    CHECK(g.get_marks(bc).first == 10);
    g.left_mark(1, 20);
    CHECK(g.get_marks(ab).first == 20);
    CHECK(g.get_marks(bc).first == 10);
    g.right_mark(2, 7);
    g.evert(2);
    CHECK(g.find_root(0) == 2);
    CHECK(g.get_marks(ab) == std::pair<Mark, Mark>{7, 20});
    CHECK(g.get_marks(bc) == std::pair<Mark, Mark>{7, 10});
    CHECK(g.upper(ab) == 1);
    CHECK(g.lower(ab) == 0);
}

TEST_CASE("oracle search on a 3-edge path") {
    GrappaTree g;
    for (int v = 0; v < 4; ++v) g.make_tree(v);
    g.link(0, 1);
    int mid = g.link(1, 2);
    g.link(2, 3);
    NaiveForest nf;
    for (int v = 0; v < 4; ++v) nf.make_tree(v);
    nf.link(0, 0, 1, -1, -1);
    nf.link(1, 1, 2, -1, -1);
    nf.link(2, 2, 3, -1, -1);
    auto tw = nf.toward(mid);
    g.reset_oracle_calls();
    auto r = g.oracle_search(3, toward_oracle(tw, mid));
    REQUIRE(r.has_value());
    CHECK(r->edge == mid);
    CHECK(g.oracle_calls() <= 8);
}

TEST_CASE("inconsistent oracle is detected") {
    GrappaTree g;
    for (int v = 0; v < 8; ++v) g.make_tree(v);
    for (int v = 1; v < 8; ++v) g.link(v - 1, v);
    try {
        g.oracle_search(0, [](const EdgeQuery&) { return true; });
        FAIL("expected OracleInconsistent");
    } catch (const Error& ex) {
        CHECK(ex.code() == Errc::OracleInconsistent);
    }
}

TEST_CASE("random 1023-node trees: oracle search uses O(log n) calls") {
    std::mt19937_64 rng(2024);
    const int n = 1023;
    double worst_ratio = 0, total_calls = 0;
    int searches = 0;
    for (int rep = 0; rep < 5; ++rep) {
        GrappaTree g;
        NaiveForest nf;
        std::vector<int> deg(n, 0);
        for (int v = 0; v < n; ++v) {
            g.make_tree(v);
            nf.make_tree(v);
        }
        std::vector<int> es;
        for (int v = 1; v < n; ++v) {
            int p;
            do {
                p = std::uniform_int_distribution<int>(0, v - 1)(rng);
            } while (deg[p] >= 2);  // binary: at most two children
            ++deg[p];
            int e = g.link(p, v);
            nf.link(e, p, v, -1, -1);
            es.push_back(e);
        }
        for (int s = 0; s < 400; ++s) {
            int t = es[std::uniform_int_distribution<std::size_t>(0, es.size() - 1)(rng)];
            auto tw = nf.toward(t);
            int from = std::uniform_int_distribution<int>(0, n - 1)(rng);
            g.reset_oracle_calls();
            auto r = g.oracle_search(from, toward_oracle(tw, t));
            REQUIRE(r.has_value());
            CHECK(r->edge == t);
            total_calls += static_cast<double>(g.oracle_calls());
            ++searches;
            worst_ratio = std::max(worst_ratio, static_cast<double>(g.oracle_calls()) / std::log2(n));
        }
    }
    double mean_c = total_calls / searches / std::log2(n);
    MESSAGE("mean oracle calls / log2 n = " << mean_c << ", worst single search ratio " << worst_ratio);
    CHECK(mean_c <= 6.0);
}

TEST_CASE("randomized equivalence with the reference forest") {
    std::mt19937_64 rng(99);
    GrappaTree g;
    NaiveForest nf;
    std::set<int> roots_by_event;
    g.set_root_event([&](int v, bool becomes) {
        if (becomes) {
            CHECK(roots_by_event.insert(v).second);
        } else {
            CHECK(roots_by_event.erase(v) == 1);
        }
    });
    int next_vertex = 0;
    std::vector<int> verts;
    std::vector<int> live_edges;
    const int ops = 100000;
    int searches = 0;
    auto rnd = [&](std::size_t m) { return std::uniform_int_distribution<std::size_t>(0, m - 1)(rng); };
    for (int op = 0; op < ops; ++op) {
        int kind = static_cast<int>(rnd(100));
        if (verts.size() < 5 || (kind < 8 && verts.size() < 400)) {
            int v = next_vertex++;
            g.make_tree(v);
            nf.make_tree(v);
            verts.push_back(v);
        } else if (kind < 35) {
            int w = verts[rnd(verts.size())];
            int rw = nf.root(w);
            int v = verts[rnd(verts.size())];
            if (nf.root(v) == rw) continue;
            Mark l = static_cast<Mark>(rnd(1000)), r = static_cast<Mark>(rnd(1000));
            int e = g.link(v, rw, l, r);
            nf.link(e, v, rw, l, r);
            live_edges.push_back(e);
        } else if (kind < 50) {
            if (live_edges.empty()) continue;
            std::size_t i = rnd(live_edges.size());
            int e = live_edges[i];
            live_edges[i] = live_edges.back();
            live_edges.pop_back();
            g.cut(e);
            nf.cut(e);
        } else if (kind < 62) {
            int v = verts[rnd(verts.size())];
            g.evert(v);
            nf.evert(v);
        } else if (kind < 80) {
            int v = verts[rnd(verts.size())];
            bool left = rnd(2) == 0;
            Mark m = static_cast<Mark>(rnd(100000));
            if (left) g.left_mark(v, m);
            else g.right_mark(v, m);
            nf.mark(v, left, m);
        } else if (kind < 90) {
            if (live_edges.empty()) continue;
            int t = live_edges[rnd(live_edges.size())];
            auto tw = nf.toward(t);
            int from = nf.edges.at(t).upper;
            // start from a random vertex of the same tree
            for (int tries = 0; tries < 4; ++tries) {
                int c = verts[rnd(verts.size())];
                if (tw.count(c)) {
                    from = c;
                    break;
                }
            }
            auto r = g.oracle_search(from, toward_oracle(tw, t));
            ++searches;
            REQUIRE(r.has_value());
            CHECK(r->edge == t);
            CHECK(r->left == nf.edges.at(t).left);
            CHECK(r->right == nf.edges.at(t).right);
        } else {
            // spot checks
            int v = verts[rnd(verts.size())];
            CHECK(g.find_root(v) == nf.root(v));
            CHECK(g.parent_edge(v) == nf.parent_edge.at(v));
            if (!live_edges.empty()) {
                int e = live_edges[rnd(live_edges.size())];
                auto m = g.get_marks(e);
                CHECK(m.first == nf.edges.at(e).left);
                CHECK(m.second == nf.edges.at(e).right);
                CHECK(g.upper(e) == nf.edges.at(e).upper);
            }
        }
        if (op % 5000 == 0 || op == ops - 1) {
            for (int v : verts) REQUIRE(g.parent_edge(v) == nf.parent_edge.at(v));
            for (auto& [e, x] : nf.edges) {
                auto m = g.get_marks(e);
                REQUIRE(m.first == x.left);
                REQUIRE(m.second == x.right);
                REQUIRE(g.upper(e) == x.upper);
                REQUIRE(g.lower(e) == x.lower);
            }
            auto brute = g.path_roots_brute();
            CHECK(std::vector<int>(roots_by_event.begin(), roots_by_event.end()) == brute);
        }
    }
    CHECK(searches > 5000);
}

TEST_CASE("path search and path walk") {
    GrappaTree g;
    for (int v = 0; v < 10; ++v) g.make_tree(v);
    std::vector<int> es;
    for (int v = 1; v < 10; ++v) es.push_back(g.link(v - 1, v));
    g.evert(9);
    g.evert(0);
    g.find_root(9);  // whole chain becomes one preferred path
    std::vector<int> order;
    g.path_walk(9, [&](bool is_edge, int id) {
        if (!is_edge) order.push_back(id);
        return true;
    });
    CHECK(order == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(g.path_root(5) == 0);
    // inside = vertices 0..6; transition edge is 6-7
    auto inside = [](int v) { return v <= 6; };
    auto oracle = [&](const EdgeQuery& q) { return q.shared_is_upper ? !inside(q.shared) : inside(q.shared); };
    auto r = g.path_search(3, oracle);
    REQUIRE(r.has_value());
    CHECK(r->edge == es[6]);
    auto all_inside = [&](const EdgeQuery& q) { return q.shared_is_upper ? false : true; };
    CHECK_FALSE(g.path_search(3, all_inside).has_value());
}
