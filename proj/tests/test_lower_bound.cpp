#include "doctest.h"
#include "flarb/lower_bound_gen.hpp"

using namespace flarb;

TEST_CASE("vertex count formula") {
    CHECK(build_lower_bound(3).graph.vertex_count() == 22);
    CHECK(build_lower_bound(10).graph.vertex_count() == 218);
    CHECK(build_lower_bound(2).graph.vertex_count() == 10);
    for (int k = 2; k <= 30; ++k) CHECK(static_cast<long long>(build_lower_bound(k).graph.vertex_count()) == 2LL * k * (k + 1) - 2);
}

TEST_CASE("invalid k") {
    try {
        build_lower_bound(1);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidK);
    }
}

TEST_CASE("one flarb on build(5)") {
    LowerBoundInstance inst = build_lower_bound(5);
    PlaneGraph g = inst.graph;
    Fleeq fq = validate_flarbable(g, inst.curve);
    FaceClassification fc = classify(g, fq);
    CHECK(fc.a >= 5);
    CHECK(fc.s >= 5);
    FlarbReport r = execute_flarb(g, inst.curve);
    CHECK(is_isomorphic(inst.graph, g));
    CHECK(r.cost() >= 5);
    MESSAGE("k=5 shrinkage deficit " << shrinkage_detail(r).worst_deficit);
}

TEST_CASE("run_cycle") {
    auto a = run_cycle(4, 10);
    CHECK(a.size() == 10);
    for (const auto& r : a) CHECK(r.cost() >= 4);
    auto b = run_cycle(2, 1);
    REQUIRE(b.size() == 1);
    CHECK(b[0].v_before == 10);
    auto c = run_lower_bound_cycle(6, 3);
    for (const auto& r : c) {
        CHECK(r.isomorphic);
        CHECK(r.report.v_before == 2 * 6 * 7 - 2);
        CHECK(r.report.v_after == 2 * 6 * 7 - 2);
    }
}
