#include <random>
#include <set>

#include "doctest.h"
#include "flarb/circle_store.hpp"

using namespace flarb;

namespace {

DefinerCircle random_circle(std::mt19937_64& rng, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    while (true) {
        DefinerCircle c{Site(d(rng), d(rng)), Site(d(rng), d(rng)), Site(d(rng), d(rng))};
        if (orientation(c.a, c.b, c.c) != Orientation::Collinear) return c;
    }
}

}  // namespace

TEST_CASE("basic store semantics") {
    for (auto b : {CircleBackend::Scan, CircleBackend::Sublinear}) {
        auto s = make_circle_store(b);
        s->insert(1, {Site(0, 0), Site(2, 0), Site(0, 2)});
        auto hit = s->find_containing(Site(1, 1));
        REQUIRE(hit.has_value());
        CHECK(hit->first == 1);
        CHECK_FALSE(s->find_containing(Site(5, 5)).has_value());
        CHECK_FALSE(s->find_containing(Site(2, 2)).has_value());  // on the circle
        try {
            s->insert(1, {Site(0, 0), Site(2, 0), Site(0, 2)});
            FAIL("expected DuplicateId");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::DuplicateId);
        }
        s->remove(1);
        CHECK(s->size() == 0);
        try {
            s->remove(1);
            FAIL("expected UnknownId");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::UnknownId);
        }
        std::mt19937_64 rng(1);
        for (int i = 0; i < 1000; ++i) s->insert(i, random_circle(rng, 1000));
        CHECK(s->size() == 1000);
    }
    CHECK(parse_backend("scan") == CircleBackend::Scan);
    CHECK_THROWS_AS(parse_backend("fast"), Error);
}

TEST_CASE("exhaustion returns exactly the containing circles") {
    std::mt19937_64 rng(5);
    for (auto b : {CircleBackend::Scan, CircleBackend::Sublinear}) {
        auto s = make_circle_store(b);
        std::vector<DefinerCircle> cs;
        for (int i = 0; i < 300; ++i) {
            cs.push_back(random_circle(rng, 100));
            s->insert(i, cs.back());
        }
        std::uniform_int_distribution<int> d(-100, 100);
        for (int rep = 0; rep < 50; ++rep) {
            Site q(d(rng), d(rng));
            std::set<int> expect;
            for (int i = 0; i < 300; ++i)
                if (in_circle(cs[i].a, cs[i].b, cs[i].c, q) == CircleSide::Inside) expect.insert(i);
            std::set<int> got;
            while (auto hit = s->find_containing(q)) {
                got.insert(hit->first);
                s->remove(hit->first);
            }
            CHECK(got == expect);
            for (int i : got) s->insert(i, cs[i]);
        }
    }
}

TEST_CASE("sublinear agrees with scan on 10^4 mixed operations") {
    std::mt19937_64 rng(77);
    auto scan = make_circle_store(CircleBackend::Scan);
    auto fast = make_circle_store(CircleBackend::Sublinear);
    std::vector<int> live;
    std::vector<DefinerCircle> circles;
    int agree = 0, total = 0;
    std::uniform_int_distribution<int> d(-3000, 3000);
    for (int op = 0; op < 10000; ++op) {
        int kind = std::uniform_int_distribution<int>(0, 9)(rng);
        if (kind < 4 || live.size() < 10) {
            int id = static_cast<int>(circles.size());
            circles.push_back(random_circle(rng, 3000));
            scan->insert(id, circles.back());
            fast->insert(id, circles.back());
            live.push_back(id);
        } else if (kind < 6) {
            std::size_t i = std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng);
            scan->remove(live[i]);
            fast->remove(live[i]);
            live[i] = live.back();
            live.pop_back();
        } else {
            Site q(d(rng), d(rng));
            auto a = scan->find_containing(q);
            auto b = fast->find_containing(q);
            ++total;
            bool ok = a.has_value() == b.has_value();
            if (b) ok = ok && in_circle(b->second.a, b->second.b, b->second.c, q) == CircleSide::Inside &&
                        fast->contains(b->first);
            agree += ok;
        }
        CHECK(scan->size() == fast->size());
    }
    CHECK(agree == total);
}
