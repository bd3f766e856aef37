#include "flarb/circle_store.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace flarb {

CircleBackend parse_backend(const std::string& name) {
    if (name == "scan") return CircleBackend::Scan;
    if (name == "sublinear") return CircleBackend::Sublinear;
    throw Error(Errc::BadConfig, "unknown backend '" + name + "'");
}

const char* backend_name(CircleBackend b) { return b == CircleBackend::Scan ? "scan" : "sublinear"; }

namespace {

bool strictly_inside(const DefinerCircle& c, const Site& q) {
    return in_circle(c.a, c.b, c.c, q) == CircleSide::Inside;
}

void check_definers(const DefinerCircle& c) {
    if (orientation(c.a, c.b, c.c) == Orientation::Collinear)
        throw Error(Errc::CollinearDefiners, "circle with collinear definers");
}

class ScanStore final : public CircleStore {
public:
    void insert(int id, const DefinerCircle& c) override {
        check_definers(c);
        if (index_.count(id)) throw Error(Errc::DuplicateId, "circle " + std::to_string(id));
        index_[id] = items_.size();
        items_.push_back({id, c});
    }
    void remove(int id) override {
        auto it = index_.find(id);
        if (it == index_.end()) throw Error(Errc::UnknownId, "circle " + std::to_string(id));
        std::size_t i = it->second;
        index_.erase(it);
        if (i + 1 != items_.size()) {
            items_[i] = std::move(items_.back());
            index_[items_[i].first] = i;
        }
        items_.pop_back();
    }
    bool contains(int id) const override { return index_.count(id) != 0; }
    std::size_t size() const override { return items_.size(); }
    std::optional<std::pair<int, DefinerCircle>> find_containing(const Site& q) override {
        for (const auto& it : items_)
            if (strictly_inside(it.second, q)) return it;
        return std::nullopt;
    }

private:
    std::vector<std::pair<int, DefinerCircle>> items_;
    std::unordered_map<int, std::size_t> index_;
};

// Lifted circle: contains (x,y) iff k - 2x cx - 2y cy < -(x^2 + y^2),
// with k = |c|^2 - R^2. Coordinates are approximations used only to prune.
struct Lifted {
    long double cx, cy, k;
    long double mag;  // scale for the pruning margin
};

Lifted lift(const DefinerCircle& c) {
    Point p = circumcenter(c.a, c.b, c.c);
    mpq_class r2 = squared_distance(p, c.a);
    mpq_class k = p.x * p.x + p.y * p.y - r2;
    Lifted l;
    l.cx = static_cast<long double>(p.x.get_d());
    l.cy = static_cast<long double>(p.y.get_d());
    l.k = static_cast<long double>(k.get_d());
    l.mag = std::fabs(l.k) + std::fabs(l.cx) + std::fabs(l.cy) + 1.0L;
    return l;
}

class KdBucket {
public:
    struct Item {
        int id;
        DefinerCircle circle;
        Lifted lifted;
        bool alive;
    };

    explicit KdBucket(std::vector<Item> items) : items_(std::move(items)) {
        order_.resize(items_.size());
        for (std::size_t i = 0; i < items_.size(); ++i) order_[i] = static_cast<int>(i);
        if (!items_.empty()) build(0, static_cast<int>(items_.size()), 0);
        live_ = items_.size();
    }

    std::size_t capacity() const { return items_.size(); }
    std::size_t live() const { return live_; }
    std::vector<Item>& items() { return items_; }

    void kill(std::size_t i) {
        if (items_[i].alive) {
            items_[i].alive = false;
            --live_;
        }
    }

    int query(const Site& q, long double qx, long double qy) const {
        if (nodes_.empty() || live_ == 0) return -1;
        long double rhs = -(qx * qx + qy * qy);
        long double qmag = std::fabs(qx) + std::fabs(qy) + 1.0L;
        return search(0, q, qx, qy, rhs, qmag);
    }

private:
    struct Node {
        int lo, hi;  // range in order_
        int left = -1, right = -1;
        long double mn[3], mx[3];
        long double mag;
    };
    std::vector<Item> items_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
    std::size_t live_ = 0;
    static constexpr int kLeaf = 8;

    int build(int lo, int hi, int depth) {
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back({lo, hi});
        Node nd{lo, hi};
        for (int d = 0; d < 3; ++d) {
            nd.mn[d] = INFINITY;
            nd.mx[d] = -INFINITY;
        }
        nd.mag = 0;
        for (int i = lo; i < hi; ++i) {
            const Lifted& l = items_[order_[i]].lifted;
            long double v[3] = {l.cx, l.cy, l.k};
            for (int d = 0; d < 3; ++d) {
                nd.mn[d] = std::min(nd.mn[d], v[d]);
                nd.mx[d] = std::max(nd.mx[d], v[d]);
            }
            nd.mag = std::max(nd.mag, l.mag);
        }
        if (hi - lo > kLeaf) {
            int axis = depth % 2;
            int mid = (lo + hi) / 2;
            std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi, [&](int a, int b) {
                return axis == 0 ? items_[a].lifted.cx < items_[b].lifted.cx : items_[a].lifted.cy < items_[b].lifted.cy;
            });
            nd.left = build(lo, mid, depth + 1);
            nd.right = build(mid, hi, depth + 1);
        }
        nodes_[id] = nd;
        return id;
    }

    int search(int ni, const Site& q, long double qx, long double qy, long double rhs, long double qmag) const {
        const Node& nd = nodes_[ni];
        // lower bound of k - 2 qx cx - 2 qy cy over the box
        long double ax = -2 * qx, ay = -2 * qy;
        long double lb = nd.mn[2] + std::min(ax * nd.mn[0], ax * nd.mx[0]) + std::min(ay * nd.mn[1], ay * nd.mx[1]);
        long double margin = 1e-9L * (nd.mag * qmag * qmag + qmag * qmag) + 1e-9L;
        if (lb > rhs + margin) return -1;
        if (nd.left < 0) {
            for (int i = nd.lo; i < nd.hi; ++i) {
                const Item& it = items_[order_[i]];
                if (it.alive && strictly_inside(it.circle, q)) return order_[i];
            }
            return -1;
        }
        int r = search(nd.left, q, qx, qy, rhs, qmag);
        if (r >= 0) return r;
        return search(nd.right, q, qx, qy, rhs, qmag);
    }
};

class SublinearStore final : public CircleStore {
public:
    void insert(int id, const DefinerCircle& c) override {
        check_definers(c);
        if (where_.count(id)) throw Error(Errc::DuplicateId, "circle " + std::to_string(id));
        std::vector<KdBucket::Item> carry{{id, c, lift(c), true}};
        // merge buckets of equal or smaller capacity (binary counter)
        std::size_t level = 0;
        while (level < buckets_.size() && buckets_[level]) {
            for (auto& it : buckets_[level]->items())
                if (it.alive) carry.push_back(std::move(it));
            buckets_[level].reset();
            ++level;
        }
        place(level, std::move(carry));
        ++size_;
    }

    void remove(int id) override {
        auto it = where_.find(id);
        if (it == where_.end()) throw Error(Errc::UnknownId, "circle " + std::to_string(id));
        auto [level, idx] = it->second;
        where_.erase(it);
        KdBucket& b = *buckets_[level];
        b.kill(idx);
        --size_;
        if (b.live() * 2 < b.capacity()) {
            std::vector<KdBucket::Item> keep;
            for (auto& x : b.items())
                if (x.alive) keep.push_back(std::move(x));
            buckets_[level].reset();
            if (!keep.empty()) {
                // re-home at the lowest free level that fits
                std::size_t lv = 0;
                while ((std::size_t{1} << lv) < keep.size()) ++lv;
                while (lv < buckets_.size() && buckets_[lv]) ++lv;
                place(lv, std::move(keep));
            }
        }
    }

    bool contains(int id) const override { return where_.count(id) != 0; }
    std::size_t size() const override { return size_; }

    std::optional<std::pair<int, DefinerCircle>> find_containing(const Site& q) override {
        long double qx = static_cast<long double>(q.x().get_d()), qy = static_cast<long double>(q.y().get_d());
        for (auto& b : buckets_) {
            if (!b) continue;
            int i = b->query(q, qx, qy);
            if (i >= 0) {
                const auto& it = b->items()[i];
                return std::make_pair(it.id, it.circle);
            }
        }
        return std::nullopt;
    }

private:
    std::vector<std::unique_ptr<KdBucket>> buckets_;
    std::unordered_map<int, std::pair<std::size_t, std::size_t>> where_;
    std::size_t size_ = 0;

    void place(std::size_t level, std::vector<KdBucket::Item> items) {
        if (level >= buckets_.size()) buckets_.resize(level + 1);
        buckets_[level] = std::make_unique<KdBucket>(std::move(items));
        auto& v = buckets_[level]->items();
        for (std::size_t i = 0; i < v.size(); ++i) where_[v[i].id] = {level, i};
    }
};

}  // namespace

std::unique_ptr<CircleStore> make_circle_store(CircleBackend backend) {
    if (backend == CircleBackend::Scan) return std::make_unique<ScanStore>();
    return std::make_unique<SublinearStore>();
}

}  // namespace flarb
