#include "flarb/grappa_tree.hpp"

#include <algorithm>

namespace flarb {

namespace {
std::string str(int x) { return std::to_string(x); }
}  // namespace

int GrappaTree::new_node() {
    if (!free_nodes_.empty()) {
        int x = free_nodes_.back();
        free_nodes_.pop_back();
        t_[x] = Node{};
        return x;
    }
    t_.emplace_back();
    return static_cast<int>(t_.size()) - 1;
}

bool GrappaTree::has_vertex(int v) const {
    return v >= 0 && v < static_cast<int>(vnode_.size()) && vnode_[v] >= 0;
}

bool GrappaTree::has_edge(int e) const {
    return e >= 0 && e < static_cast<int>(enode_.size()) && enode_[e] >= 0;
}

int GrappaTree::vn(int v) const {
    if (!has_vertex(v)) throw Error(Errc::UnknownVertex, "grappa vertex " + str(v));
    return vnode_[v];
}

int GrappaTree::en(int e) const {
    if (!has_edge(e)) throw Error(Errc::UnknownEdge, "grappa edge " + str(e));
    return enode_[e];
}

bool GrappaTree::is_aux_root(int x) const {
    int p = t_[x].p;
    return p < 0 || (t_[p].ch[0] != x && t_[p].ch[1] != x);
}

void GrappaTree::apply_flip(int x) {
    if (x < 0) return;
    Node& n = t_[x];
    std::swap(n.ch[0], n.ch[1]);
    std::swap(n.first_v, n.last_v);
    std::swap(n.first_n, n.last_n);
    std::swap(n.has_tag_l, n.has_tag_r);
    std::swap(n.tag_l, n.tag_r);
    if (n.is_edge) {
        std::swap(n.upper, n.lower);
        std::swap(n.left, n.right);
    } else {
        std::swap(n.up, n.down);
    }
    n.flip = !n.flip;
}

void GrappaTree::apply_tag(int x, bool left_side, Mark m) {
    if (x < 0) return;
    Node& n = t_[x];
    if (left_side) {
        n.has_tag_l = true;
        n.tag_l = m;
        if (n.is_edge) n.left = m;
    } else {
        n.has_tag_r = true;
        n.tag_r = m;
        if (n.is_edge) n.right = m;
    }
}

void GrappaTree::push(int x) {
    Node& n = t_[x];
    if (n.flip) {
        apply_flip(n.ch[0]);
        apply_flip(n.ch[1]);
        n.flip = false;
    }
    if (n.has_tag_l) {
        apply_tag(n.ch[0], true, n.tag_l);
        apply_tag(n.ch[1], true, n.tag_l);
        n.has_tag_l = false;
    }
    if (n.has_tag_r) {
        apply_tag(n.ch[0], false, n.tag_r);
        apply_tag(n.ch[1], false, n.tag_r);
        n.has_tag_r = false;
    }
}

void GrappaTree::pull(int x) {
    Node& n = t_[x];
    int l = n.ch[0], r = n.ch[1];
    int self_v = n.is_edge ? -1 : x;
    n.first_v = l >= 0 && t_[l].first_v >= 0 ? t_[l].first_v : (self_v >= 0 ? self_v : (r >= 0 ? t_[r].first_v : -1));
    n.last_v = r >= 0 && t_[r].last_v >= 0 ? t_[r].last_v : (self_v >= 0 ? self_v : (l >= 0 ? t_[l].last_v : -1));
    n.first_n = l >= 0 ? t_[l].first_n : x;
    n.last_n = r >= 0 ? t_[r].last_n : x;
}

void GrappaTree::rotate(int x) {
    int p = t_[x].p, g = t_[p].p;
    int dx = t_[p].ch[1] == x;
    int b = t_[x].ch[dx ^ 1];
    if (!is_aux_root(p)) t_[g].ch[t_[g].ch[1] == p] = x;
    t_[x].p = g;
    t_[x].ch[dx ^ 1] = p;
    t_[p].p = x;
    t_[p].ch[dx] = b;
    if (b >= 0) t_[b].p = p;
    pull(p);
    pull(x);
}

void GrappaTree::splay(int x) {
    static thread_local std::vector<int> stack;
    stack.clear();
    int y = x;
    stack.push_back(y);
    while (!is_aux_root(y)) {
        y = t_[y].p;
        stack.push_back(y);
    }
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) push(*it);
    while (!is_aux_root(x)) {
        int p = t_[x].p;
        if (!is_aux_root(p)) {
            int g = t_[p].p;
            bool zigzig = (t_[g].ch[1] == p) == (t_[p].ch[1] == x);
            rotate(zigzig ? p : x);
        }
        rotate(x);
    }
}

void GrappaTree::fire(int vnode, bool becomes) {
    if (on_root_ && vnode >= 0) on_root_(t_[vnode].id, becomes);
}

void GrappaTree::access(int v) {
    int x = vn(v);
    splay(x);
    if (t_[x].ch[1] >= 0) {
        fire(t_[t_[x].ch[1]].first_v, true);
        t_[x].ch[1] = -1;
        t_[x].down = -1;
        pull(x);
    }
    int last = x;
    while (t_[last].p >= 0) {
        int w = t_[last].p;
        splay(w);
        int r = t_[w].ch[1];
        if (r >= 0) fire(t_[r].first_v, true);
        fire(t_[last].first_v, false);
        t_[w].ch[1] = last;
        t_[w].down = t_[t_[last].first_n].id;
        pull(w);
        last = w;
    }
    splay(x);
}

void GrappaTree::make_tree(int v) {
    if (v < 0) throw Error(Errc::UnknownVertex, "negative vertex id");
    if (v >= static_cast<int>(vnode_.size())) {
        vnode_.resize(v + 1, -1);
        adj_.resize(v + 1);
    }
    if (vnode_[v] >= 0) throw Error(Errc::DuplicateId, "vertex " + str(v) + " already exists");
    int x = new_node();
    t_[x].id = v;
    pull(x);
    vnode_[v] = x;
    adj_[v].clear();
    ++live_vertices_;
    fire(x, true);
}

void GrappaTree::remove_vertex(int v) {
    int x = vn(v);
    if (!adj_[v].empty()) throw Error(Errc::InvalidSlot, "vertex " + str(v) + " still has edges");
    fire(x, false);
    vnode_[v] = -1;
    free_nodes_.push_back(x);
    --live_vertices_;
}

int GrappaTree::find_root(int v) {
    access(v);
    int r = t_[t_[vn(v)].first_v].id;
    splay(vnode_[r]);
    return r;
}

int GrappaTree::link(int v, int w, Mark left, Mark right) {
    vn(v);
    int xw = vn(w);
    if (v == w) throw Error(Errc::SameTree, "link of a vertex to itself");
    if (find_root(w) != w) throw Error(Errc::NotARoot, "vertex " + str(w) + " is not a root");
    if (find_root(v) == w) throw Error(Errc::SameTree, "vertices already connected");
    access(w);
    int e = static_cast<int>(enode_.size());
    int x = new_node();
    enode_.push_back(x);
    ends_.emplace_back(v, w);
    Node& n = t_[x];
    n.is_edge = true;
    n.id = e;
    n.upper = v;
    n.lower = w;
    n.left = left;
    n.right = right;
    pull(x);
    t_[xw].ch[0] = x;
    t_[x].p = xw;
    t_[xw].up = e;
    pull(xw);
    t_[xw].p = vn(v);  // path-parent
    adj_[v].push_back(e);
    adj_[w].push_back(e);
    ++live_edges_;
    return e;
}

void GrappaTree::cut(int e) {
    int x = en(e);
    int up = upper(e);
    access(up);
    splay(x);
    if (t_[x].ch[0] >= 0) throw Error(Errc::Internal, "cut edge is not the top of its path");
    int r = t_[x].ch[1];
    if (r < 0) throw Error(Errc::Internal, "cut edge without lower vertex");
    t_[r].p = -1;
    t_[x].ch[1] = -1;
    int lw = t_[t_[r].first_v].id;
    splay(vnode_[lw]);
    t_[vnode_[lw]].up = -1;
    auto& a = adj_[up];
    a.erase(std::find(a.begin(), a.end(), e));
    auto& b = adj_[lw];
    b.erase(std::find(b.begin(), b.end(), e));
    enode_[e] = -1;
    free_nodes_.push_back(x);
    --live_edges_;
}

void GrappaTree::evert(int v) {
    access(v);
    int x = vnode_[v];
    int r = t_[t_[x].first_v].id;
    if (r != v) {
        fire(vnode_[r], false);
        fire(x, true);
    }
    apply_flip(x);
}

void GrappaTree::left_mark(int v, Mark m) {
    access(v);
    apply_tag(vnode_[v], true, m);
}

void GrappaTree::right_mark(int v, Mark m) {
    access(v);
    apply_tag(vnode_[v], false, m);
}

std::pair<Mark, Mark> GrappaTree::get_marks(int e) {
    int x = en(e);
    splay(x);
    return {t_[x].left, t_[x].right};
}

int GrappaTree::upper(int e) {
    int x = en(e);
    splay(x);
    return t_[x].upper;
}

int GrappaTree::lower(int e) {
    int x = en(e);
    splay(x);
    return t_[x].lower;
}

std::pair<int, int> GrappaTree::endpoints(int e) const {
    en(e);
    return ends_[e];
}

const std::vector<int>& GrappaTree::incident(int v) const {
    vn(v);
    return adj_[v];
}

int GrappaTree::other_end(int e, int v) const {
    auto [a, b] = endpoints(e);
    return a == v ? b : a;
}

int GrappaTree::parent_edge(int v) {
    access(v);
    return t_[vnode_[v]].up;
}

int GrappaTree::parent(int v) {
    int e = parent_edge(v);
    return e < 0 ? -1 : other_end(e, v);
}

GrappaTree::Node GrappaTree::peek(int x) const {
    Node n = t_[x];
    int y = x;
    while (!is_aux_root(y)) {
        y = t_[y].p;
        const Node& a = t_[y];
        if (a.flip) {
            std::swap(n.upper, n.lower);
            std::swap(n.left, n.right);
            std::swap(n.up, n.down);
        }
        if (a.has_tag_l && n.is_edge) n.left = a.tag_l;
        if (a.has_tag_r && n.is_edge) n.right = a.tag_r;
    }
    return n;
}

int GrappaTree::other_incident(int v, int e) const {
    for (int g : adj_[v])
        if (g != e) return g;
    return -1;
}

bool GrappaTree::ask(const EdgeOracle& oracle, int f, int f2, int shared, bool shared_is_upper) {
    EdgeQuery q;
    q.f = f;
    q.f2 = f2;
    q.shared = shared;
    q.shared_is_upper = shared_is_upper;
    Node nf = peek(enode_[f]);
    q.f_left = nf.left;
    q.f_right = nf.right;
    if (f2 >= 0) {
        Node n2 = peek(enode_[f2]);
        q.f2_left = n2.left;
        q.f2_right = n2.right;
    }
    ++oracle_calls_;
    return oracle(q);
}

std::optional<SearchResult> GrappaTree::oracle_search(int v, const EdgeOracle& oracle) {
    access(v);
    int x = vnode_[v];
    const long long limit = 4LL * static_cast<long long>(t_.size()) + 64;
    long long steps = 0;
    while (true) {
        if (x < 0) throw Error(Errc::OracleInconsistent, "search left the tree");
        if (++steps > limit) throw Error(Errc::OracleInconsistent, "search did not converge");
        push(x);
        const Node& n = t_[x];
        if (n.is_edge) {
            int f = n.id;
            int u = n.upper, w = n.lower;
            int fu = other_incident(u, f);
            if (fu >= 0 && ask(oracle, f, fu, u, true)) {
                x = t_[x].ch[0];
                continue;
            }
            int fw = other_incident(w, f);
            if (fw >= 0 && ask(oracle, f, fw, w, false)) {
                x = t_[x].ch[1];
                continue;
            }
            Mark l = t_[x].left, r = t_[x].right;
            access(w);
            return SearchResult{f, l, r};
        }
        int vid = n.id;
        int up = n.up, down = n.down;
        const auto& inc = adj_[vid];
        if (inc.empty()) throw Error(Errc::OracleInconsistent, "tree has no edges");
        std::vector<int> order;
        if (up >= 0) order.push_back(up);
        if (down >= 0) order.push_back(down);
        for (int g : inc)
            if (g != up && g != down) order.push_back(g);
        int branch = order.back();
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            int g = order[i];
            int other = order.back();
            if (!ask(oracle, g, other, vid, g != up)) {
                branch = g;
                break;
            }
        }
        if (branch == up) {
            x = t_[x].ch[0];
        } else if (branch == down) {
            x = t_[x].ch[1];
        } else {
            int gx = enode_[branch];
            splay(gx);
            x = gx;
        }
    }
}

std::optional<SearchResult> GrappaTree::path_search(int v, const EdgeOracle& oracle) {
    int x = vn(v);
    splay(x);
    int last = x;
    const long long limit = static_cast<long long>(t_.size()) + 8;
    long long steps = 0;
    while (x >= 0) {
        if (++steps > limit) throw Error(Errc::OracleInconsistent, "path search did not converge");
        push(x);
        last = x;
        const Node& n = t_[x];
        if (!n.is_edge) {
            // the down edge decides: true means the target is not below it
            int de = n.down;
            bool below = de >= 0 && !ask(oracle, de, -1, n.id, true);
            x = below ? n.ch[1] : n.ch[0];
            continue;
        }
        int f = n.id;
        if (ask(oracle, f, -1, n.upper, true)) {
            x = n.ch[0];
            continue;
        }
        if (ask(oracle, f, -1, n.lower, false)) {
            x = n.ch[1];
            continue;
        }
        Mark l = n.left, r = n.right;
        splay(x);
        return SearchResult{f, l, r};
    }
    splay(last);
    return std::nullopt;
}

void GrappaTree::path_walk(int v, const std::function<bool(bool, int)>& cb) {
    int x = vn(v);
    splay(x);
    std::vector<int> stack;
    int cur = x;
    while (cur >= 0 || !stack.empty()) {
        while (cur >= 0) {
            push(cur);
            stack.push_back(cur);
            cur = t_[cur].ch[0];
        }
        cur = stack.back();
        stack.pop_back();
        if (!cb(t_[cur].is_edge, t_[cur].id)) return;
        cur = t_[cur].ch[1];
    }
}

int GrappaTree::path_root(int v) {
    int x = vn(v);
    splay(x);
    return t_[t_[x].first_v].id;
}

int GrappaTree::path_up_edge(int v) {
    int x = vn(v);
    splay(x);
    return t_[x].up;
}

int GrappaTree::path_down_edge(int v) {
    int x = vn(v);
    splay(x);
    return t_[x].down;
}

std::vector<int> GrappaTree::path_roots_brute() const {
    std::vector<int> roots;
    for (int x = 0; x < static_cast<int>(t_.size()); ++x) {
        if (t_[x].id < 0) continue;
        bool live = t_[x].is_edge ? (t_[x].id < static_cast<int>(enode_.size()) && enode_[t_[x].id] == x)
                                  : (t_[x].id < static_cast<int>(vnode_.size()) && vnode_[t_[x].id] == x);
        if (!live || !is_aux_root(x)) continue;
        // in-order with accumulated flips, no mutation
        std::vector<std::pair<int, bool>> st;
        int cur = x;
        bool fl = false;
        std::vector<int> order;
        while (cur >= 0 || !st.empty()) {
            while (cur >= 0) {
                st.push_back({cur, fl});
                bool f2 = fl ^ t_[cur].flip;
                cur = t_[cur].ch[fl ? 1 : 0];
                fl = f2;
            }
            auto [c, cf] = st.back();
            st.pop_back();
            order.push_back(c);
            bool f2 = cf ^ t_[c].flip;
            cur = t_[c].ch[cf ? 0 : 1];
            fl = f2;
        }
        for (int y : order)
            if (!t_[y].is_edge) {
                roots.push_back(t_[y].id);
                break;
            }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace flarb
