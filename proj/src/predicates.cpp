#include "flarb/predicates.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace flarb {

namespace {

constexpr long long kSmallBound = 1LL << 28;

using i128 = __int128;

int sgn(i128 v) { return (v > 0) - (v < 0); }
int sgn(const mpq_class& v) { return ::sgn(v); }

bool fits_small(const mpq_class& v, long long& out) {
    if (v.get_den() != 1) return false;
    const mpz_class& n = v.get_num();
    if (!n.fits_slong_p()) return false;
    long long t = n.get_si();
    if (t > kSmallBound || t < -kSmallBound) return false;
    out = t;
    return true;
}

int orient_small(const Site& a, const Site& b, const Site& c) {
    i128 abx = b.sx() - a.sx(), aby = b.sy() - a.sy();
    i128 acx = c.sx() - a.sx(), acy = c.sy() - a.sy();
    return sgn(abx * acy - aby * acx);
}

int orient_exact(const mpq_class& ax, const mpq_class& ay, const mpq_class& bx,
                 const mpq_class& by, const mpq_class& cx, const mpq_class& cy) {
    mpq_class d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sgn(d);
}

int incircle_det_small(const Site& a, const Site& b, const Site& c, const Site& q) {
    i128 ax = a.sx() - q.sx(), ay = a.sy() - q.sy();
    i128 bx = b.sx() - q.sx(), by = b.sy() - q.sy();
    i128 cx = c.sx() - q.sx(), cy = c.sy() - q.sy();
    i128 a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    i128 det = a2 * (bx * cy - by * cx) - b2 * (ax * cy - ay * cx) + c2 * (ax * by - ay * bx);
    return sgn(det);
}

int incircle_det_exact(const Site& a, const Site& b, const Site& c, const Site& q) {
    mpq_class ax = a.x() - q.x(), ay = a.y() - q.y();
    mpq_class bx = b.x() - q.x(), by = b.y() - q.y();
    mpq_class cx = c.x() - q.x(), cy = c.y() - q.y();
    mpq_class a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    mpq_class det = a2 * (bx * cy - by * cx) - b2 * (ax * cy - ay * cx) + c2 * (ax * by - ay * bx);
    return sgn(det);
}

mpq_class parse_rational(const std::string& tok) {
    std::string t;
    for (char ch : tok)
        if (ch != ' ' && ch != '\t' && ch != '\r') t.push_back(ch);
    if (t.empty()) throw Error(Errc::ParseError, "empty coordinate");
    auto valid = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = t.find('/');
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid(num) || !valid(den)) throw Error(Errc::ParseError, "bad rational '" + tok + "'");
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    mpz_class n(num), d(den);
    if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + tok + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace

Site::Site(const mpq_class& x, const mpq_class& y) : x_(x), y_(y) {
    x_.canonicalize();
    y_.canonicalize();
    small_ = fits_small(x_, sx_) && fits_small(y_, sy_);
}

bool Site::operator==(const Site& o) const {
    if (small_ && o.small_) return sx_ == o.sx_ && sy_ == o.sy_;
    return x_ == o.x_ && y_ == o.y_;
}

Orientation orientation(const Site& a, const Site& b, const Site& c) {
    int s = (a.small() && b.small() && c.small())
                ? orient_small(a, b, c)
                : orient_exact(a.x(), a.y(), b.x(), b.y(), c.x(), c.y());
    return static_cast<Orientation>(s);
}

Orientation orientation(const Point& a, const Point& b, const Point& c) {
    return static_cast<Orientation>(orient_exact(a.x, a.y, b.x, b.y, c.x, c.y));
}

CircleSide in_circle(const Site& a, const Site& b, const Site& c, const Site& q) {
    int o = static_cast<int>(orientation(a, b, c));
    if (o == 0) throw Error(Errc::CollinearDefiners, "in_circle on collinear definers");
    int d = (a.small() && b.small() && c.small() && q.small()) ? incircle_det_small(a, b, c, q)
                                                                 : incircle_det_exact(a, b, c, q);
    return static_cast<CircleSide>(d * o);
}

Point circumcenter(const Site& a, const Site& b, const Site& c) {
    if (orientation(a, b, c) == Orientation::Collinear)
        throw Error(Errc::CollinearDefiners, "circumcenter of collinear sites");
    const mpq_class &ax = a.x(), &ay = a.y(), &bx = b.x(), &by = b.y(), &cx = c.x(), &cy = c.y();
    mpq_class d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    mpq_class a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    Point p;
    p.x = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    p.y = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    p.x.canonicalize();
    p.y.canonicalize();
    return p;
}

mpq_class squared_distance(const Point& p, const Site& a) {
    mpq_class dx = p.x - a.x(), dy = p.y - a.y();
    return dx * dx + dy * dy;
}

int compare_distance(const Point& p, const Site& a, const Site& b) {
    return sgn(squared_distance(p, a) - squared_distance(p, b));
}

std::pair<std::size_t, std::size_t> convex_position_insertable(const std::vector<Site>& hull,
                                                               const Site& q) {
    const std::size_t n = hull.size();
    if (n == 0) throw Error(Errc::BadConfig, "empty hull");
    for (const Site& s : hull)
        if (s == q) throw Error(Errc::DuplicateSite, "site already present");
    if (n == 1) return {0, 0};
    if (n == 2) {
        Orientation o = orientation(hull[0], hull[1], q);
        if (o == Orientation::Collinear)
            throw Error(Errc::GeneralPositionViolated, "three collinear sites");
        // left: ccw order h0 h1 q; right: h0 q h1
        return o == Orientation::Left ? std::pair<std::size_t, std::size_t>{1, 0}
                                      : std::pair<std::size_t, std::size_t>{0, 1};
    }
    std::size_t visible = 0, idx = 0;
    bool touching = false;
    for (std::size_t i = 0; i < n; ++i) {
        Orientation o = orientation(hull[i], hull[(i + 1) % n], q);
        if (o == Orientation::Right) {
            ++visible;
            idx = i;
        } else if (o == Orientation::Collinear) {
            touching = true;
        }
    }
    if (visible != 1) {
        if (visible == 0 && touching) throw Error(Errc::NotInConvexPosition, "site on the hull boundary");
        throw Error(Errc::NotInConvexPosition, "site not insertable in convex position");
    }
    std::size_t a = idx, b = (idx + 1) % n;
    if (orientation(hull[(a + n - 1) % n], hull[a], q) != Orientation::Left ||
        orientation(hull[b], hull[(b + 1) % n], q) != Orientation::Left)
        throw Error(Errc::GeneralPositionViolated, "three collinear hull sites");
    return {a, b};
}

std::string to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Site parse_site(const std::string& line) {
    auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(Errc::ParseError, "missing comma in '" + line + "'");
    if (line.find(',', comma + 1) != std::string::npos)
        throw Error(Errc::ParseError, "too many fields in '" + line + "'");
    return Site(parse_rational(line.substr(0, comma)), parse_rational(line.substr(comma + 1)));
}

std::string format_site(const Site& s) { return to_string(s.x()) + "," + to_string(s.y()); }

std::vector<Site> read_sites_csv(std::istream& in) {
    std::vector<Site> out;
    std::string line;
    while (std::getline(in, line)) {
        bool blank = true;
        for (char ch : line)
            if (ch != ' ' && ch != '\t' && ch != '\r') blank = false;
        if (blank || line[0] == '#') continue;
        out.push_back(parse_site(line));
    }
    return out;
}

void write_sites_csv(std::ostream& out, const std::vector<Site>& sites) {
    for (const Site& s : sites) out << format_site(s) << '\n';
}

}  // namespace flarb
