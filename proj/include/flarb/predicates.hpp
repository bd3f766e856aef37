#pragma once
// Exact rational geometry. Integer inputs with |coord| <= 2^28 take an
// __int128 path; everything else goes through GMP rationals.
#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "flarb/error.hpp"

namespace flarb {

struct Point {
    mpq_class x, y;
};

class Site {
public:
    Site() : Site(mpq_class(0), mpq_class(0)) {}
    Site(const mpq_class& x, const mpq_class& y);
    Site(long long x, long long y) : Site(mpq_class(static_cast<long>(x)), mpq_class(static_cast<long>(y))) {}

    const mpq_class& x() const { return x_; }
    const mpq_class& y() const { return y_; }
    bool small() const { return small_; }
    long long sx() const { return sx_; }
    long long sy() const { return sy_; }
    Point point() const { return {x_, y_}; }

    bool operator==(const Site& o) const;
    bool operator!=(const Site& o) const { return !(*this == o); }

private:
    mpq_class x_, y_;
    bool small_ = false;
    long long sx_ = 0, sy_ = 0;
};

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };
enum class CircleSide { Outside = -1, On = 0, Inside = 1 };

Orientation orientation(const Site& a, const Site& b, const Site& c);
Orientation orientation(const Point& a, const Point& b, const Point& c);

// Throws CollinearDefiners when a, b, c are collinear.
CircleSide in_circle(const Site& a, const Site& b, const Site& c, const Site& q);

Point circumcenter(const Site& a, const Site& b, const Site& c);

// sign(|p-a|^2 - |p-b|^2)
int compare_distance(const Point& p, const Site& a, const Site& b);
mpq_class squared_distance(const Point& p, const Site& a);

// hull: strictly convex, counterclockwise. Returns indices (pred, succ) of
// q's neighbours on the hull of hull + {q}.
std::pair<std::size_t, std::size_t> convex_position_insertable(const std::vector<Site>& hull,
                                                               const Site& q);

// 'n/d,n/d' per line; denominators optional.
Site parse_site(const std::string& line);
std::string format_site(const Site& s);
std::vector<Site> read_sites_csv(std::istream& in);
void write_sites_csv(std::ostream& out, const std::vector<Site>& sites);

std::string to_string(const mpq_class& q);

}  // namespace flarb
