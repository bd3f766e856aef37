#include "flarb/generators.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "flarb/error.hpp"

namespace flarb {

SiteOrder parse_site_order(const std::string& name) {
    if (name == "random-convex" || name == "random") return SiteOrder::Random;
    if (name == "clockwise-convex" || name == "clockwise") return SiteOrder::Clockwise;
    throw Error(Errc::BadConfig, "unknown generator '" + name + "'");
}

std::vector<Site> parabola_sites(int n, std::uint64_t seed, SiteOrder order) {
    if (n < 0) throw Error(Errc::BadConfig, "negative site count");
    std::mt19937_64 rng(seed);
    // keep x^2 within the fast integer range when possible
    long long span = std::max<long long>(16LL * n, 64);
    if (span > 16000 && n <= 8000) span = 16000;
    std::uniform_int_distribution<long long> dist(1, span);
    std::unordered_set<long long> seen;
    std::vector<long long> xs;
    while (static_cast<int>(xs.size()) < n) {
        long long x = dist(rng);
        if (seen.insert(x).second) xs.push_back(x);
    }
    if (order == SiteOrder::Clockwise) std::sort(xs.begin(), xs.end(), std::greater<>());
    std::vector<Site> out;
    out.reserve(xs.size());
    for (long long x : xs) out.emplace_back(x, x * x);
    return out;
}

}  // namespace flarb
