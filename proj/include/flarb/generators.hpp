#pragma once
// Site sequences in convex position: points (x, x^2) with distinct positive
// integer x. No three are collinear and no four are cocircular.
#include <cstdint>
#include <string>
#include <vector>

#include "flarb/predicates.hpp"

namespace flarb {

enum class SiteOrder { Random, Clockwise };

SiteOrder parse_site_order(const std::string& name);  // "random-convex" | "clockwise-convex"

std::vector<Site> parabola_sites(int n, std::uint64_t seed, SiteOrder order);

}  // namespace flarb
