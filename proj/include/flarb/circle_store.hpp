#pragma once
// Dynamic set of definer circles answering "some stored circle strictly
// containing q". Circles are kept by their three definers; every positive
// answer is confirmed with the exact in_circle predicate.
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "flarb/predicates.hpp"

namespace flarb {

struct DefinerCircle {
    Site a, b, c;
};

enum class CircleBackend { Scan, Sublinear };
CircleBackend parse_backend(const std::string& name);
const char* backend_name(CircleBackend b);

class CircleStore {
public:
    virtual ~CircleStore() = default;
    virtual void insert(int id, const DefinerCircle& c) = 0;
    virtual void remove(int id) = 0;
    virtual bool contains(int id) const = 0;
    virtual std::size_t size() const = 0;
    // Mutating for the sublinear backend (lazy rebuilds).
    virtual std::optional<std::pair<int, DefinerCircle>> find_containing(const Site& q) = 0;
};

std::unique_ptr<CircleStore> make_circle_store(CircleBackend backend);

}  // namespace flarb
