#pragma once
#include <stdexcept>
#include <string>

namespace flarb {

enum class Errc {
    NonCubic,
    NonPlanarEmbedding,
    AsymmetricAdjacency,
    UnknownEdge,
    InvalidSlot,
    UnknownVertex,
    Disconnected,
    EmptyInterior,
    DisconnectedInterior,
    FaceCrossedTwice,
    NotSimpleCurve,
    InvalidK,
    NotARoot,
    SameTree,
    OracleInconsistent,
    CollinearDefiners,
    NotInConvexPosition,
    DuplicateSite,
    GeneralPositionViolated,
    DuplicateId,
    UnknownId,
    Collinear,
    UnknownSite,
    BadConfig,
    MalformedReport,
    ParseError,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace flarb
