#include "flarb/error.hpp"

namespace flarb {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonCubic: return "NonCubic";
        case Errc::NonPlanarEmbedding: return "NonPlanarEmbedding";
        case Errc::AsymmetricAdjacency: return "AsymmetricAdjacency";
        case Errc::UnknownEdge: return "UnknownEdge";
        case Errc::InvalidSlot: return "InvalidSlot";
        case Errc::UnknownVertex: return "UnknownVertex";
        case Errc::Disconnected: return "Disconnected";
        case Errc::EmptyInterior: return "EmptyInterior";
        case Errc::DisconnectedInterior: return "DisconnectedInterior";
        case Errc::FaceCrossedTwice: return "FaceCrossedTwice";
        case Errc::NotSimpleCurve: return "NotSimpleCurve";
        case Errc::InvalidK: return "InvalidK";
        case Errc::NotARoot: return "NotARoot";
        case Errc::SameTree: return "SameTree";
        case Errc::OracleInconsistent: return "OracleInconsistent";
        case Errc::CollinearDefiners: return "CollinearDefiners";
        case Errc::NotInConvexPosition: return "NotInConvexPosition";
        case Errc::DuplicateSite: return "DuplicateSite";
        case Errc::GeneralPositionViolated: return "GeneralPositionViolated";
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::UnknownId: return "UnknownId";
        case Errc::Collinear: return "Collinear";
        case Errc::UnknownSite: return "UnknownSite";
        case Errc::BadConfig: return "BadConfig";
        case Errc::MalformedReport: return "MalformedReport";
        case Errc::ParseError: return "ParseError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace flarb
