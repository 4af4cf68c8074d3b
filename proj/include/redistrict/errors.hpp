#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace redistrict {

/// Base class for all library errors. Every failure mode has its own type so
/// callers can catch selectively; the message always carries the specifics.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- geometry kernel -------------------------------------------------------

struct InvalidGeometry : Error {
    explicit InvalidGeometry(const std::string& msg) : Error(msg) {}
};

/// A unit's entire geometry vanished under snapping.
struct GeometryCollapsed : Error {
    explicit GeometryCollapsed(const std::string& msg) : Error(msg) {}
};

/// Input outside the projection's domain (polar latitudes, bad zone).
struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& msg) : Error(msg) {}
};

// ---- repair ----------------------------------------------------------------

/// Iterative overlap resolution did not converge within the pass cap.
struct RepairFailed : Error {
    explicit RepairFailed(const std::string& msg) : Error(msg) {}
};

/// A layer failed its doctor check where a clean layer is required.
struct NotClean : Error {
    explicit NotClean(const std::string& msg) : Error(msg) {}
};

// ---- dual graph ------------------------------------------------------------

/// Mending small rook adjacencies would disconnect the graph.
struct DisconnectsGraph : Error {
    explicit DisconnectsGraph(const std::string& msg) : Error(msg) {}
};

// ---- assignment / aggregation ----------------------------------------------

struct CrsMismatch : Error {
    explicit CrsMismatch(const std::string& msg) : Error(msg) {}
};

struct NegativeWeight : Error {
    explicit NegativeWeight(const std::string& msg) : Error(msg) {}
};

/// A strict-conservation aggregation lost source units (the halt condition
/// for population columns).
struct PopulationNotConserved : Error {
    explicit PopulationNotConserved(const std::string& msg) : Error(msg) {}
};

// ---- pipeline ---------------------------------------------------------------

struct AmbiguousDistrictColumn : Error {
    explicit AmbiguousDistrictColumn(const std::string& msg) : Error(msg) {}
};

struct MissingDistrictColumn : Error {
    explicit MissingDistrictColumn(const std::string& msg) : Error(msg) {}
};

/// A precinct had zero overlap with every district.
struct UnassignedPrecinct : Error {
    explicit UnassignedPrecinct(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// ---- chain -----------------------------------------------------------------

/// A seed district is not connected in the dual graph.
struct DisconnectedDistrict : Error {
    explicit DisconnectedDistrict(const std::string& msg) : Error(msg) {}
};

/// Single-district partition: no cut edge to merge across.
struct NoCutEdges : Error {
    explicit NoCutEdges(const std::string& msg) : Error(msg) {}
};

struct MissingColumn : Error {
    explicit MissingColumn(const std::string& msg) : Error(msg) {}
};

struct EmptyEnsemble : Error {
    explicit EmptyEnsemble(const std::string& msg) : Error(msg) {}
};

// ---- file formats ----------------------------------------------------------

struct UnsupportedShapeType : Error {
    explicit UnsupportedShapeType(const std::string& msg) : Error(msg) {}
};

/// Truncated or corrupt binary record; carries the byte offset.
struct MalformedRecord : Error {
    MalformedRecord(const std::string& msg, std::uint64_t offset)
        : Error(msg + " (byte offset " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
    std::uint64_t byte_offset;
};

/// Text format error; carries line and column when known.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg), line(0), column(0) {}
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_), column(column_) {}
    int line;
    int column;
};

/// Graph JSON with edge u->v but no v->u.
struct AsymmetricAdjacency : Error {
    explicit AsymmetricAdjacency(const std::string& msg) : Error(msg) {}
};

}  // namespace redistrict
