#pragma once

#include "jtk/jacobi.hpp"
#include "jtk/morphism.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jtk {

struct FileParseError : std::runtime_error {
    int line;
    FileParseError(const std::string& what, int line_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what),
          line(line_) {}
};

// Parsed form of the line-oriented structure file:
//   chart x y z
//   pi deg 2
//   ( x y ) = x^4 + y^4
//   E deg 1
//   ( z ) = 2
//   assert proper false
//   note free-form text
// '#' starts a comment; block names are arbitrary identifiers.
struct StructureFile {
    Chart chart{std::vector<std::string>{}};
    std::vector<std::pair<std::string, SkewField>> blocks;
    std::map<std::string, bool> flags;
    std::vector<std::string> notes;

    const SkewField* block(const std::string& name) const;
    // Requires blocks pi (deg 2) and E (deg 1).
    JacobiStructure to_jacobi() const;
};

StructureFile parse_structure_file(const std::string& text);
std::string emit_structure_file(const StructureFile& sf);
std::string emit_structure_file(const JacobiStructure& j);
std::string emit_structure_file(const HomogeneousPoisson& hp);

// Map file:
//   map from p1 p2 p3 to x y z
//   x = p1*sin(p1^3*p2)
//   ...
SmoothMap parse_map_file(const std::string& text);

}  // namespace jtk
