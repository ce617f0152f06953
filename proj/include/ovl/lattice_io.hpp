#pragma once

// Lattice files: {"rank": n, "gram": [[...], ...]} with integer entries.

#include "ovl/lattice.hpp"

#include <string>

namespace ovl {

/// Throws std::invalid_argument on malformed, non-symmetric or degenerate
/// input and on a rank mismatch.
IntegralLattice parse_lattice(const std::string& text);
IntegralLattice load_lattice(const std::string& path);
std::string dump_lattice(const IntegralLattice& l);

}  // namespace ovl
