#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsg/quasi_semigroup.hpp"

namespace qsg {

struct CatalogEntry {
    std::string name;
    std::string description;
};

// Built-in backends, listed alphabetically; identical across invocations.
std::vector<CatalogEntry> list_catalog();

// Named scalar scales usable by scaled backends: "one", "linear" (1 + u),
// "exponential" (e^u). Throws CatalogError on unknown names.
ScalarMap scalar_map(const std::string& name);

// Named generator families for evolution backends:
// "noncommuting" = [[0, 1], [t, 0]]. Throws CatalogError on unknown names.
MatrixMap matrix_map(const std::string& name);

// Deterministic seeded matrices (bit-for-bit reproducible per seed).
// Normal matrices conjugate a random diagonal (eigenvalues uniform in a
// disk of radius 1.2) by a random unitary.
CMatrix random_normal_matrix(std::size_t dim, std::uint64_t seed);
CMatrix random_general_matrix(std::size_t dim, std::uint64_t seed);

// Instantiate a catalog backend by name; dim and seed only affect the
// random-* entries. Throws CatalogError on unknown names.
QuasiSemigroup catalog_backend(const std::string& name, ToleranceContext tol = {},
                               std::size_t dim = 4, std::uint64_t seed = 1);

}  // namespace qsg
