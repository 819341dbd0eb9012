#pragma once

#include <string>

#include "hkcone/io.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(HKCONE_FIXTURE_DIR) + "/" + name; }

// The quartic K3 Picard lattice with the ambient pairing ideal (1, 1, 4).
inline hkcone::IntegralLattice quartic() { return hkcone::io::load_lattice(path("k3_3_quartic.json")); }
// Same Gram matrix, divisibility taken inside the rank-3 lattice itself.
inline hkcone::IntegralLattice quartic_pic() { return hkcone::io::load_lattice(path("k3_3_quartic_pic.json")); }
inline hkcone::SignatureTable table() { return hkcone::io::load_table(path("mbm.json")); }

inline hkcone::LatticeClass named(const std::string& name) {
  for (const auto& [n, c] : hkcone::io::load_named_classes(path("named_classes.json")))
    if (n == name) return c;
  throw std::runtime_error("no named class " + name);
}

inline hkcone::RationalVector chamber(int i) { return hkcone::io::load_point(path("chamber" + std::to_string(i) + ".json")); }

}  // namespace fixtures
