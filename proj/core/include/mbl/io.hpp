#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mbl/blocks.hpp"
#include "mbl/character_table.hpp"
#include "mbl/cyclicblocks.hpp"
#include "mbl/cyclotomic.hpp"
#include "mbl/isometry.hpp"
#include "mbl/perm_group.hpp"
#include "mbl/symalg.hpp"

namespace mbl {

using Json = nlohmann::ordered_json;

Json to_json(const CycloNum& x);             // {"n": n, "coeffs": ["a/b", ...]}
CycloNum cyclo_from_json(const Json& j);
Json to_json(const GaloisSubgroup& s);       // {"n": n, "units": [...]}
Json to_json(const CharacterTable& t);

struct GroupFile {
  std::string name;
  PermGroup group;
};

// {"name": str, "degree": n, "generators": [[images...], ...]} with images
// 1-based. Throws ParseError with the source name and position.
GroupFile group_from_json_text(const std::string& text, const std::string& source = "<input>");
GroupFile load_group(const std::string& path);
Json group_to_json(const std::string& name, const PermGroup& g);

std::string read_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& source);

// Character values only; the class order is the group's own, and the class
// representatives are checked on reading.
CharacterTable table_from_json(const PermGroup& g, const Json& j);

Json to_json(const Block& b);
Json to_json(const SignedBijection& iso);  // {"pairs": [[chi, psi, sign], ...]}
SignedBijection isometry_from_json(const Json& j, const std::string& source = "<input>");
Json to_json(const IsometryVerdict& v);
Json to_json(const EquivarianceVerdict& v);
Json to_json(const NavarroReport& r);

Json to_json(const BrauerTree& t);
Json to_json(const TreeAutomorphism& a);
Json to_json(const RouquierPartition& r);
Json to_json(const ShadowResult& s);
PlanarEmbedding embedding_from_json(const Json& j, const std::string& source = "<input>");

// {"field": {"type": "Q"|"Qzeta", "n": n}, "dim": d, "structure": [[[x]]],
// "form": [x], "unit": [x]} where x is a rational string or number, or a
// cyclotomic object. "unit" defaults to the first basis vector.
FDAlgebra algebra_from_json(const Json& j, const std::string& source = "<input>");
Json to_json(const FDAlgebra& a);
// {"dim": d, "left": [matrix per basis element of A], "right": [... of B]},
// matrices as row lists.
FDBimodule bimodule_from_json(const Json& j, const AlgebraPtr& a, const AlgebraPtr& b,
                              const std::string& source = "<input>");
Json to_json(const Mat& m);
Json to_json(const Vec& v);

}  // namespace mbl
