#include "mbl/io.hpp"

#include <fstream>
#include <sstream>

#include "mbl/errors.hpp"

namespace mbl {

Json to_json(const CycloNum& x) {
  Json coeffs = Json::array();
  for (const auto& q : x.coeffs()) coeffs.push_back(q.get_str());
  return Json{{"n", x.conductor()}, {"coeffs", coeffs}};
}

CycloNum cyclo_from_json(const Json& j) {
  try {
    const Int n = j.at("n").get<Int>();
    std::vector<Rational> c;
    for (const auto& s : j.at("coeffs")) {
      Rational q(s.get<std::string>());
      q.canonicalize();
      c.push_back(q);
    }
    if (static_cast<Int>(c.size()) != euler_phi(n)) throw ParseError("coefficient count differs from phi(n)");
    return CycloNum::from_power_coeffs(n, std::move(c));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad cyclotomic number: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad rational: ") + e.what());
  }
}

Json to_json(const GaloisSubgroup& s) { return Json{{"n", s.modulus}, {"units", s.units}}; }

Json to_json(const CharacterTable& t) {
  const auto& g = t.group();
  Json classes = Json::array();
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    const auto& cl = g.classes()[c];
    classes.push_back({{"representative", perm::to_cycles(g.class_representative(c))},
                       {"size", cl.size},
                       {"order", cl.element_order},
                       {"centralizer_order", t.centralizer_order(c)},
                       {"powers", cl.powers}});
  }
  Json rows = Json::array();
  for (std::size_t chi = 0; chi < t.num_characters(); ++chi) {
    Json row = Json::array();
    for (const auto& x : t.row(chi)) row.push_back(to_json(x));
    rows.push_back(row);
  }
  return Json{{"order", t.group_order()}, {"exponent", t.exponent()}, {"classes", classes}, {"characters", rows}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

GroupFile group_from_json_text(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    const std::string name = j.value("name", std::string("G"));
    const int degree = j.at("degree").get<int>();
    if (degree < 1) throw ParseError(source + ": degree must be positive");
    std::vector<Perm> gens;
    std::size_t idx = 0;
    for (const auto& gj : j.at("generators")) {
      Perm p;
      for (const auto& x : gj) {
        const int v = x.get<int>();
        if (v < 1 || v > degree) throw ParseError(source + ": generator " + std::to_string(idx) + ": image out of range");
        p.push_back(v - 1);
      }
      if (static_cast<int>(p.size()) != degree)
        throw ParseError(source + ": generator " + std::to_string(idx) + ": expected " + std::to_string(degree) + " images");
      gens.push_back(std::move(p));
      ++idx;
    }
    try {
      return GroupFile{name, PermGroup(degree, std::move(gens))};
    } catch (const BoundExceeded&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source + ": " + e.what());
    }
  } catch (const Json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

GroupFile load_group(const std::string& path) { return group_from_json_text(read_file(path), path); }

Json group_to_json(const std::string& name, const PermGroup& g) {
  Json gens = Json::array();
  for (const auto& p : g.generators()) {
    Json row = Json::array();
    for (int x : p) row.push_back(x + 1);
    gens.push_back(row);
  }
  return Json{{"name", name}, {"degree", g.degree()}, {"generators", gens}};
}

}  // namespace mbl

namespace mbl {

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

CharacterTable table_from_json(const PermGroup& g, const Json& j) {
  try {
    const auto& classes = j.at("classes");
    if (classes.size() != g.num_classes()) throw ParseError("cached table: class count mismatch");
    for (std::size_t c = 0; c < g.num_classes(); ++c)
      if (classes[c].at("representative").get<std::string>() != perm::to_cycles(g.class_representative(c)))
        throw ParseError("cached table: class order mismatch");
    std::vector<std::vector<CycloNum>> values;
    for (const auto& row : j.at("characters")) {
      std::vector<CycloNum> r;
      for (const auto& x : row) r.push_back(cyclo_from_json(x));
      values.push_back(std::move(r));
    }
    return CharacterTable(g, std::move(values));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("cached table: ") + e.what());
  }
}

Json to_json(const Block& b) {
  return Json{{"p", b.p},
              {"characters", b.characters},
              {"defect", b.defect},
              {"heights", b.heights},
              {"defect_group_order", b.defect_group.order()},
              {"minimal_field_degree", b.minimal_field_degree}};
}

Json to_json(const SignedBijection& iso) {
  Json pairs = Json::array();
  for (const auto& pr : iso.pairs) pairs.push_back(Json::array({pr.chi, pr.psi, pr.sign}));
  return Json{{"pairs", pairs}};
}

SignedBijection isometry_from_json(const Json& j, const std::string& source) {
  try {
    std::vector<Pairing> ps;
    std::vector<std::size_t> src, tgt;
    std::size_t idx = 0;
    for (const auto& pj : j.at("pairs")) {
      if (!pj.is_array() || pj.size() != 3)
        throw ParseError(source + ": pair " + std::to_string(idx) + ": expected [chi, psi, sign]");
      const int sign = pj[2].get<int>();
      if (sign != 1 && sign != -1) throw ParseError(source + ": pair " + std::to_string(idx) + ": sign must be 1 or -1");
      ps.push_back({pj[0].get<std::size_t>(), pj[1].get<std::size_t>(), sign});
      src.push_back(ps.back().chi);
      tgt.push_back(ps.back().psi);
      ++idx;
    }
    return SignedBijection(src, tgt, ps);
  } catch (const Json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json to_json(const IsometryVerdict& v) {
  Json viol = Json::array();
  for (const auto& x : v.violations)
    viol.push_back({{"g_class", x.g_class}, {"h_class", x.h_class}, {"condition", x.condition}});
  return Json{{"pass", v.pass()},
              {"bijection", v.bijection},
              {"separation", v.separation},
              {"integrality", v.integrality},
              {"violations", viol}};
}

Json to_json(const EquivarianceVerdict& v) {
  Json j{{"pass", v.pass}, {"signs_equivariant", v.signs_equivariant}, {"block_stable", v.block_stable}};
  if (v.witness_unit) {
    j["witness_unit"] = *v.witness_unit;
    j["witness_chi"] = *v.witness_chi;
  }
  return j;
}

Json to_json(const NavarroReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back({{"unit", row.unit}, {"fixed_g", row.fixed_g}, {"fixed_h", row.fixed_h}});
  return Json{{"modulus", r.modulus}, {"consistent", r.consistent}, {"rows", rows}};
}

Json to_json(const BrauerTree& t) {
  Json edges = Json::array();
  for (const auto& [u, w] : t.edges) edges.push_back(Json::array({u, w}));
  return Json{{"vertices", t.vertices},
              {"edges", edges},
              {"exceptional", t.exceptional},
              {"multiplicity", t.multiplicity},
              {"decomposition_matrix", decomposition_matrix(t)}};
}

Json to_json(const TreeAutomorphism& a) {
  return Json{{"vertex_perm", a.vertex_perm}, {"edge_perm", a.edge_perm}, {"fixed_vertices", a.fixed_vertices}};
}

Json to_json(const RouquierPartition& r) {
  Json j{{"convention", r.convention == RhoClass::kAwayFromV ? "away" : "contains"},
         {"distances", r.distances},
         {"far_endpoint", r.far_endpoint},
         {"i0_image", r.i0_image},
         {"i1_image", r.i1_image}};
  if (r.rho) {
    j["rho"] = *r.rho;
    j["sigma"] = *r.sigma;
    j["i0"] = r.i0;
    j["i1"] = r.i1;
    Json np = Json::array();
    for (const auto& [rho, delta] : r.n_prime) np.push_back(Json::array({rho, delta ? Json(*delta) : Json()}));
    j["n_prime"] = np;
  }
  return j;
}

Json to_json(const ShadowResult& s) {
  return Json{{"strategy", s.strategy},
              {"tree_g", to_json(s.tree_g)},
              {"tree_h", to_json(s.tree_h)},
              {"isometry", to_json(s.isometry)},
              {"verdict", to_json(s.verdict)},
              {"galois", to_json(s.galois)},
              {"equivariance", to_json(s.equivariance)}};
}

PlanarEmbedding embedding_from_json(const Json& j, const std::string& source) {
  try {
    PlanarEmbedding e;
    e.cyclic_order = j.at("cyclic_order").get<std::vector<std::vector<std::size_t>>>();
    if (j.contains("delta")) e.delta = j.at("delta").get<std::vector<std::size_t>>();
    return e;
  } catch (const Json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

namespace {

CycloNum scalar_from_json(const Json& x, Int n, const std::string& where) {
  if (x.is_object()) {
    CycloNum c = cyclo_from_json(x);
    if (n % c.conductor() != 0) throw ParseError(where + ": entry outside the declared field");
    return c.lifted(n);
  }
  try {
    if (x.is_number_integer()) return CycloNum(Rational(x.get<long>()), n);
    if (x.is_string()) {
      Rational q(x.get<std::string>());
      if (q.get_den() == 0) throw ParseError(where + ": zero denominator");
      q.canonicalize();
      return CycloNum(q, n);
    }
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(where + ": expected a rational string, an integer or a cyclotomic object");
}

Mat matrix_from_json(const Json& j, std::size_t d, Int n, const std::string& where) {
  if (!j.is_array() || j.size() != d) throw ParseError(where + ": expected " + std::to_string(d) + " rows");
  Mat m(d, d, CycloNum(0L, n));
  for (std::size_t r = 0; r < d; ++r) {
    if (!j[r].is_array() || j[r].size() != d) throw ParseError(where + ": row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < d; ++c) m(r, c) = scalar_from_json(j[r][c], n, where);
  }
  return m;
}

Json scalar_to_json(const CycloNum& x) {
  if (x.is_rational()) return x.rational_value().get_str();
  return to_json(x);
}

}  // namespace

FDAlgebra algebra_from_json(const Json& j, const std::string& source) {
  try {
    const auto& f = j.at("field");
    const std::string type = f.at("type").get<std::string>();
    Int n = 1;
    if (type == "Qzeta") n = f.at("n").get<Int>();
    else if (type != "Q") throw ParseError(source + ": field type must be Q or Qzeta");
    if (n < 1) throw ParseError(source + ": field conductor must be positive");
    const std::size_t d = j.at("dim").get<std::size_t>();
    if (d == 0) throw ParseError(source + ": dim must be positive");
    const auto& st = j.at("structure");
    if (st.size() != d) throw ParseError(source + ": structure must have dim entries");
    std::vector<std::vector<Vec>> c(d, std::vector<Vec>(d));
    for (std::size_t a = 0; a < d; ++a) {
      if (st[a].size() != d) throw ParseError(source + ": structure[" + std::to_string(a) + "] has the wrong length");
      for (std::size_t b = 0; b < d; ++b) {
        const std::string where = source + ": structure[" + std::to_string(a) + "][" + std::to_string(b) + "]";
        if (st[a][b].size() != d) throw ParseError(where + ": expected dim coordinates");
        for (const auto& x : st[a][b]) c[a][b].push_back(scalar_from_json(x, n, where));
      }
    }
    auto vec = [&](const char* key) {
      Vec v;
      const auto& arr = j.at(key);
      if (arr.size() != d) throw ParseError(source + ": " + key + " must have dim entries");
      for (const auto& x : arr) v.push_back(scalar_from_json(x, n, source + ": " + key));
      return v;
    };
    Vec unit;
    if (j.contains("unit")) {
      unit = vec("unit");
    } else {
      unit.assign(d, CycloNum(0L, n));
      unit[0] = CycloNum(1L, n);
    }
    FDAlgebra alg(n, std::move(c), std::move(unit), vec("form"));
    try {
      alg.validate();
    } catch (const DegenerateForm&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source + ": " + e.what());
    }
    return alg;
  } catch (const Json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Json to_json(const Mat& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Json to_json(const FDAlgebra& a) {
  Json st = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(to_json(a.product(i, j)));
    st.push_back(row);
  }
  Json field = a.conductor() == 1 ? Json{{"type", "Q"}} : Json{{"type", "Qzeta"}, {"n", a.conductor()}};
  return Json{{"field", field}, {"dim", a.dim()}, {"structure", st}, {"form", to_json(a.form())}, {"unit", to_json(a.unit())}};
}

FDBimodule bimodule_from_json(const Json& j, const AlgebraPtr& a, const AlgebraPtr& b, const std::string& source) {
  try {
    const std::size_t d = j.at("dim").get<std::size_t>();
    if (d == 0) throw ParseError(source + ": dim must be positive");
    const Int n = lcm(a->conductor(), b->conductor());
    auto mats = [&](const char* key, std::size_t count) {
      const auto& arr = j.at(key);
      if (arr.size() != count)
        throw ParseError(source + ": " + key + " needs one matrix per basis element (" + std::to_string(count) + ")");
      std::vector<Mat> out;
      for (std::size_t i = 0; i < count; ++i)
        out.push_back(matrix_from_json(arr[i], d, n, source + ": " + key + "[" + std::to_string(i) + "]"));
      return out;
    };
    FDBimodule m(a, b, mats("left", a->dim()), mats("right", b->dim()));
    try {
      m.validate();
    } catch (const Error& e) {
      throw ParseError(source + ": " + e.what());
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

}  // namespace mbl
