#include "cuspbend/json_io.hpp"

namespace cuspbend {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> names_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("json: expected an array of generator names");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw DomainError("json: generator names must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<Word> words_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("json: expected an array of words");
  std::vector<Word> out;
  for (const auto& w : j) out.push_back(word_from_json(w));
  return out;
}

Json words_to_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(to_json(w));
  return out;
}

}  // namespace

Json to_json(const Scalar& x) {
  if (x.is_exact()) {
    const Rational& q = x.rational();
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return x.to_string();
  }
  return x.to_double();
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  if (j.is_number()) return Scalar(j.get<double>());
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw DomainError("json: cannot parse number '" + j.get<std::string>() + "'");
    }
  }
  throw DomainError("json: expected a number or a \"p/q\" string");
}

Json to_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<Scalar> scalars_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("json: expected an array of numbers");
  std::vector<Scalar> out;
  for (const auto& e : j) out.push_back(scalar_from_json(e));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("json: a matrix is a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) throw DomainError("json: matrix rows must be nonempty arrays");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw DimensionError("json: ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row.at(c));
  }
  return m;
}

Json to_json(const ProjMap& g) { return to_json(g.matrix()); }

ProjMap projmap_from_json(const Json& j) { return ProjMap(matrix_from_json(j)); }

Json to_json(const CuspParameter& psi) { return {{"n", psi.dimension()}, {"psi", to_json(psi.values())}}; }

CuspParameter cusp_parameter_from_json(const Json& j) {
  std::vector<Scalar> psi = scalars_from_json(field(j, "psi"));
  if (j.contains("n") && j.at("n").get<std::size_t>() != psi.size())
    throw DimensionError("json: psi length does not match n");
  return CuspParameter(std::move(psi));
}

Json to_json(const CuspGroupElement& g) {
  return {{"psi", to_json(g.psi)}, {"d", to_json(g.d)}, {"v", to_json(g.v)}, {"sigma", to_json(g.sigma)}};
}

CuspGroupElement cusp_group_element_from_json(const Json& j) {
  return h_element(cusp_parameter_from_json(field(j, "psi")), scalars_from_json(field(j, "d")),
                   scalars_from_json(field(j, "v")));
}

Json to_json(const Word& w) {
  Json out = Json::array();
  for (const auto& l : w) out.push_back(format_letter(l));
  return out;
}

Word word_from_json(const Json& j) { return parse_word(names_from_json(j)); }

Json to_json(const MarkedRep& rep) {
  Json gens = Json::object();
  for (const auto& [name, g] : rep.generators()) gens[name] = to_json(g);
  return {{"n", rep.dimension()}, {"generators", gens}, {"relators", words_to_json(rep.relators())}};
}

MarkedRep marked_rep_from_json(const Json& j, double tol) {
  const auto n = field(j, "n").get<std::size_t>();
  const Json& gj = field(j, "generators");
  if (!gj.is_object()) throw DomainError("json: 'generators' must be an object");
  std::map<std::string, ProjMap> gens;
  for (const auto& [name, m] : gj.items()) gens.emplace(name, projmap_from_json(m));
  std::vector<Word> relators;
  if (j.contains("relators")) relators = words_from_json(j.at("relators"));
  return MarkedRep(n, std::move(gens), std::move(relators), tol);
}

Json to_json(const BendingMove& move) {
  const Decomposition& d = move.decomposition;
  Json out;
  if (d.kind == DecompositionKind::amalgam) {
    out = {{"kind", "amalgam"}, {"side1", d.side1}, {"side2", d.side2}};
  } else {
    out = {{"kind", "hnn"}, {"base", d.base}, {"stable", d.stable}};
  }
  out["edge_words"] = words_to_json(d.edge_words);
  out["centralizer"] = to_json(move.centralizer);
  return out;
}

BendingMove bending_move_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  std::vector<Word> edges;
  if (j.contains("edge_words")) edges = words_from_json(j.at("edge_words"));
  ProjMap c = projmap_from_json(field(j, "centralizer"));
  if (kind == "amalgam")
    return {Decomposition::amalgam(names_from_json(field(j, "side1")), names_from_json(field(j, "side2")), edges),
            std::move(c)};
  if (kind == "hnn")
    return {Decomposition::hnn(names_from_json(field(j, "base")), field(j, "stable").get<std::string>(), edges),
            std::move(c)};
  throw DomainError("json: move kind must be \"amalgam\" or \"hnn\"");
}

Json to_json(const ClassifiedCusp& c) {
  return {{"psi", to_json(c.psi.values())},
          {"type", c.type},
          {"residual", to_json(c.residual)},
          {"conjugator", to_json(c.conjugator)}};
}

RectangularCuspData cusp_data_from_json(const Json& j) {
  std::vector<Scalar> b = scalars_from_json(field(j, "b"));
  if (j.contains("n") && field(j, "n").get<std::size_t>() != b.size() + 1)
    throw DimensionError("json: b must have n-1 entries");
  if (j.contains("mu")) {
    RectangularCuspData d = RectangularCuspData::from_mu(std::move(b), scalars_from_json(j.at("mu")));
    if (j.contains("s")) {
      d.s = scalars_from_json(j.at("s"));
      d.validate();
    }
    return d;
  }
  return RectangularCuspData::from_s(std::move(b), scalars_from_json(field(j, "s")));
}

}  // namespace cuspbend
