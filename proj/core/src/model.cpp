#include <acbm/model.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace acbm {

using Json = nlohmann::ordered_json;

template <class S>
ACBStructure<S> build_structure(const ModelSpec& spec, Tolerance tol) {
  LieAlgebraModel<S> lie(convert_from_rational<S>(spec.brackets), tol);
  return ACBStructure<S>::assemble(std::move(lie), convert_from_rational<S>(spec.phi),
                                   convert_from_rational<S>(spec.xi), convert_from_rational<S>(spec.eta),
                                   convert_from_rational<S>(spec.g), tol);
}

template ACBStructure<double> build_structure(const ModelSpec&, Tolerance);
template ACBStructure<Rational> build_structure(const ModelSpec&, Tolerance);

namespace {

Json vector_json(const Tensor<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v.entries()) out.push_back(format_rational(x));
  return out;
}

Json matrix_json(const Tensor<Rational>& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(format_rational(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

[[noreturn]] void fail(const std::string& what) { throw ParseError("model file: " + what); }

const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

Rational scalar(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(where + ": scalars must be rational strings or integers");
}

std::size_t index(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_number_unsigned() && !j.is_number_integer()) fail(where + ": index must be an integer");
  const long long v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= dim) fail(where + ": index out of range");
  return static_cast<std::size_t>(v);
}

Tensor<Rational> read_vector(const Json& j, std::size_t dim, int contra, const std::string& where) {
  if (!j.is_array() || j.size() != dim) fail(where + ": expected an array of " + std::to_string(dim) + " scalars");
  Tensor<Rational> out(dim, contra, 1 - contra);
  for (std::size_t i = 0; i < dim; ++i) out(i) = scalar(j[i], where);
  return out;
}

Tensor<Rational> read_matrix(const Json& j, std::size_t dim, int contra, const std::string& where) {
  if (!j.is_array() || j.size() != dim) fail(where + ": expected " + std::to_string(dim) + " rows");
  Tensor<Rational> out(dim, contra, 2 - contra);
  for (std::size_t r = 0; r < dim; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != dim) fail(where + ": row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = scalar(row[c], where);
  }
  return out;
}

std::vector<std::string> read_names(const Json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  if (!it->is_array()) fail(std::string(key) + ": expected an array of class names");
  for (const auto& v : *it) {
    if (!v.is_string()) fail(std::string(key) + ": expected an array of class names");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string to_json(const ModelSpec& spec) {
  const std::size_t d = spec.dim();
  Json j;
  j["name"] = spec.name;
  j["description"] = spec.description;
  j["dim"] = d;
  Json brackets = Json::array();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = i + 1; k < d; ++k) {
      Tensor<Rational> v = Tensor<Rational>::vector(d);
      bool nonzero = false;
      for (std::size_t l = 0; l < d; ++l) {
        v(l) = spec.brackets(l, i, k);
        nonzero = nonzero || v(l) != 0;
      }
      if (!nonzero) continue;
      Json b;
      b["i"] = i;
      b["j"] = k;
      b["value"] = vector_json(v);
      brackets.push_back(std::move(b));
    }
  j["brackets"] = std::move(brackets);
  j["phi"] = matrix_json(spec.phi);
  j["xi"] = vector_json(spec.xi);
  j["eta"] = vector_json(spec.eta);
  j["g"] = matrix_json(spec.g);
  if (!spec.expected.empty()) j["expected"] = spec.expected;
  if (!spec.excluded.empty()) j["excluded"] = spec.excluded;
  if (!spec.planes.empty()) {
    Json planes = Json::array();
    for (const auto& p : spec.planes) {
      Json pj;
      pj["label"] = p.label;
      pj["x"] = vector_json(p.x);
      pj["y"] = vector_json(p.y);
      planes.push_back(std::move(pj));
    }
    j["planes"] = std::move(planes);
  }
  if (spec.gamma_perturbation) {
    Json entries = Json::array();
    const auto& t = *spec.gamma_perturbation;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      if (t.entries()[flat] == 0) continue;
      auto idx = t.unflatten(flat);
      Json e;
      e["k"] = idx[0];
      e["i"] = idx[1];
      e["j"] = idx[2];
      e["value"] = format_rational(t.entries()[flat]);
      entries.push_back(std::move(e));
    }
    j["gamma_perturbation"] = std::move(entries);
  }
  return j.dump(2) + "\n";
}

ModelSpec from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
  if (!j.is_object()) fail("top level must be an object");

  ModelSpec spec;
  if (auto it = j.find("name"); it != j.end() && it->is_string()) spec.name = it->get<std::string>();
  if (auto it = j.find("description"); it != j.end() && it->is_string()) spec.description = it->get<std::string>();

  const Json& dim_j = field(j, "dim");
  if (!dim_j.is_number_unsigned() || dim_j.get<std::size_t>() == 0) fail("dim must be a positive integer");
  const std::size_t d = dim_j.get<std::size_t>();

  spec.brackets = Tensor<Rational>(d, 1, 2);
  const Json& br = field(j, "brackets");
  if (!br.is_array()) fail("brackets must be an array");
  for (const auto& b : br) {
    if (!b.is_object()) fail("bracket entries must be objects");
    const std::size_t i = index(field(b, "i"), d, "bracket i");
    const std::size_t k = index(field(b, "j"), d, "bracket j");
    if (i == k) fail("bracket [e_i, e_i] must not be listed");
    Tensor<Rational> v = read_vector(field(b, "value"), d, 1, "bracket value");
    for (std::size_t l = 0; l < d; ++l) {
      spec.brackets(l, i, k) += v(l);
      spec.brackets(l, k, i) -= v(l);
    }
  }
  spec.phi = read_matrix(field(j, "phi"), d, 1, "phi");
  spec.xi = read_vector(field(j, "xi"), d, 1, "xi");
  spec.eta = read_vector(field(j, "eta"), d, 0, "eta");
  spec.g = read_matrix(field(j, "g"), d, 0, "g");
  spec.expected = read_names(j, "expected");
  spec.excluded = read_names(j, "excluded");

  if (auto it = j.find("planes"); it != j.end()) {
    if (!it->is_array()) fail("planes must be an array");
    for (const auto& p : *it) {
      PlaneSpec plane;
      if (auto l = p.find("label"); l != p.end() && l->is_string()) plane.label = l->get<std::string>();
      plane.x = read_vector(field(p, "x"), d, 1, "plane x");
      plane.y = read_vector(field(p, "y"), d, 1, "plane y");
      spec.planes.push_back(std::move(plane));
    }
  }
  if (auto it = j.find("gamma_perturbation"); it != j.end()) {
    if (!it->is_array()) fail("gamma_perturbation must be an array");
    Tensor<Rational> t(d, 1, 2);
    for (const auto& e : *it) {
      const std::size_t k = index(field(e, "k"), d, "gamma_perturbation k");
      const std::size_t i = index(field(e, "i"), d, "gamma_perturbation i");
      const std::size_t l = index(field(e, "j"), d, "gamma_perturbation j");
      t(k, i, l) += scalar(field(e, "value"), "gamma_perturbation value");
    }
    spec.gamma_perturbation = std::move(t);
  }
  return spec;
}

ModelSpec load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void save_model_file(const ModelSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(spec);
}

}  // namespace acbm
