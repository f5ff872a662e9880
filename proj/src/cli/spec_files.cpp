#include "dqw/cli/spec_files.hpp"

#include <fstream>

#include "dqw/cli/expression.hpp"

namespace dqw::cli {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Gaussian scalar_of(const nlohmann::json& x) {
  if (x.is_number_integer()) return Gaussian(static_cast<long>(x.get<long long>()));
  if (x.is_string()) {
    try {
      return parse_scalar(x.get<std::string>());
    } catch (const ParseError& e) {
      throw SchemaError(std::string("bad scalar: ") + e.what());
    }
  }
  throw SchemaError("scalars must be integers or strings, got " + x.dump());
}

Rational rational_of(const nlohmann::json& x) {
  const Gaussian g = scalar_of(x);
  if (!g.is_real()) throw SchemaError("expected a rational, got " + x.dump());
  return g.re();
}

RatMatrix matrix_of(const nlohmann::json& j) {
  try {
    return parse_matrix(j.dump());
  } catch (const ParseError& e) {
    throw SchemaError(std::string("bad matrix: ") + e.what());
  }
}

MultiIndex index_of(const nlohmann::json& j, const Model& model) {
  if (!j.is_array() || static_cast<int>(j.size()) != model.dim)
    throw SchemaError("multi-index " + j.dump() + " must have " + std::to_string(model.dim) +
                      " entries");
  MultiIndex out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > 64)
      throw SchemaError("multi-index entries must be small nonnegative integers");
    out.push_back(static_cast<int>(x.get<long long>()));
  }
  return out;
}

std::vector<BidiffCochain> cochains_of(const nlohmann::json& j, const Model& model) {
  if (!j.is_array()) throw SchemaError("cochain list must be an array");
  std::vector<BidiffCochain> out;
  for (const auto& c : j) {
    if (!c.is_array()) throw SchemaError("each cochain must be an array of terms");
    BidiffCochain cochain(model);
    for (const auto& t : c) {
      const Gaussian k = scalar_of(field(t, "coeff"));
      Element coeff = Element::constant(model, k);
      if (t.contains("function")) {
        try {
          coeff = parse_element(t.at("function").get<std::string>(), model) * k;
        } catch (const ParseError& e) {
          throw SchemaError(std::string("bad coefficient function: ") + e.what());
        }
      }
      cochain.add_term(index_of(field(t, "left"), model), index_of(field(t, "right"), model),
                       coeff);
    }
    out.push_back(std::move(cochain));
  }
  return out;
}

Model model_of(const nlohmann::json& j) {
  const auto& m = field(j, "model");
  if (!m.is_string()) throw SchemaError("model must be a string");
  try {
    return parse_model(m.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

StarProduct product_from_json(const nlohmann::json& j, int order, int fallback) {
  const Model model = model_of(j);
  PoissonStructure pi;
  try {
    pi = PoissonStructure(matrix_of(field(j, "poisson")));
  } catch (const DimensionMismatch& e) {
    throw SchemaError(e.what());
  }
  if (pi.dim() != model.dim) throw SchemaError("poisson size does not match the model");
  int n = fallback;
  if (j.contains("order")) {
    if (!j.at("order").is_number_integer()) throw SchemaError("order must be an integer");
    n = j.at("order").get<int>();
  }
  if (order >= 0) n = order;
  if (n < 0) throw SchemaError("order must be nonnegative");
  if (j.contains("builtin")) {
    if (j.at("builtin") != "moyal") throw SchemaError("unknown builtin " + j.at("builtin").dump());
    if (j.contains("poisson_series")) {
      std::vector<RatMatrix> pis{pi.matrix()};
      for (const auto& m : j.at("poisson_series")) pis.push_back(matrix_of(m));
      return moyal_formal(model, pis, n);
    }
    return moyal(model, pi, n);
  }
  std::vector<BidiffCochain> cochains = cochains_of(field(j, "cochains"), model);
  if (static_cast<int>(cochains.size()) < n) {
    if (order >= 0 || j.contains("order"))
      throw SchemaError("file gives " + std::to_string(cochains.size()) + " cochains, order " +
                        std::to_string(n) + " requested");
    n = static_cast<int>(cochains.size());
  }
  cochains.resize(n);
  StarProduct s(model, pi, std::move(cochains));
  if (!s.is_unital()) throw UnitalityError("cochains must kill constants in both slots");
  if (j.contains("poisson_series")) {
    std::vector<RatMatrix> pis{pi.matrix()};
    for (const auto& m : j.at("poisson_series")) pis.push_back(matrix_of(m));
    s.set_bivector_series(std::move(pis));
  }
  return s;
}

StarProduct load_product_spec(const std::string& path, int order, int fallback) {
  return product_from_json(read_json(path), order, fallback);
}

BimoduleDeformation load_bimodule_spec(const std::string& path, int order, int fallback) {
  const nlohmann::json j = read_json(path);
  const StarProduct right = product_from_json(j, order, fallback);
  const StarProduct left = j.contains("left_product") ? product_from_json(j.at("left_product"), right.order())
                                                      : right;
  BimoduleDeformation b{left, right, cochains_of(field(j, "left"), right.model()),
                        cochains_of(field(j, "right"), right.model())};
  const std::size_t n = static_cast<std::size_t>(right.order());
  if (b.left.size() < n || b.right.size() < n)
    throw SchemaError("bimodule actions need " + std::to_string(n) + " cochains each");
  b.left.resize(n);
  b.right.resize(n);
  return b;
}

ClassFile class_from_json(const nlohmann::json& j) {
  const auto& rank_j = field(j, "rank");
  if (!rank_j.is_number_integer() || rank_j.get<int>() < 0) throw SchemaError("rank must be >= 0");
  const int rank = rank_j.get<int>();
  ClassFile out;
  for (const auto& x : field(j, "omega")) out.series.omega.push_back(rational_of(x));
  for (const auto& t : field(j, "terms")) {
    std::vector<Gaussian> v;
    for (const auto& x : t) v.push_back(scalar_of(x));
    if (static_cast<int>(v.size()) != rank) throw SchemaError("term of the wrong rank");
    out.series.terms.push_back(std::move(v));
  }
  if (static_cast<int>(out.series.omega.size()) != rank) throw SchemaError("omega of the wrong rank");
  if (out.series.terms.empty()) throw SchemaError("terms must contain omega_0");
  std::vector<long long> torsion;
  if (j.contains("torsion"))
    for (const auto& x : j.at("torsion")) {
      if (!x.is_number_integer()) throw SchemaError("torsion factors must be integers");
      torsion.push_back(x.get<long long>());
    }
  out.torsion = TorsionGroup(torsion);
  if (j.contains("sign")) {
    const std::string s = j.at("sign").is_string() ? j.at("sign").get<std::string>() : j.at("sign").dump();
    if (s == "+1" || s == "1")
      out.series.sign = 1;
    else if (s == "-1")
      out.series.sign = -1;
    else
      throw SchemaError("sign must be +1 or -1");
  }
  if (j.contains("reduced")) out.series.reduced = j.at("reduced").get<bool>();
  return out;
}

ClassFile load_class_spec(const std::string& path) { return class_from_json(read_json(path)); }

LatticeGroup group_from_json(const nlohmann::json& j) {
  const auto& rank_j = field(j, "rank");
  if (!rank_j.is_number_integer() || rank_j.get<int>() < 0) throw SchemaError("rank must be >= 0");
  const int rank = rank_j.get<int>();
  std::vector<IntMatrix> gens;
  for (const auto& g : field(j, "generators")) {
    if (!g.is_array() || static_cast<int>(g.size()) != rank)
      throw SchemaError("generator " + g.dump() + " must have " + std::to_string(rank) + " rows");
    IntMatrix m(rank, rank);
    for (int r = 0; r < rank; ++r) {
      if (!g[r].is_array() || static_cast<int>(g[r].size()) != rank)
        throw SchemaError("generator rows must have " + std::to_string(rank) + " entries");
      for (int c = 0; c < rank; ++c) {
        if (!g[r][c].is_number_integer()) throw SchemaError("generator entries must be integers");
        m(r, c) = g[r][c].get<long long>();
      }
    }
    gens.push_back(std::move(m));
  }
  std::size_t cap = kClosureCap;
  if (j.contains("cap")) cap = j.at("cap").get<std::size_t>();
  return LatticeGroup(rank, std::move(gens), cap);
}

LatticeGroup load_group_spec(const std::string& path) { return group_from_json(read_json(path)); }

}  // namespace dqw::cli
