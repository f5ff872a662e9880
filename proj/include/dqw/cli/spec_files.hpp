#pragma once

#include <string>

#include <json.hpp>

#include "dqw/bimodule.hpp"
#include "dqw/classify.hpp"

namespace dqw::cli {

/// Product file:
///   {"model": "torus2", "poisson": [[0,1],[-1,0]], "builtin": "moyal",
///    "poisson_series": [[[..]], ..], "order": 6}
/// or explicit cochains instead of "builtin":
///   "cochains": [[{"left": [1,0], "right": [0,1], "coeff": "i/2"}], ..]
/// `order` >= 0 overrides the file; `fallback` applies when the file has no
/// "order". Throws SchemaError and UnitalityError.
StarProduct product_from_json(const nlohmann::json& j, int order, int fallback = kDefaultOrder);
StarProduct load_product_spec(const std::string& path, int order = -1, int fallback = kDefaultOrder);

/// A product file with "left" and "right" cochain arrays and an optional
/// "left_product" object.
BimoduleDeformation load_bimodule_spec(const std::string& path, int order = -1,
                                       int fallback = kDefaultOrder);

/// {"rank": 2, "omega": [..], "terms": [[..], ..], "torsion": [2,4], "sign": "+1"}
struct ClassFile {
  ClassSeries series;
  TorsionGroup torsion;
};
ClassFile load_class_spec(const std::string& path);
ClassFile class_from_json(const nlohmann::json& j);

/// {"rank": 1, "generators": [[[-1]]], "cap": 10000}
LatticeGroup load_group_spec(const std::string& path);
LatticeGroup group_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::string& path);

}  // namespace dqw::cli
