#pragma once

#include <string>

#include "dqw/formal.hpp"

namespace dqw::cli {

/// Parses sums and products of rationals, `i`, `E[k1,..,km]` (torus),
/// `x1..xn` (plane), `L`, parentheses and nonnegative integer powers.
/// Terms beyond `order` in L are dropped.
FormalSeries parse_series(const std::string& src, const Model& model, int order);
/// As parse_series, rejecting `L`.
Element parse_element(const std::string& src, const Model& model);
/// Differential operators: coefficients times `d1..dm` factors, which must
/// stand to the right of every non-constant coefficient.
DiffOperator parse_operator(const std::string& src, const Model& model);
/// A scalar in Q(i), e.g. `-3/4`, `i/2`, `(1/2+1/3*i)`.
Gaussian parse_scalar(const std::string& src);
/// `[[0,1],[-1,0]]`, entries rational literals.
RatMatrix parse_matrix(const std::string& src);
/// `torus2`, `plane4`.
Model parse_model(const std::string& src);

}  // namespace dqw::cli
