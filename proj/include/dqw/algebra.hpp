#pragma once

#include "dqw/identity.hpp"
#include "dqw/operators.hpp"

namespace dqw {

/// X{a,b} = {Xa,b} + {a,Xb} on generic monomials. X must be a first-order
/// field without constant term (NotADerivation otherwise).
CheckReport is_poisson_vector_field(const DiffOperator& x, const PoissonStructure& pi);

/// Vector field f -> {f,h}.
DiffOperator hamiltonian_field(const Element& h, const PoissonStructure& pi);

}  // namespace dqw
