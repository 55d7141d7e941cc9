#pragma once

#include <string>

#include "k0s/silting.hpp"

namespace k0s::silting::detail {

/// Y = Sigma^{-1} cone(w) for w : Z -> Sigma X, compared against gx + gz.
HorseshoeCase horseshoe_case(std::string name, const ChainMap& w, const K0SpElement& gx, const K0SpElement& gz,
                             const SiltingCollection& m);

}  // namespace k0s::silting::detail
