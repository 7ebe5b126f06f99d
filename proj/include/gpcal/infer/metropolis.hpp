#pragma once

#include "gpcal/rng.hpp"

namespace gpcal {

// Accept iff u < exp(logp_proposed - logp_current) with u ~ U(0,1). The
// uniform is always drawn, so the rng stream advances identically whether or
// not the comparison is degenerate. A NaN proposal never accepts; a -inf
// current state accepts any finite proposal; equal densities accept.
bool metropolis_accept(double logp_current, double logp_proposed, Rng& rng);

}  // namespace gpcal
