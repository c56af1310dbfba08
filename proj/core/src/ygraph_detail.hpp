// Helpers shared by the Y-graph translation units.
#pragma once

#include "autgog/ygraph.hpp"

namespace autgog::detail {

// Removes vertices unreachable from the start and renumbers.
YGraph prune(YGraph x);

}  // namespace autgog::detail
