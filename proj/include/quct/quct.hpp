#pragma once

/// Umbrella header for the quadratic unitary Cayley graph toolkit.

#include "quct/errors.hpp"
#include "quct/graph.hpp"
#include "quct/invariants.hpp"
#include "quct/numtheory.hpp"
#include "quct/oracle.hpp"
#include "quct/quadext.hpp"
#include "quct/ring.hpp"
#include "quct/spectrum.hpp"
#include "quct/verify.hpp"
