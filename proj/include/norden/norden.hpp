#pragma once

// Umbrella header: exact symbolic tensor calculus for almost Norden
// manifolds presented by left-invariant frames on Lie groups.

#include "norden/cli.hpp"
#include "norden/errors.hpp"
#include "norden/frame.hpp"
#include "norden/geometry.hpp"
#include "norden/objects.hpp"
#include "norden/polynomial.hpp"
#include "norden/rational.hpp"
#include "norden/specfile.hpp"
#include "norden/tables.hpp"
#include "norden/tensor.hpp"
#include "norden/twin.hpp"
