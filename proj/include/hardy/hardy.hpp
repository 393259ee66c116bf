#pragma once

/// Umbrella header.

#include "hardy/battery.hpp"
#include "hardy/bregman.hpp"
#include "hardy/convex.hpp"
#include "hardy/double_singular.hpp"
#include "hardy/estimate.hpp"
#include "hardy/halfspace.hpp"
#include "hardy/pv.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/rng.hpp"
#include "hardy/specfun.hpp"
#include "hardy/sphere.hpp"
#include "hardy/test_function.hpp"
