#pragma once

// Umbrella header.

#include "fiq/behavior.hpp"
#include "fiq/dynamics.hpp"
#include "fiq/errors.hpp"
#include "fiq/feasibility.hpp"
#include "fiq/fiq.hpp"
#include "fiq/measurement.hpp"
#include "fiq/prng.hpp"
#include "fiq/propensity.hpp"
#include "fiq/propensity_calculus.hpp"
#include "fiq/quantum.hpp"
#include "fiq/rational.hpp"
#include "fiq/version.hpp"
