#pragma once

// Umbrella header.

#include "ambsec/model.hpp"
#include "ambsec/solver.hpp"
#include "ambsec/baselines.hpp"
#include "ambsec/montecarlo.hpp"
#include "ambsec/csv.hpp"
#include "ambsec/config.hpp"
