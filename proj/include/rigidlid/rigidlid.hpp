#pragma once

#include "params.hpp"
#include "grid.hpp"
#include "spectral.hpp"
#include "linalg.hpp"
#include "state.hpp"
#include "systems.hpp"
#include "integrator.hpp"
#include "approx.hpp"
#include "diagnostics.hpp"
#include "config.hpp"
#include "validation.hpp"
#include "harness.hpp"
