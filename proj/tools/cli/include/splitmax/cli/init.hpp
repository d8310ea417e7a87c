#pragma once

#include "splitmax/cli/config.hpp"
#include "splitmax/dynamics.hpp"
#include "splitmax/metric_ops.hpp"

namespace splitmax::cli {

/// Builds the initial state. Every variant is solenoidal: d~ comes from a field with
/// no variation along its polarization (or from d~ of a potential) and b from d of a
/// vector potential cochain.
SimState make_initial_state(const RunConfig& cfg, const Discretization& disc);

}  // namespace splitmax::cli
