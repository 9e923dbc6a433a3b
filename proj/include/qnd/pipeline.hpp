#pragma once

#include "qnd/config.hpp"
#include "qnd/emission.hpp"
#include "qnd/envelope.hpp"
#include "qnd/lanczos.hpp"

namespace qnd {

/// Lowest states of one carrier in the configured structure.
EigenSolution solve_structure(const RunConfig& cfg, Carrier carrier);

/// Gaussian fit of a solved ground state over the configured slab.
EnvelopeFit fit_ground_state(const RunConfig& cfg, const EigenSolution& sol);

/// Trion and exciton lines from the solved dot levels and the well subbands.
EmissionResult emission_from(const RunConfig& cfg, double qd_electron_meV, double qd_hole_meV);

}  // namespace qnd
