#pragma once

// Umbrella header for the drive-cycle smoothing fuel-economy simulator.

#include "ecosim/config.hpp"
#include "ecosim/config_doc.hpp"
#include "ecosim/cycle.hpp"
#include "ecosim/driver.hpp"
#include "ecosim/error.hpp"
#include "ecosim/lut.hpp"
#include "ecosim/powertrain.hpp"
#include "ecosim/sim.hpp"
#include "ecosim/tradeoff.hpp"
#include "ecosim/vehicle.hpp"
