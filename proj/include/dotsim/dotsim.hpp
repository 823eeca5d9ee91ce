#pragma once

#include "dotsim/analysis.hpp"
#include "dotsim/dynamics.hpp"
#include "dotsim/error.hpp"
#include "dotsim/integrator.hpp"
#include "dotsim/netlist.hpp"
#include "dotsim/qca.hpp"
#include "dotsim/rk4.hpp"
#include "dotsim/units.hpp"
