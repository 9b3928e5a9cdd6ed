#pragma once

#include "catalog.hpp"
#include "csv.hpp"
#include "equilibrium_pd.hpp"
#include "equilibrium_vanilla.hpp"
#include "grid.hpp"
#include "hawkes.hpp"
#include "kernels.hpp"
#include "mc_sim.hpp"
#include "optim.hpp"
#include "params.hpp"
#include "strategies.hpp"
#include "volterra.hpp"
#include "welfare.hpp"
