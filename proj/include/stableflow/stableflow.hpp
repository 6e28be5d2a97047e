// Umbrella header for the stableflow library.

#pragma once

#include "stableflow/instance.hpp"
#include "stableflow/transforms.hpp"
#include "stableflow/stability.hpp"
#include "stableflow/gale_shapley.hpp"
#include "stableflow/restricted.hpp"
#include "stableflow/matching.hpp"
#include "stableflow/oracle.hpp"
#include "stableflow/gadgets.hpp"
#include "stableflow/generators.hpp"
#include "stableflow/json_io.hpp"
