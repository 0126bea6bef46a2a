#pragma once

#include "rodcut/rational.hpp"
#include "rodcut/geometry.hpp"
#include "rodcut/mixed_graph.hpp"
#include "rodcut/depth_graph.hpp"
#include "rodcut/mixed_fvs.hpp"
#include "rodcut/cuts.hpp"
#include "rodcut/instances.hpp"
#include "rodcut/io.hpp"
