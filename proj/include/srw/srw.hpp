#pragma once

#include "srw/config.hpp"
#include "srw/graph.hpp"
#include "srw/harness.hpp"
#include "srw/metrics.hpp"
#include "srw/mobility.hpp"
#include "srw/rng.hpp"
#include "srw/simulation.hpp"
#include "srw/walk.hpp"
