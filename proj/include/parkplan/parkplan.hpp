#pragma once

#include "parkplan/bench.hpp"
#include "parkplan/cost_matrix.hpp"
#include "parkplan/errors.hpp"
#include "parkplan/hungarian.hpp"
#include "parkplan/io.hpp"
#include "parkplan/planner.hpp"
#include "parkplan/reduction.hpp"
#include "parkplan/scenarios.hpp"
