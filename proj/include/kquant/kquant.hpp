#pragma once

#include "kquant/bundled_weights.hpp"
#include "kquant/duflo.hpp"
#include "kquant/enveloping.hpp"
#include "kquant/enveloping_map.hpp"
#include "kquant/errors.hpp"
#include "kquant/expr.hpp"
#include "kquant/fixtures.hpp"
#include "kquant/graphs.hpp"
#include "kquant/invariants.hpp"
#include "kquant/jet.hpp"
#include "kquant/lie_algebra.hpp"
#include "kquant/polynomial.hpp"
#include "kquant/rational.hpp"
#include "kquant/star.hpp"
#include "kquant/table_solver.hpp"
#include "kquant/weights.hpp"
