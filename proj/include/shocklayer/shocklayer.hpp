#pragma once

#include "errors.hpp"
#include "gas_dynamics.hpp"
#include "quadrature.hpp"
#include "spline.hpp"
#include "csv.hpp"
#include "shock_geometry.hpp"
#include "parallel.hpp"
#include "stream_solver.hpp"
#include "shape_optimizer.hpp"
#include "reference_compare.hpp"
