#ifndef PRANDTL_PRANDTL_HPP
#define PRANDTL_PRANDTL_HPP

#include "prandtl/grid.hpp"
#include "prandtl/operators.hpp"
#include "prandtl/solver.hpp"
#include "prandtl/spaces.hpp"
#include "prandtl/transform.hpp"

#endif
