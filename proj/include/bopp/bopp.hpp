#pragma once

// Umbrella header: the exact symbolic engine for order-by-order symplectic
// realization of (quasi-)Poisson bivectors via generalized Bopp shifts.

#include "bopp/bivector.hpp"
#include "bopp/error.hpp"
#include "bopp/examples.hpp"
#include "bopp/octonion.hpp"
#include "bopp/parse.hpp"
#include "bopp/poly.hpp"
#include "bopp/rational.hpp"
#include "bopp/realization.hpp"
#include "bopp/tensor.hpp"
#include "bopp/varset.hpp"
