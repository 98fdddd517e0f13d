#pragma once

// Umbrella header.

#include "classify.hpp"
#include "coef_poly.hpp"
#include "lie.hpp"
#include "linear_system.hpp"
#include "omega.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "tpoly.hpp"
#include "verify.hpp"
