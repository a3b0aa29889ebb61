#pragma once

// Umbrella header: exact-rational certificate checking for polynomial
// approximations of elementary-function expressions.

#include "polycert/approx.hpp"
#include "polycert/certificate.hpp"
#include "polycert/chebyshev.hpp"
#include "polycert/errors.hpp"
#include "polycert/expr.hpp"
#include "polycert/interval.hpp"
#include "polycert/poly.hpp"
#include "polycert/rational.hpp"
#include "polycert/report.hpp"
#include "polycert/sturm.hpp"
#include "polycert/taylor.hpp"
#include "polycert/validate.hpp"
