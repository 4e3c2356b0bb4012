#pragma once

#include "blochapprox/analytic.hpp"
#include "blochapprox/errors.hpp"
#include "blochapprox/gates.hpp"
#include "blochapprox/matrix.hpp"
#include "blochapprox/oracle.hpp"
#include "blochapprox/rng.hpp"
#include "blochapprox/state.hpp"
#include "blochapprox/tolerances.hpp"
#include "blochapprox/uncertainty.hpp"
#include "blochapprox/verification.hpp"
