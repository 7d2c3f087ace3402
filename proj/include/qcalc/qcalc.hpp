#pragma once

// Umbrella header for the qcalc library.

#include "qcalc/errors.hpp"
#include "qcalc/core.hpp"
#include "qcalc/polynomials.hpp"
#include "qcalc/operators.hpp"
#include "qcalc/hyperseries.hpp"
#include "qcalc/qintegral.hpp"
#include "qcalc/contour.hpp"
#include "qcalc/expansion.hpp"
#include "qcalc/json_io.hpp"
#include "qcalc/verify_types.hpp"
#include "qcalc/identities.hpp"
#include "qcalc/verify.hpp"
