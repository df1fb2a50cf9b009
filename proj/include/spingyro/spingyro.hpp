#pragma once

// Umbrella header for the spin-impurity gyroscopic dynamics library.

#include "analytic_cases.hpp"
#include "closed_form.hpp"
#include "coefficients.hpp"
#include "composite.hpp"
#include "coupled.hpp"
#include "errors.hpp"
#include "half_int.hpp"
#include "integrator.hpp"
#include "linalg.hpp"
#include "propagator.hpp"
#include "pulse.hpp"
#include "s_functions.hpp"
#include "series.hpp"
#include "spin_ops.hpp"
