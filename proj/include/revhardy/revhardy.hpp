#pragma once

// Umbrella header: rigorous enclosures for the characterization constants of
// reverse Hardy-type inequalities with supremal operators over computable
// Borel measures, plus a brute-force lower-bound oracle.

#include "revhardy/characterize.hpp"
#include "revhardy/discretize.hpp"
#include "revhardy/errors.hpp"
#include "revhardy/extended_real.hpp"
#include "revhardy/intervals.hpp"
#include "revhardy/measure.hpp"
#include "revhardy/monotone_function.hpp"
#include "revhardy/norms.hpp"
#include "revhardy/oracle.hpp"
#include "revhardy/sequences.hpp"
#include "revhardy/step_function.hpp"
#include "revhardy/stieltjes.hpp"
