#pragma once

// Umbrella header: the full association pipeline, from fuzzy measurements to
// tracked objects and scenario reports.

#include "evassoc/assignment.hpp"
#include "evassoc/combination.hpp"
#include "evassoc/errors.hpp"
#include "evassoc/fuzzy.hpp"
#include "evassoc/masses.hpp"
#include "evassoc/matrix.hpp"
#include "evassoc/report.hpp"
#include "evassoc/scenario.hpp"
#include "evassoc/tracker.hpp"
