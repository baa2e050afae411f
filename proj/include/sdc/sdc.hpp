#pragma once

/// Umbrella header for the whole library.

#include "sdc/classify.hpp"
#include "sdc/clifford_weil.hpp"
#include "sdc/code.hpp"
#include "sdc/cyclotomic.hpp"
#include "sdc/enumerate.hpp"
#include "sdc/enumerators.hpp"
#include "sdc/errors.hpp"
#include "sdc/genus.hpp"
#include "sdc/invariants.hpp"
#include "sdc/io.hpp"
#include "sdc/matrix.hpp"
#include "sdc/molien.hpp"
#include "sdc/polynomial.hpp"
#include "sdc/presets.hpp"
#include "sdc/rational.hpp"
#include "sdc/ring.hpp"
#include "sdc/univariate.hpp"
