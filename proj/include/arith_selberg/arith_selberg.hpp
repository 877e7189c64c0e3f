#pragma once

#include "complex.hpp"
#include "congruence.hpp"
#include "matrix_corr.hpp"
#include "numeric.hpp"
#include "oracles.hpp"
#include "pell_units.hpp"
#include "quadforms.hpp"
#include "verify.hpp"
#include "zeta.hpp"
