#pragma once

#include "dhsp/count.hpp"
#include "dhsp/dihedral.hpp"
#include "dhsp/errors.hpp"
#include "dhsp/linalg.hpp"
#include "dhsp/parallel.hpp"
#include "dhsp/pgm.hpp"
#include "dhsp/phase.hpp"
#include "dhsp/rep_theory.hpp"
#include "dhsp/rng.hpp"
#include "dhsp/simulate.hpp"
#include "dhsp/subset_sum.hpp"
#include "dhsp/success.hpp"
#include "dhsp/summation.hpp"
