#pragma once

#include "zetasum/bernoulli.hpp"
#include "zetasum/bigcomplex.hpp"
#include "zetasum/bigreal.hpp"
#include "zetasum/constants.hpp"
#include "zetasum/euler_maclaurin.hpp"
#include "zetasum/euler_sums.hpp"
#include "zetasum/harmonic.hpp"
#include "zetasum/identities.hpp"
#include "zetasum/laurent.hpp"
#include "zetasum/mellin.hpp"
#include "zetasum/rational.hpp"
