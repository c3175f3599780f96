/* Umbrella header: pulls in the whole toolkit. */

#ifndef OKKIT_OKKIT_HPP
#define OKKIT_OKKIT_HPP

#include "okkit/rational.hpp"
#include "okkit/polytope.hpp"
#include "okkit/valuation.hpp"
#include "okkit/toric.hpp"
#include "okkit/jetsep.hpp"
#include "okkit/surfaces.hpp"
#include "okkit/json_io.hpp"

#endif
