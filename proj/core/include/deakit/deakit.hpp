#pragma once

#include "deakit/bootstrap.hpp"
#include "deakit/cross.hpp"
#include "deakit/data.hpp"
#include "deakit/fuzzy.hpp"
#include "deakit/lp.hpp"
#include "deakit/malmquist.hpp"
#include "deakit/metafrontier.hpp"
#include "deakit/multiplier.hpp"
#include "deakit/nonradial.hpp"
#include "deakit/radial.hpp"
#include "deakit/result.hpp"
#include "deakit/results.hpp"
#include "deakit/sbm.hpp"
#include "deakit/supereff.hpp"
#include "deakit/types.hpp"
