#pragma once

#include "fixmult/counting.hpp"
#include "fixmult/error.hpp"
#include "fixmult/exactnum.hpp"
#include "fixmult/index_set.hpp"
#include "fixmult/lattice.hpp"
#include "fixmult/polyfam.hpp"
#include "fixmult/spectrum.hpp"
#include "fixmult/spectrum_gen.hpp"
#include "fixmult/verifier.hpp"
