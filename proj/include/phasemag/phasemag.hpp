#pragma once

#include "phasemag/error.hpp"
#include "phasemag/grid.hpp"
#include "phasemag/spectral.hpp"
#include "phasemag/magnify.hpp"
#include "phasemag/synth.hpp"
#include "phasemag/estimate.hpp"
#include "phasemag/pgm.hpp"
#include "phasemag/sequence.hpp"
#include "phasemag/trace.hpp"
