#pragma once

// Umbrella header for the rigid c-map toolkit.

#include "cmap/base_geometry.hpp"
#include "cmap/hyperkahler.hpp"
#include "cmap/jets.hpp"
#include "cmap/linalg.hpp"
#include "cmap/moduli.hpp"
#include "cmap/numdiff.hpp"
#include "cmap/sampling.hpp"
#include "cmap/symmetry.hpp"
#include "cmap/tensor.hpp"
#include "cmap/types.hpp"
#include "cmap/verify.hpp"
