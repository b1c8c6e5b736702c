#pragma once

// Umbrella header.

#include "msgate/core.hpp"
#include "msgate/csv.hpp"
#include "msgate/errors.hpp"
#include "msgate/evolve.hpp"
#include "msgate/hamiltonians.hpp"
#include "msgate/spectral.hpp"
#include "msgate/thermal.hpp"
