#pragma once

#include "hvd/bisectors.hpp"
#include "hvd/complex.hpp"
#include "hvd/conversions.hpp"
#include "hvd/error.hpp"
#include "hvd/io.hpp"
#include "hvd/models.hpp"
#include "hvd/power.hpp"
#include "hvd/sampling.hpp"
#include "hvd/scalar.hpp"
#include "hvd/svg.hpp"
#include "hvd/vec.hpp"
#include "hvd/voronoi.hpp"
