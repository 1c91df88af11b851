#pragma once

#include "error.hpp"
#include "vector.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "norms.hpp"
#include "siip.hpp"
#include "minkowski.hpp"
#include "ortho.hpp"
#include "hyperboloid.hpp"
#include "isometry.hpp"
