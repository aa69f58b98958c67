#pragma once

// Everything except io.hpp and svg.hpp, which pull in json.hpp.

#include "quasigap/qfield.hpp"
#include "quasigap/tower.hpp"
#include "quasigap/cyclo.hpp"
#include "quasigap/geometry.hpp"
#include "quasigap/quasicrystal.hpp"
#include "quasigap/density.hpp"
#include "quasigap/gaps.hpp"
