#pragma once

#include "ultra/bounds.hpp"
#include "ultra/conjugate_map.hpp"
#include "ultra/polynomial.hpp"
#include "ultra/rasa.hpp"
#include "ultra/rational.hpp"
#include "ultra/sturm.hpp"
#include "ultra/ultraspherical.hpp"
