#pragma once

#include "tilehom/error.hpp"
#include "tilehom/grid.hpp"
#include "tilehom/homology.hpp"
#include "tilehom/placement.hpp"
#include "tilehom/polyomino.hpp"
#include "tilehom/search.hpp"
#include "tilehom/surface_dsl.hpp"
#include "tilehom/symmetry.hpp"
#include "tilehom/zlinalg.hpp"
