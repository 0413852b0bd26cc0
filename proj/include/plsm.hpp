#ifndef PLSM_HPP
#define PLSM_HPP

#include "plsm/common.hpp"
#include "plsm/linalg.hpp"
#include "plsm/structure_constants.hpp"
#include "plsm/lie_algebra.hpp"
#include "plsm/bialgebra.hpp"
#include "plsm/group.hpp"
#include "plsm/coboundary.hpp"
#include "plsm/checks.hpp"
#include "plsm/lattice.hpp"
#include "plsm/catalog.hpp"
#include "plsm/config.hpp"
#include "plsm/report.hpp"

#endif
